//! Tutte polynomials by memoized deletion-contraction, the closed forms for
//! the `M_n` / `M′_n` pair, characteristic polynomials and the Poincaré
//! transform.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::constructions::direct_sum;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::matroid::{minimal_sets, Matroid};
use crate::poly::{BivariatePolynomial, UnivariatePolynomial};
use crate::subset::Subset;

type Poly = BivariatePolynomial;

/// Minors with at least this many elements fork their two branches when the
/// engine runs in parallel.
const FORK_THRESHOLD: usize = 9;

/// A minor of the input, kept on the input's ids.
#[derive(Clone)]
struct Minor {
    ground: Subset,
    circuits: Vec<Subset>,
}

impl Minor {
    fn delete(&self, e: usize) -> Minor {
        Minor {
            ground: self.ground.without(e),
            circuits: self.circuits.iter().copied().filter(|c| !c.contains(e)).collect(),
        }
    }

    fn contract(&self, e: usize) -> Minor {
        Minor {
            ground: self.ground.without(e),
            circuits: minimal_sets(self.circuits.iter().map(|c| c.without(e)).filter(|c| !c.is_empty())),
        }
    }

    /// Relabels by (number of circuits through the element, id). Equal keys
    /// mean identical circuit sets after relabeling, hence isomorphic minors.
    fn key(&self) -> (u32, Vec<u64>) {
        let mut elems: Vec<(usize, usize)> =
            self.ground.iter().map(|e| (self.circuits.iter().filter(|c| c.contains(e)).count(), e)).collect();
        elems.sort_unstable();
        let mut map = [0usize; 64];
        for (new, &(_, old)) in elems.iter().enumerate() {
            map[old] = new;
        }
        let mut cs: Vec<u64> = self.circuits.iter().map(|c| c.map_ids(&map).bits()).collect();
        cs.sort_unstable();
        (self.ground.len() as u32, cs)
    }
}

/// Deletion-contraction evaluator.
///
/// The pivot is the first element (in `pivot_order`, default id order) that
/// is neither a loop nor an isthmus. Loops and isthmuses are factored out as
/// `y` and `x`.
#[derive(Clone, Debug, Default)]
pub struct TutteEngine {
    exec: Execution,
    pivot_order: Option<Vec<usize>>,
    memoize: bool,
}

impl TutteEngine {
    pub fn new() -> Self {
        TutteEngine { exec: Execution::default(), pivot_order: None, memoize: true }
    }

    pub fn with_execution(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    /// Pivot priority as a list of element ids, most preferred first. Must be
    /// a permutation of the ground set ids when used.
    pub fn with_pivot_order(mut self, order: Vec<usize>) -> Self {
        self.pivot_order = Some(order);
        self
    }

    pub fn with_memo(mut self, memoize: bool) -> Self {
        self.memoize = memoize;
        self
    }

    pub fn compute(&self, m: &Matroid) -> Result<Poly> {
        let order = match &self.pivot_order {
            Some(o) => {
                let mut sorted = o.clone();
                sorted.sort_unstable();
                if sorted != (0..m.len()).collect::<Vec<_>>() {
                    return Err(Error::InvalidParameter("pivot order is not a permutation of the ground set".into()));
                }
                o.clone()
            }
            None => (0..m.len()).collect(),
        };
        let memo = Mutex::new(HashMap::new());
        let minor = Minor { ground: m.full_set(), circuits: m.circuits().to_vec() };
        Ok(self.eval(minor, &order, &memo))
    }

    fn eval(&self, mut minor: Minor, order: &[usize], memo: &Mutex<HashMap<(u32, Vec<u64>), Poly>>) -> Poly {
        let mut isthmuses = 0u32;
        let mut loops = 0u32;
        for e in minor.ground.iter() {
            if minor.circuits.iter().all(|c| !c.contains(e)) {
                isthmuses += 1;
                minor.ground = minor.ground.without(e);
            } else if minor.circuits.contains(&Subset::singleton(e)) {
                loops += 1;
                minor.ground = minor.ground.without(e);
                minor.circuits.retain(|&c| c != Subset::singleton(e));
            }
        }
        let factor = Poly::x_pow_y_pow(isthmuses, loops);
        if minor.ground.is_empty() {
            return factor;
        }

        let key = self.memoize.then(|| minor.key());
        if let Some(k) = &key {
            if let Some(hit) = memo.lock().expect("memo poisoned").get(k) {
                return &factor * hit;
            }
        }

        let pivot = *order.iter().find(|&&e| minor.ground.contains(e)).expect("nonempty ground");
        let del = minor.delete(pivot);
        let con = minor.contract(pivot);
        let (a, b) = if minor.ground.len() >= FORK_THRESHOLD {
            self.exec.join(|| self.eval(del, order, memo), || self.eval(con, order, memo))
        } else {
            (self.eval(del, order, memo), self.eval(con, order, memo))
        };
        let t = a + b;
        if let Some(k) = key {
            memo.lock().expect("memo poisoned").insert(k, t.clone());
        }
        &factor * &t
    }
}

/// `T_M(x, y)`; the empty matroid gives `1`.
pub fn tutte(m: &Matroid) -> Poly {
    TutteEngine::new().compute(m).expect("default pivot order is valid")
}

pub fn tutte_with(m: &Matroid, exec: Execution) -> Poly {
    TutteEngine::new().with_execution(exec).compute(m).expect("default pivot order is valid")
}

/// Whether `T(m0 ⊕ m1) = T(m0) · T(m1)` holds exactly.
pub fn tutte_product_check(m0: &Matroid, m1: &Matroid) -> Result<bool> {
    Ok(tutte(&direct_sum(m0, m1)?) == &tutte(m0) * &tutte(m1))
}

/// `x + x^2 + ... + x^(n-1)`.
fn x_run(from: u32, to: u32) -> Poly {
    (from..=to).fold(Poly::zero(), |acc, i| acc + Poly::x_pow_y_pow(i, 0))
}

/// `T_{C_n} = x + ... + x^(n-1) + y`.
pub fn cycle_tutte(n: usize) -> Poly {
    x_run(1, n as u32 - 1) + Poly::y()
}

/// `T(M_n) = (x + ... + x^(n-1) + y) · T(M₀)`.
pub fn closed_form_mn(seed: &Poly, n: usize) -> Poly {
    &cycle_tutte(n) * seed
}

/// `T(P^n)` through `T(P^n) = x^(n-2) T(M₀) + T(P^(n-1))`, starting from
/// `T(P^2) = T(M₀) + y T(M₀/ε₀)`.
pub fn pn_recursive(seed: &Poly, seed_contracted: &Poly, n: usize) -> Poly {
    assert!(n >= 2, "P^n needs n >= 2");
    let mut t = seed + &(&Poly::y() * seed_contracted);
    for k in 3..=n {
        t = &(&Poly::x_pow_y_pow(k as u32 - 2, 0) * seed) + &t;
    }
    t
}

/// `T(P^n) = (1 + x + ... + x^(n-2)) T(M₀) + y T(M₀/ε₀)`.
pub fn pn_closed(seed: &Poly, seed_contracted: &Poly, n: usize) -> Poly {
    &(&x_run(0, n as u32 - 2) * seed) + &(&Poly::y() * seed_contracted)
}

/// `T(M′_n) = (x + ... + x^(n-1)) T(M₀) + x y T(M₀/ε₀)`.
///
/// Panics if the recursive `P^n` builder disagrees with its closed form.
pub fn closed_form_mn_prime(seed: &Poly, seed_contracted: &Poly, n: usize) -> Poly {
    let recursive = pn_recursive(seed, seed_contracted, n);
    assert_eq!(recursive, pn_closed(seed, seed_contracted, n), "P^n recursion disagrees with closed form");
    let direct = &(&x_run(1, n as u32 - 1) * seed) + &(&Poly::x_pow_y_pow(1, 1) * seed_contracted);
    assert_eq!(&Poly::x() * &recursive, direct);
    direct
}

/// `χ_M(t) = T_M(1 - t, 0)`, with no `(-1)^r` factor.
pub fn characteristic_of(t: &Poly) -> UnivariatePolynomial {
    let in_x = t.at_y_zero();
    let one_minus_t = UnivariatePolynomial::new(vec![1, -1]);
    let mut power = UnivariatePolynomial::new(vec![1]);
    let mut acc = vec![0i64; in_x.coeffs().len()];
    for (i, &c) in in_x.coeffs().iter().enumerate() {
        if i > 0 {
            power = &power * &one_minus_t;
        }
        for (j, &p) in power.coeffs().iter().enumerate() {
            acc[j] += c * p;
        }
    }
    UnivariatePolynomial::new(acc)
}

pub fn characteristic(m: &Matroid) -> UnivariatePolynomial {
    characteristic_of(&tutte(m))
}

/// Coefficient of `x` in `T_M`.
pub fn beta_invariant(m: &Matroid) -> Result<i64> {
    if m.len() < 2 {
        return Err(Error::InvalidParameter("beta invariant needs at least two elements".into()));
    }
    Ok(tutte(m).coeff(1, 0))
}

/// `t^r χ(-1/t)` as a coefficient list: the predicted graded dimensions.
pub fn poincare_from_chi(chi: &UnivariatePolynomial, r: usize) -> Result<UnivariatePolynomial> {
    if let Some(d) = chi.degree() {
        if d > r {
            return Err(Error::NonPolynomial(format!("deg chi = {d} exceeds rank {r}")));
        }
    }
    let mut out = vec![0i64; r + 1];
    for (k, &c) in chi.coeffs().iter().enumerate() {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        out[r - k] += sign * c;
    }
    if let Some(bad) = out.iter().find(|&&c| c < 0) {
        return Err(Error::NonPolynomial(format!("negative coefficient {bad}")));
    }
    Ok(UnivariatePolynomial::new(out))
}
