//! The Orlik-Solomon algebra `A(M) = Λ(E)/I(M)`.
//!
//! Normal forms come from broken-circuit rewriting; every membership and
//! dimension answer is cross-checked against exact linear algebra in
//! `Λ^p`, and the two must agree.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::One;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::exterior::{boundary_of_set, wedge_sign, ExteriorElement, Rational};
use crate::linalg::{Echelon, Row};
use crate::matroid::Matroid;
use crate::subset::{subsets_of_size, Subset};
use crate::tutte::{characteristic, poincare_from_chi};

/// `∂` on the exterior algebra.
pub fn boundary(x: &ExteriorElement) -> ExteriorElement {
    x.boundary()
}

/// One generator `∂e_C` per circuit, elements of `C` in increasing id order.
pub fn os_ideal_generators(m: &Matroid) -> Vec<ExteriorElement> {
    m.circuits().iter().map(|&c| boundary_of_set(c)).collect()
}

/// No-broken-circuit sets grouped by size, for the ground order `order`
/// (listed smallest first).
pub fn nbc_sets(m: &Matroid, order: &[usize]) -> Result<Vec<Vec<Subset>>> {
    Ok(OsAlgebra::with_order(m.clone(), order.to_vec())?.nbc_basis().to_vec())
}

#[derive(Clone, Debug)]
struct BrokenCircuit {
    circuit: Subset,
    broken: Subset,
    smallest: usize,
}

/// A degree-`p` ideal generator `e_T ∧ ∂e_C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdealTerm {
    pub monomial: Subset,
    pub circuit: Subset,
}

impl IdealTerm {
    pub fn expand(&self) -> ExteriorElement {
        ExteriorElement::monomial(self.monomial, Rational::one()).wedge(&boundary_of_set(self.circuit))
    }
}

/// Explicit combination `Σ λ·e_T∧∂e_C` reproducing an element of the ideal.
pub type IdealWitness = Vec<(IdealTerm, Rational)>;

/// Result of an ideal-membership query, decided twice.
#[derive(Clone, Debug)]
pub struct Membership {
    pub member: bool,
    /// Normal form of the queried element; zero iff `member`.
    pub normal_form: ExteriorElement,
    /// Present iff `member`.
    pub witness: Option<IdealWitness>,
}

/// Sums a witness back into an exterior element.
pub fn evaluate_witness(w: &IdealWitness) -> ExteriorElement {
    let mut out = ExteriorElement::zero();
    for (term, c) in w {
        out = &out + &term.expand().scale(c);
    }
    out
}

struct DegreeIdeal {
    rows: Vec<IdealTerm>,
    echelon: Echelon,
}

/// Orlik-Solomon algebra of a matroid with a fixed ground order.
pub struct OsAlgebra {
    matroid: Matroid,
    order: Vec<usize>,
    position: Vec<usize>,
    broken: Vec<BrokenCircuit>,
    nbc: Vec<Vec<Subset>>,
    nf_cache: RwLock<HashMap<Subset, Arc<ExteriorElement>>>,
    ideal: Vec<OnceLock<DegreeIdeal>>,
}

impl OsAlgebra {
    /// Uses the element id order.
    pub fn new(matroid: Matroid) -> Self {
        let order = (0..matroid.len()).collect();
        Self::with_order(matroid, order).expect("identity order is a permutation")
    }

    pub fn with_order(matroid: Matroid, order: Vec<usize>) -> Result<Self> {
        let n = matroid.len();
        let mut position = vec![usize::MAX; n];
        if order.len() != n {
            return Err(Error::InvalidParameter(format!("order has {} entries for {n} elements", order.len())));
        }
        for (pos, &id) in order.iter().enumerate() {
            if id >= n || position[id] != usize::MAX {
                return Err(Error::InvalidParameter("order is not a permutation of the ground set".into()));
            }
            position[id] = pos;
        }
        let broken = matroid
            .circuits()
            .iter()
            .map(|&c| {
                let smallest = c.iter().min_by_key(|&id| position[id]).expect("circuits are nonempty");
                BrokenCircuit { circuit: c, broken: c.without(smallest), smallest }
            })
            .collect();
        let r = matroid.rank();
        let mut a = OsAlgebra {
            matroid,
            order,
            position,
            broken,
            nbc: Vec::new(),
            nf_cache: RwLock::new(HashMap::new()),
            ideal: (0..r + 2).map(|_| OnceLock::new()).collect(),
        };
        a.nbc = a.enumerate_nbc();
        Ok(a)
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    /// Ground ids from smallest to largest.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn broken_circuits(&self) -> Vec<Subset> {
        self.broken.iter().map(|b| b.broken).collect()
    }

    /// nbc monomials by degree `0..=rank`; a matroid with a loop has none.
    pub fn nbc_basis(&self) -> &[Vec<Subset>] {
        &self.nbc
    }

    pub fn nbc_counts(&self) -> Vec<usize> {
        self.nbc.iter().map(Vec::len).collect()
    }

    fn find_broken(&self, s: Subset) -> Option<&BrokenCircuit> {
        self.broken.iter().find(|b| b.broken.is_subset_of(s))
    }

    pub fn is_nbc(&self, s: Subset) -> bool {
        self.find_broken(s).is_none()
    }

    fn enumerate_nbc(&self) -> Vec<Vec<Subset>> {
        let r = self.matroid.rank();
        let mut out = vec![Vec::new(); r + 1];
        if !self.is_nbc(Subset::EMPTY) {
            return out;
        }
        // nbc sets are closed under taking subsets, so extend by larger ids only.
        let n = self.matroid.len();
        let mut stack = vec![Subset::EMPTY];
        while let Some(s) = stack.pop() {
            out[s.len()].push(s);
            let start = s.max().map_or(0, |m| m + 1);
            for id in start..n {
                let t = s.with(id);
                if self.is_nbc(t) {
                    stack.push(t);
                }
            }
        }
        for level in &mut out {
            level.sort();
        }
        out
    }

    /// One rewriting step: expresses `e_s` through monomials obtained by
    /// swapping an element of a broken circuit for the circuit's smallest
    /// element. Every output monomial is strictly smaller in the order that
    /// compares position lists sorted from largest down.
    fn rewrite(&self, s: Subset, b: &BrokenCircuit) -> Vec<(Subset, Rational)> {
        let rest = s.difference(b.broken);
        // e_s = sign · e_B ∧ e_R
        let sign_br = wedge_sign(b.broken, rest).expect("disjoint by construction");
        // ∂e_C = Σ_c s_c e_{C-c} with s_c = (-1)^(index of c in C)
        let index_sign = |c: usize| if b.circuit.count_above(c) % 2 == (b.circuit.len() - 1) % 2 { 1 } else { -1 };
        let s_min = index_sign(b.smallest);
        let mut out = Vec::new();
        for c in b.circuit.iter().filter(|&c| c != b.smallest) {
            let mono = b.circuit.without(c);
            let Some(sign_mr) = wedge_sign(mono, rest) else { continue };
            let coeff = -(sign_br * s_min * index_sign(c) * sign_mr);
            out.push((mono.union(rest), Rational::from_integer(coeff.into())));
        }
        out
    }

    fn monomial_normal_form(&self, s: Subset) -> Arc<ExteriorElement> {
        if let Some(hit) = self.nf_cache.read().expect("cache lock").get(&s) {
            return hit.clone();
        }
        let nf = match self.find_broken(s) {
            None => ExteriorElement::monomial(s, Rational::one()),
            Some(b) => {
                let mut acc = ExteriorElement::zero();
                for (t, c) in self.rewrite(s, b) {
                    for (u, d) in self.monomial_normal_form(t).terms() {
                        acc.add_term(u, &c * d);
                    }
                }
                acc
            }
        };
        let nf = Arc::new(nf);
        self.nf_cache.write().expect("cache lock").insert(s, nf.clone());
        nf
    }

    /// Image of `x` in `A(M)`, written in the nbc basis.
    pub fn normal_form(&self, x: &ExteriorElement) -> ExteriorElement {
        let mut out = ExteriorElement::zero();
        for (s, c) in x.terms() {
            for (u, d) in self.monomial_normal_form(s).terms() {
                out.add_term(u, c * d);
            }
        }
        out
    }

    /// Normal form of a product computed factor by factor.
    pub fn product(&self, factors: &[ExteriorElement]) -> ExteriorElement {
        factors.iter().fold(self.normal_form(&ExteriorElement::one()), |acc, f| {
            self.normal_form(&acc.wedge(&self.normal_form(f)))
        })
    }

    /// Coordinates of `normal_form(x)` restricted to degree `p`, indexed by
    /// position in `nbc_basis()[p]`.
    pub fn nbc_coordinates(&self, x: &ExteriorElement, p: usize) -> BTreeMap<usize, Rational> {
        let nf = self.normal_form(x);
        let Some(basis) = self.nbc.get(p) else { return BTreeMap::new() };
        nf.terms()
            .filter(|(s, _)| s.len() == p)
            .map(|(s, c)| (basis.binary_search(&s).expect("normal forms are nbc"), c.clone()))
            .collect()
    }

    fn ideal_terms(&self, p: usize) -> Vec<IdealTerm> {
        let n = self.matroid.len();
        let mut rows = Vec::new();
        for &c in self.matroid.circuits() {
            let Some(k) = (p + 1).checked_sub(c.len()) else { continue };
            for t in subsets_of_size(n, k) {
                if t.intersection(c).len() <= 1 {
                    rows.push(IdealTerm { monomial: t, circuit: c });
                }
            }
        }
        rows
    }

    fn degree_ideal(&self, p: usize) -> &DegreeIdeal {
        self.ideal[p].get_or_init(|| {
            let rows = self.ideal_terms(p);
            let mut echelon = Echelon::tracked();
            for r in &rows {
                echelon.insert(to_row(&r.expand()));
            }
            DegreeIdeal { rows, echelon }
        })
    }

    fn span_rank(&self, p: usize) -> usize {
        if let Some(d) = self.ideal.get(p).and_then(OnceLock::get) {
            return d.echelon.rank();
        }
        let mut e = Echelon::new();
        for r in self.ideal_terms(p) {
            e.insert(to_row(&r.expand()));
        }
        e.rank()
    }

    /// Decides `x ∈ I(M)` by rewriting and, independently, by solving for
    /// `x` in the span of `e_T ∧ ∂e_C` in each degree.
    pub fn ideal_membership(&self, x: &ExteriorElement) -> Result<Membership> {
        let nf = self.normal_form(x);
        let mut witness = Vec::new();
        let mut in_span = true;
        for (p, part) in x.by_degree() {
            if p >= self.ideal.len() {
                // every monomial of degree > rank contains a circuit
                let mut terms = Vec::new();
                for (s, c) in part.terms() {
                    let circuit =
                        self.matroid.circuits().iter().copied().find(|c| c.is_subset_of(s)).ok_or_else(|| {
                            Error::MethodDisagreement(format!("degree {p} monomial without a circuit"))
                        })?;
                    // e_S = ± e_{min C} ∧ ∂e_C ∧ e_{S-C}
                    let smallest = circuit.min().expect("nonempty");
                    let term = IdealTerm { monomial: s.difference(circuit).with(smallest), circuit };
                    let coeff = term.expand().coeff(s);
                    terms.push((term, c / coeff));
                }
                witness.extend(terms);
                continue;
            }
            let ideal = self.degree_ideal(p);
            match ideal.echelon.express(to_row(&part)) {
                Some(combo) => witness.extend(combo.into_iter().map(|(i, c)| (ideal.rows[i], c))),
                None => in_span = false,
            }
        }
        if nf.is_zero() != in_span {
            return Err(Error::MethodDisagreement(format!(
                "normal form says {}, linear algebra says {}",
                nf.is_zero(),
                in_span
            )));
        }
        if in_span && evaluate_witness(&witness) != *x {
            return Err(Error::MethodDisagreement("ideal witness does not reproduce the element".into()));
        }
        Ok(Membership { member: in_span, normal_form: nf, witness: in_span.then_some(witness) })
    }

    /// `dim Λ^p − dim I^p` for `p = 0..=rank`, by exact elimination. Also
    /// checks that degree `rank + 1` vanishes.
    pub fn quotient_dimensions(&self, exec: Execution) -> Result<Vec<usize>> {
        let n = self.matroid.len();
        let r = self.matroid.rank();
        let dims = exec.map((0..=r + 1).collect(), |p| binomial(n, p) - self.span_rank(p));
        if dims[r + 1] != 0 {
            return Err(Error::MethodDisagreement(format!("degree {} of the quotient is nonzero", r + 1)));
        }
        Ok(dims[..=r].to_vec())
    }

    /// Graded dimensions `dim A^p`, `p = 0..=rank`, computed as nbc counts
    /// and required to agree with elimination in `Λ^p/I^p` and with the
    /// coefficients of `t^r χ(-1/t)`.
    pub fn graded_dimensions(&self, exec: Execution) -> Result<Vec<usize>> {
        let nbc = self.nbc_counts();
        let quotient = self.quotient_dimensions(exec)?;
        if nbc != quotient {
            return Err(Error::MethodDisagreement(format!("nbc counts {nbc:?} vs quotient ranks {quotient:?}")));
        }
        let r = self.matroid.rank();
        let chi = characteristic(&self.matroid);
        let poincare = poincare_from_chi(&chi, r)?.padded(r + 1);
        let from_chi: Vec<usize> = poincare.iter().map(|&c| c as usize).collect();
        if from_chi != nbc {
            return Err(Error::MethodDisagreement(format!("nbc counts {nbc:?} vs t^r chi(-1/t) {from_chi:?}")));
        }
        Ok(nbc)
    }

    /// Position of `id` in the ground order.
    pub fn position(&self, id: usize) -> usize {
        self.position[id]
    }
}

pub(crate) fn to_row(x: &ExteriorElement) -> Row {
    x.terms().map(|(s, c)| (s.bits(), c.clone())).collect()
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

impl Clone for OsAlgebra {
    fn clone(&self) -> Self {
        OsAlgebra::with_order(self.matroid.clone(), self.order.clone()).expect("order already validated")
    }
}

impl std::fmt::Debug for OsAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OsAlgebra").field("matroid", &self.matroid).field("order", &self.order).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cycle_matroid, direct_sum, isthmus};
    use crate::exterior::rational;

    fn e(m: &Matroid, labels: &[&str]) -> ExteriorElement {
        ExteriorElement::monomial(m.subset_of_labels(labels).unwrap(), Rational::one())
    }

    #[test]
    fn c3_generators_and_nbc() {
        let c3 = cycle_matroid(3).unwrap();
        let gens = os_ideal_generators(&c3);
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0], &(&e(&c3, &["2", "3"]) - &e(&c3, &["1", "3"])) + &e(&c3, &["1", "2"]));
        let a = OsAlgebra::new(c3.clone());
        assert_eq!(a.broken_circuits(), vec![c3.subset_of_labels(&["2", "3"]).unwrap()]);
        assert_eq!(a.nbc_counts(), vec![1, 3, 2]);
        assert_eq!(a.graded_dimensions(Execution::Sequential).unwrap(), vec![1, 3, 2]);
    }

    #[test]
    fn c3_rewrite_step() {
        let c3 = cycle_matroid(3).unwrap();
        let a = OsAlgebra::new(c3.clone());
        let nf = a.normal_form(&e(&c3, &["2", "3"]));
        assert_eq!(nf, &e(&c3, &["1", "3"]) - &e(&c3, &["1", "2"]));
        assert!(a.normal_form(&os_ideal_generators(&c3)[0]).is_zero());
        assert!(a.normal_form(&e(&c3, &["1", "2", "3"])).is_zero());
        assert_eq!(a.normal_form(&e(&c3, &["1", "2"])), e(&c3, &["1", "2"]));
    }

    #[test]
    fn membership_is_certified() {
        let c3 = cycle_matroid(3).unwrap();
        let a = OsAlgebra::new(c3.clone());
        let g = os_ideal_generators(&c3).remove(0);
        let m = a.ideal_membership(&g.scale(&rational(3))).unwrap();
        assert!(m.member);
        assert_eq!(evaluate_witness(m.witness.as_ref().unwrap()), g.scale(&rational(3)));
        assert!(!a.ideal_membership(&e(&c3, &["1", "2"])).unwrap().member);
        assert!(a.ideal_membership(&ExteriorElement::zero()).unwrap().member);
        assert!(a.ideal_membership(&e(&c3, &["1", "2", "3"])).unwrap().member);
    }

    #[test]
    fn disconnected_and_trivial_dimensions() {
        let c3 = cycle_matroid(3).unwrap();
        let c3b = c3.relabel(|l| format!("b{l}")).unwrap();
        let m3 = direct_sum(&c3, &c3b).unwrap();
        assert_eq!(OsAlgebra::new(m3).graded_dimensions(Execution::Sequential).unwrap(), vec![1, 6, 13, 12, 4]);
        assert_eq!(OsAlgebra::new(isthmus()).graded_dimensions(Execution::Sequential).unwrap(), vec![1, 1]);
        let free = Matroid::free(["a", "b", "c"]).unwrap();
        assert_eq!(OsAlgebra::new(free.clone()).nbc_counts(), vec![1, 3, 3, 1]);
        assert!(os_ideal_generators(&free).is_empty());
    }

    #[test]
    fn loops_and_parallel_pairs() {
        let lp = Matroid::from_labeled(&["a", "l"], &[vec!["l"]]).unwrap();
        let a = OsAlgebra::new(lp.clone());
        assert_eq!(a.graded_dimensions(Execution::Sequential).unwrap(), vec![0, 0]);
        assert!(a.normal_form(&ExteriorElement::one()).is_zero());
        let par = Matroid::from_labeled(&["a", "b", "c"], &[vec!["a", "b"]]).unwrap();
        let a = OsAlgebra::new(par.clone());
        assert_eq!(a.normal_form(&e(&par, &["b", "c"])), e(&par, &["a", "c"]));
        assert_eq!(a.graded_dimensions(Execution::Sequential).unwrap(), vec![1, 2, 1]);
    }

    #[test]
    fn reversed_order_changes_basis_not_counts() {
        let c4 = cycle_matroid(4).unwrap();
        let fwd = OsAlgebra::new(c4.clone());
        let rev = OsAlgebra::with_order(c4, vec![3, 2, 1, 0]).unwrap();
        assert_eq!(fwd.nbc_counts(), rev.nbc_counts());
        assert_ne!(fwd.nbc_basis(), rev.nbc_basis());
        assert!(OsAlgebra::with_order(cycle_matroid(3).unwrap(), vec![0, 0, 1]).is_err());
    }
}
