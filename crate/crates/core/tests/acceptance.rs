//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Time budgets are checked against wall-clock time of this
//! process; the test profile is built with optimizations.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use osforge::arrangement::{
    arr_parallel_connection, graphic_arrangement, realize_generic, underlying_matroid, verify_homogenization_identity,
    Arrangement, LinearForm,
};
use osforge::certify::{certify_iso, demonstrate_corollary, IsoCertificate};
use osforge::constructions::{
    build_mn, build_mn_prime, build_pn, complete_graph, cycle_matroid, direct_sum, graphic_matroid,
    parallel_connection, Graph,
};
use osforge::exterior::rational;
use osforge::flats::whitney_dimension_oracle;
use osforge::isomorphism::are_isomorphic;
use osforge::tutte::{
    beta_invariant, characteristic, closed_form_mn, closed_form_mn_prime, cycle_tutte, pn_recursive, poincare_from_chi,
    tutte, TutteEngine,
};
use osforge::{BivariatePolynomial as Poly, Execution, ExteriorElement, Matroid, OsAlgebra, Subset};

use common::*;

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn within(budget: Duration, start: Instant, detail: String) -> Outcome {
    let elapsed = start.elapsed();
    if elapsed > budget {
        Err(format!("{detail}; took {elapsed:.2?}, budget {budget:?}"))
    } else {
        Ok(format!("{detail}; {elapsed:.2?} of {budget:?}"))
    }
}

fn cycles_closed_form() -> Outcome {
    let start = Instant::now();
    for n in 2..=8 {
        let mut expected = Poly::y();
        for i in 1..n as u32 {
            expected += &Poly::x_pow_y_pow(i, 0);
        }
        let got = tutte(&ok(cycle_matroid(n))?);
        ensure!(got == expected, "T(C{n}) = {got}, expected {expected}");
        ensure!(cycle_tutte(n) == expected, "cycle_tutte({n}) disagrees");
    }
    within(Duration::from_secs(1), start, "T(C_n) = x + ... + x^(n-1) + y for n = 2..8".into())
}

fn family_closed_forms() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for (name, seed, bp) in seeds() {
        let t0 = tutte(&seed);
        let t0c = tutte(&ok(seed.contract_label(bp))?);
        let mut previous_pn: Option<Poly> = None;
        for n in 2..=5 {
            let s = spec(&seed, bp, n);
            let mn = tutte(&ok(build_mn(&s))?);
            ensure!(mn == closed_form_mn(&t0, n), "T(M_{n}) for {name}");
            let pn = tutte(&ok(build_pn(&s))?);
            ensure!(pn == pn_recursive(&t0, &t0c, n), "T(P^{n}) recursion for {name}");
            if let Some(prev) = &previous_pn {
                let step = &(&Poly::x_pow_y_pow(n as u32 - 2, 0) * &t0) + prev;
                ensure!(pn == step, "T(P^{n}) != x^(n-2) T0 + T(P^{}) for {name}", n - 1);
            } else {
                ensure!(pn == &t0 + &(&Poly::y() * &t0c), "T(P^2) != T0 + y T(M0/e0) for {name}");
            }
            previous_pn = Some(pn);
            let mp = tutte(&ok(build_mn_prime(&s))?);
            ensure!(mp == closed_form_mn_prime(&t0, &t0c, n), "T(M'_{n}) for {name}");
            checked += 1;
        }
    }
    within(Duration::from_secs(10), start, format!("{checked} (seed, n) pairs match the closed forms"))
}

fn tutte_differs_chi_agrees() -> Outcome {
    let start = Instant::now();
    for (name, seed, bp) in seeds() {
        for n in 3..=5 {
            let s = spec(&seed, bp, n);
            let (a, b) = (ok(build_mn(&s))?, ok(build_mn_prime(&s))?);
            ensure!(tutte(&a) != tutte(&b), "Tutte polynomials coincide for {name}, n={n}");
            ensure!(characteristic(&a) == characteristic(&b), "chi differs for {name}, n={n}");
        }
    }
    let s = spec(&c3(), "a1", 3);
    let diff = &rank_generating_tutte(&ok(build_mn(&s))?) - &rank_generating_tutte(&ok(build_mn_prime(&s))?);
    let expected = &Poly::y() * &(&(&Poly::x() + &Poly::y()) - &Poly::x_pow_y_pow(1, 1));
    ensure!(diff == expected, "T(M_3) - T(M'_3) over C3 is {diff}, expected {expected}");
    within(Duration::from_secs(5), start, format!("T differs and chi agrees for n = 3..5; C3 difference {diff}"))
}

fn certification_grid() -> Outcome {
    let start = Instant::now();
    let mut slowest = Duration::ZERO;
    let mut count = 0;
    for (name, seed, bp) in seeds() {
        for n in 2..=5 {
            let t = Instant::now();
            let cert =
                certify_iso(&spec(&seed, bp, n), Execution::default()).map_err(|e| format!("{name}, n={n}: {e}"))?;
            ensure!(cert.accepted, "{name}, n={n} not accepted");
            let reread = ok(IsoCertificate::from_json(&ok(cert.to_json())?))?;
            let re = ok(reread.reverify())?;
            ensure!(re.passed(), "{name}, n={n} fails re-verification: {:?}", re.failures);
            slowest = slowest.max(t.elapsed());
            count += 1;
        }
    }
    let detail = format!("{count} certificates accepted and re-verified; total {:.2?}", start.elapsed());
    if slowest > Duration::from_secs(60) {
        return Err(format!("{detail}; slowest instance {slowest:.2?} exceeds 60s"));
    }
    Ok(format!("{detail}; slowest {slowest:.2?} of 60s"))
}

fn dimension_triple_agreement() -> Outcome {
    let start = Instant::now();
    let corpus = corpus();
    for (name, m) in &corpus {
        let a = OsAlgebra::new(m.clone());
        let nbc = a.nbc_counts();
        let enumerated = nbc_counts_by_enumeration(m, &(0..m.len()).collect::<Vec<_>>());
        ensure!(nbc == enumerated, "{name}: nbc {nbc:?} vs enumeration {enumerated:?}");
        let quotient = ok(a.quotient_dimensions(Execution::default()))?;
        ensure!(quotient[..nbc.len()] == nbc[..], "{name}: quotient {quotient:?} vs nbc {nbc:?}");
        ensure!(quotient[nbc.len()..].iter().all(|&d| d == 0), "{name}: quotient {quotient:?} nonzero above rank");
        let has_loop = (0..m.len()).any(|e| m.is_loop(e).unwrap());
        if !has_loop {
            let poincare = ok(poincare_from_chi(&characteristic(m), m.rank()))?;
            let p: Vec<usize> = poincare.padded(m.rank() + 1).iter().map(|&c| c as usize).collect();
            ensure!(p == nbc, "{name}: Poincare {p:?} vs nbc {nbc:?}");
        } else {
            ensure!(characteristic(m).is_zero(), "{name}: chi of a matroid with a loop is nonzero");
        }
        ensure!(ok(whitney_dimension_oracle(m))? == nbc, "{name}: Whitney numbers differ");
        ensure!(ok(a.graded_dimensions(Execution::default()))? == nbc, "{name}: graded_dimensions differs");
    }
    let sum = ok(direct_sum(&c3(), &prefixed(&c3(), "z")))?;
    let dims = ok(OsAlgebra::new(sum).graded_dimensions(Execution::default()))?;
    ensure!(dims == vec![1, 6, 13, 12, 4], "C3+C3 dimensions {dims:?}");
    within(Duration::from_secs(30), start, format!("{} matroids agree; C3+C3 gives {dims:?}", corpus.len()))
}

fn non_isomorphic_family_m2_n6() -> Outcome {
    let start = Instant::now();
    let (report, certs) = ok(demonstrate_corollary(2, 6, Execution::default()))?;
    let longest: Vec<usize> = report.members.iter().map(|m| m.longest_circuit).collect();
    ensure!(longest == vec![7, 8], "longest circuits {longest:?}");
    ensure!(report.pairs.len() == 1, "expected one pair, got {}", report.pairs.len());
    let pair = &report.pairs[0];
    ensure!(pair.method == "exhaustive" && !pair.isomorphic, "pair {pair:?}");
    let members: Vec<Matroid> =
        report.members.iter().map(|m| m.matroid.to_matroid()).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    ensure!(ok(are_isomorphic(&members[0], &members[1]))?.is_none(), "independent search found an isomorphism");
    ensure!(certs.len() == 2, "expected two certificates");
    for c in &certs {
        ensure!(c.accepted && ok(c.reverify())?.passed(), "certificate for {} rejected", c.spec.basepoint);
    }
    ensure!(report.accepted, "report not accepted");
    within(
        Duration::from_secs(300),
        start,
        format!("M'_(6,2), M'_(6,3) longest circuits {longest:?}, non-isomorphic, both certified"),
    )
}

fn beta_and_basis_split() -> Outcome {
    let start = Instant::now();
    for (name, seed, bp) in seeds() {
        let whole = tutte(&seed).eval(1, 1);
        let del = tutte(&ok(seed.delete_label(bp))?).eval(1, 1);
        let con = tutte(&ok(seed.contract_label(bp))?).eval(1, 1);
        ensure!(del > 0 && con > 0, "{name}: T(1,1) of deletion {del}, contraction {con}");
        ensure!(whole == del + con, "{name}: {whole} != {del} + {con}");
        ensure!(whole == basis_count(&seed), "{name}: T(1,1) != basis count");
        let beta = ok(beta_invariant(&seed))?;
        ensure!(beta > 0, "{name}: beta = {beta}");
    }
    let sum = ok(direct_sum(&c3(), &prefixed(&c3(), "z")))?;
    ensure!(ok(beta_invariant(&sum))? == 0, "beta(C3+C3) nonzero");
    within(Duration::from_secs(1), start, "T(1,1) splits with positive parts; beta > 0 on seeds, 0 on C3+C3".into())
}

/// `k` hyperplanes `x + t y + t^2 z (+ ...)` with distinct `t`: any `d` of
/// them are independent.
fn vandermonde(d: usize, k: usize, prefix: &str) -> Arrangement {
    let vars: Vec<String> = (1..=d).map(|i| format!("{prefix}{i}")).collect();
    let forms = (1..=k as i64)
        .map(|t| {
            let coeffs: BTreeMap<String, _> =
                vars.iter().enumerate().map(|(j, v)| (v.clone(), rational(t.pow(j as u32)))).collect();
            LinearForm::new(coeffs, rational(0), Some(format!("{prefix}h{t}"))).unwrap()
        })
        .collect();
    Arrangement::new(vars, forms).unwrap()
}

fn homogenization_identity() -> Outcome {
    let start = Instant::now();
    let pool: Vec<(&str, Arrangement)> = vec![
        ("C3", ok(realize_generic(3))?),
        ("C4", ok(realize_generic(4))?),
        ("generic 5 in rank 4", ok(realize_generic(5))?),
        ("generic 4 in rank 3", vandermonde(3, 4, "w")),
        ("generic 5 in rank 3", vandermonde(3, 5, "w")),
        ("K4", ok(graphic_arrangement(&ok(complete_graph(4))?))?),
    ];
    let mut pairs = 0;
    for (n0, a0) in &pool {
        for (n1, a1) in &pool {
            let a1 = ok(a1.relabel(|l| format!("z{l}")))?;
            let report = ok(verify_homogenization_identity(a0, 0, &a1, 0, Execution::default()))?;
            ensure!(report.passed(), "{n0} with {n1}: {report:?}");
            let p = ok(arr_parallel_connection(a0, 0, &a1, 0))?;
            let (m0, m1) = (ok(underlying_matroid(a0))?, ok(underlying_matroid(&a1))?);
            let expected = ok(parallel_connection(&m0, m0.label(0), &m1, m1.label(0)))?;
            ensure!(ok(underlying_matroid(&p))?.same_labeled(&expected), "{n0} with {n1}: matroid of P differs");
            pairs += 1;
        }
    }
    let c3m = ok(underlying_matroid(&pool[0].1))?;
    ensure!(are_isomorphic(&c3m, &cycle_matroid(3).unwrap()).unwrap().is_some(), "C3 realization has wrong matroid");
    let k4m = ok(underlying_matroid(&pool[5].1))?;
    ensure!(k4m.same_labeled(&k4()), "K4 arrangement has wrong matroid");
    within(Duration::from_secs(10), start, format!("{pairs} arrangement pairs satisfy the identity"))
}

fn random_graph(rng: &mut StdRng, max_edges: usize) -> Graph {
    let v = rng.gen_range(2..=5);
    let e = rng.gen_range(1..=max_edges);
    let edges: Vec<(String, String, String)> =
        (0..e).map(|i| (format!("e{i}"), rng.gen_range(0..v).to_string(), rng.gen_range(0..v).to_string())).collect();
    let refs: Vec<(&str, &str, &str)> = edges.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
    Graph::from_edges(0..v, &refs).unwrap()
}

fn random_element(rng: &mut StdRng, n: usize, degree: usize) -> ExteriorElement {
    let mut x = ExteriorElement::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let mut ids: Vec<usize> = (0..n).collect();
        ids.shuffle(rng);
        x.add_term(Subset::from_ids(ids[..degree.min(n)].iter().copied()), rational(rng.gen_range(-3..=3)));
    }
    x
}

fn property_suites() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(20_261_016);
    let mut cases = 0;
    for round in 0..120 {
        let m = graphic_matroid(&random_graph(&mut rng, 9)).unwrap();
        ensure!(m.validate().passed(), "round {round}: graphic matroid fails validation");
        let n = m.len();
        // Tutte: oracle, pivot order, basis count.
        let t = tutte(&m);
        ensure!(t == rank_generating_tutte(&m), "round {round}: Tutte differs from rank generating sum");
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        ensure!(ok(TutteEngine::new().with_pivot_order(order.clone()).compute(&m))? == t, "round {round}: pivot order");
        ensure!(t.eval(1, 1) == basis_count(&m), "round {round}: T(1,1) != basis count");
        // nbc under a different order.
        let reordered = ok(OsAlgebra::with_order(m.clone(), order.clone()))?;
        let a = OsAlgebra::new(m.clone());
        ensure!(reordered.nbc_counts() == a.nbc_counts(), "round {round}: nbc counts depend on order");
        ensure!(reordered.nbc_counts() == nbc_counts_by_enumeration(&m, &order), "round {round}: nbc enumeration");
        // Boundary, normal form, multiplicativity, ideal membership.
        let deg = rng.gen_range(1..=3.min(n));
        let x = random_element(&mut rng, n, deg);
        let y = random_element(&mut rng, n, 1);
        ensure!(x.boundary().boundary().is_zero(), "round {round}: boundary squared");
        let nf = a.normal_form(&x);
        ensure!(a.normal_form(&nf) == nf, "round {round}: normal form not idempotent");
        ensure!(nf.terms().all(|(s, _)| a.is_nbc(s)), "round {round}: normal form leaves nbc span");
        let rest = &x - &nf;
        ensure!(ok(a.ideal_membership(&rest))?.member, "round {round}: x - NF(x) outside the ideal");
        let lhs = a.normal_form(&x.wedge(&y));
        ensure!(lhs == a.normal_form(&nf.wedge(&a.normal_form(&y))), "round {round}: normal form not multiplicative");
        // Minors commute.
        if n >= 2 {
            let (e, f) = (order[0], order[1]);
            let (le, lf) = (m.label(e).to_owned(), m.label(f).to_owned());
            let dc = ok(ok(m.delete_label(&le))?.contract_label(&lf))?;
            let cd = ok(ok(m.contract_label(&lf))?.delete_label(&le))?;
            ensure!(dc.same_labeled(&cd), "round {round}: delete and contract do not commute");
        }
        cases += 1;
    }
    for (name, seed, bp) in seeds() {
        for n in 2..=4 {
            let s = spec(&seed, bp, n);
            for m in [ok(build_mn(&s))?, ok(build_pn(&s))?, ok(build_mn_prime(&s))?] {
                ensure!(m.validate().passed(), "{name}, n={n}: constructed matroid fails validation");
            }
            cases += 1;
        }
    }
    within(Duration::from_secs(120), start, format!("{cases} randomized and constructed cases"))
}

fn main() {
    let criteria: [(&str, Criterion); 9] = [
        ("1 cycle Tutte closed form", cycles_closed_form),
        ("2 family Tutte closed forms", family_closed_forms),
        ("3 Tutte differs, chi agrees", tutte_differs_chi_agrees),
        ("4 certification grid", certification_grid),
        ("5 graded dimension agreement", dimension_triple_agreement),
        ("6 non-isomorphic family m=2 n=6", non_isomorphic_family_m2_n6),
        ("7 basis split and beta", beta_and_basis_split),
        ("8 homogenization identity", homogenization_identity),
        ("9 property suites", property_suites),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
