//! Shared corpus and brute-force oracles for the integration tests. The
//! oracles only use circuits and subset enumeration, never the library's
//! rank, Tutte or rewriting code.

#![allow(dead_code)]

use osforge::constructions::{
    build_gm, complete_graph, cycle_matroid, direct_sum, graphic_matroid, isthmus, FamilySpec,
};
use osforge::io::GraphJson;
use osforge::subset::subsets_of_size;
use osforge::{BivariatePolynomial as Poly, Matroid, Subset};

pub fn prefixed(m: &Matroid, prefix: &str) -> Matroid {
    m.relabel(|l| format!("{prefix}{l}")).unwrap()
}

pub fn c3() -> Matroid {
    prefixed(&cycle_matroid(3).unwrap(), "a")
}

pub fn c4() -> Matroid {
    prefixed(&cycle_matroid(4).unwrap(), "b")
}

pub fn g2() -> Matroid {
    graphic_matroid(&build_gm(2).unwrap()).unwrap()
}

/// `M(K₄)` read back from its graph JSON, as a user would supply it.
pub fn k4() -> Matroid {
    let text = serde_json::to_string(&GraphJson::from_graph(&complete_graph(4).unwrap())).unwrap();
    let g: GraphJson = serde_json::from_str(&text).unwrap();
    graphic_matroid(&g.to_graph().unwrap()).unwrap()
}

/// Uniform matroid `U_{r,n}` on labels `u0..`.
pub fn uniform(r: usize, n: usize) -> Matroid {
    let labels: Vec<String> = (0..n).map(|i| format!("u{i}")).collect();
    Matroid::from_circuits(labels, subsets_of_size(n, r + 1).collect::<Vec<_>>()).unwrap()
}

/// Fano plane.
pub fn fano() -> Matroid {
    let lines = [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]];
    let line_sets: Vec<Subset> = lines.iter().map(|l| Subset::from_ids(l.iter().copied())).collect();
    let full = Subset::full(7);
    let mut circuits = line_sets.clone();
    circuits.extend(line_sets.iter().map(|&l| full.difference(l)));
    Matroid::from_circuits((0..7).map(|i| format!("f{i}")), circuits).unwrap()
}

/// `(name, seed, basepoint)` for the connected simple seeds.
pub fn seeds() -> Vec<(&'static str, Matroid, &'static str)> {
    vec![("C3", c3(), "a1"), ("C4", c4(), "b1"), ("M(G2)", g2(), "s2"), ("M(K4)", k4(), "k01")]
}

pub fn spec(seed: &Matroid, basepoint: &str, n: usize) -> FamilySpec {
    FamilySpec::new(seed.clone(), basepoint, n).unwrap()
}

/// Matroids on at most 10 elements used for corpus-wide checks.
pub fn corpus() -> Vec<(String, Matroid)> {
    let mut out: Vec<(String, Matroid)> = Vec::new();
    for n in 2..=7 {
        out.push((format!("C{n}"), cycle_matroid(n).unwrap()));
    }
    out.push(("free3".into(), Matroid::free(["a", "b", "c"]).unwrap()));
    out.push(("isthmus".into(), isthmus()));
    out.push(("C3+C3".into(), direct_sum(&c3(), &prefixed(&c3(), "z")).unwrap()));
    out.push(("U24".into(), uniform(2, 4)));
    out.push(("U25".into(), uniform(2, 5)));
    out.push(("U36".into(), uniform(3, 6)));
    out.push(("Fano".into(), fano()));
    out.push(("M(G2)".into(), g2()));
    out.push(("M(K4)".into(), k4()));
    out.push(("loop+edge".into(), Matroid::from_labeled(&["a", "l"], &[vec!["l"]]).unwrap()));
    out.push((
        "parallel".into(),
        Matroid::from_labeled(&["a", "b", "c", "d"], &[vec!["a", "b"], vec!["c", "d"]]).unwrap(),
    ));
    for (name, seed, bp) in seeds() {
        for n in 2..=5 {
            let s = spec(&seed, bp, n);
            for (kind, m) in [
                ("M", osforge::constructions::build_mn(&s).unwrap()),
                ("M'", osforge::constructions::build_mn_prime(&s).unwrap()),
            ] {
                if m.len() <= 10 {
                    out.push((format!("{kind}_{n}[{name}]"), m));
                }
            }
        }
    }
    out
}

fn contains_circuit(m: &Matroid, s: Subset) -> bool {
    m.circuits().iter().any(|c| c.is_subset_of(s))
}

/// Rank by brute force: largest circuit-free subset.
pub fn brute_rank(m: &Matroid, s: Subset) -> usize {
    let ids: Vec<usize> = s.iter().collect();
    let mut best = 0;
    for mask in 0u64..(1u64 << ids.len()) {
        let t = Subset::from_ids(ids.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &id)| id));
        if t.len() > best && !contains_circuit(m, t) {
            best = t.len();
        }
    }
    best
}

/// `Σ_{A ⊆ E} (x−1)^{r(E)−r(A)} (y−1)^{|A|−r(A)}`, with ranks from
/// independent sets enumerated once.
pub fn rank_generating_tutte(m: &Matroid) -> Poly {
    let n = m.len();
    let independent: Vec<bool> = (0u64..(1u64 << n)).map(|b| !contains_circuit(m, Subset::from_bits(b))).collect();
    let mut rank = vec![0usize; 1 << n];
    for b in 0u64..(1u64 << n) {
        rank[b as usize] = if independent[b as usize] {
            b.count_ones() as usize
        } else {
            (0..n).filter(|i| b >> i & 1 == 1).map(|i| rank[(b & !(1 << i)) as usize]).max().unwrap()
        };
    }
    let full = rank[(1usize << n) - 1];
    let xm1 = &Poly::x() - &Poly::one();
    let ym1 = &Poly::y() - &Poly::one();
    let mut counts = std::collections::BTreeMap::new();
    for (b, &rb) in rank.iter().enumerate() {
        *counts.entry((full - rb, b.count_ones() as usize - rb)).or_insert(0i64) += 1;
    }
    let mut t = Poly::zero();
    for ((a, c), k) in counts {
        t += &(&(&xm1.pow(a as u32) * &ym1.pow(c as u32)) * &Poly::monomial(k, 0, 0));
    }
    t
}

/// Bases counted as circuit-free sets of maximum size.
pub fn basis_count(m: &Matroid) -> i64 {
    let r = brute_rank(m, m.full_set());
    subsets_of_size(m.len(), r).filter(|&s| !contains_circuit(m, s)).count() as i64
}

/// nbc set sizes by enumerating every subset, for the order `order`
/// (smallest first).
pub fn nbc_counts_by_enumeration(m: &Matroid, order: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; m.len()];
    for (p, &id) in order.iter().enumerate() {
        pos[id] = p;
    }
    let broken: Vec<Subset> =
        m.circuits().iter().map(|c| c.without(c.iter().min_by_key(|&id| pos[id]).unwrap())).collect();
    let r = brute_rank(m, m.full_set());
    let mut counts = vec![0; r + 1];
    for b in 0u64..(1u64 << m.len()) {
        let s = Subset::from_bits(b);
        if broken.iter().all(|bc| !bc.is_subset_of(s)) {
            counts[s.len()] += 1;
        }
    }
    counts
}
