//! Matroid and graph families: polygon matroids, direct sums, parallel
//! connections, the isthmus, the `M_n` / `M′_n` pair, graphic matroids, and
//! the fan-like graphs `G_m`.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::matroid::{minimal_sets, Matroid};
use crate::subset::{Subset, MAX_ELEMENTS};

/// Label of the isthmus point.
pub const ISTHMUS_LABEL: &str = "p";

/// The polygon matroid `C_n` on labels `"1".."n"`: one circuit of size `n`.
pub fn cycle_matroid(n: usize) -> Result<Matroid> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("C_n needs n >= 2, got {n}")));
    }
    if n > MAX_ELEMENTS {
        return Err(Error::SizeGuard { size: n, limit: MAX_ELEMENTS });
    }
    Matroid::from_circuits((1..=n).map(|i| i.to_string()), [Subset::full(n)])
}

/// Rank one on a single point `p`.
pub fn isthmus() -> Matroid {
    Matroid::free([ISTHMUS_LABEL]).expect("single label")
}

/// Disjoint union; the circuits of both summands.
pub fn direct_sum(m0: &Matroid, m1: &Matroid) -> Result<Matroid> {
    let left: HashSet<&str> = m0.labels().collect();
    if let Some(l) = m1.labels().find(|l| left.contains(l)) {
        return Err(Error::LabelCollision(l.to_owned()));
    }
    if m0.len() + m1.len() > MAX_ELEMENTS {
        return Err(Error::SizeGuard { size: m0.len() + m1.len(), limit: MAX_ELEMENTS });
    }
    let shift = m0.len();
    let circuits =
        m0.circuits().iter().copied().chain(m1.circuits().iter().map(|c| Subset::from_bits(c.bits() << shift)));
    Matroid::from_circuits(m0.labels().chain(m1.labels()), circuits)
}

/// Label of the element obtained by identifying `l0` with `l1`.
pub fn merged_label(l0: &str, l1: &str) -> String {
    format!("b̄:{l0}={l1}")
}

/// Parallel connection of `m0` and `m1` along `b0 ~ b1`.
///
/// The ground set lists `m0` (with `b0` replaced by the merged element) then
/// `m1` without `b1`. Circuits are the images of the circuits of both inputs
/// together with `(C − b0) ∪ (C′ − b1)` for `b0 ∈ C` and `b1 ∈ C′`.
pub fn parallel_connection(m0: &Matroid, b0: &str, m1: &Matroid, b1: &str) -> Result<Matroid> {
    let id0 = m0.require_id(b0)?;
    let id1 = m1.require_id(b1)?;
    if m0.is_loop(id0)? {
        return Err(Error::LoopBasepoint(b0.to_owned()));
    }
    if m1.is_loop(id1)? {
        return Err(Error::LoopBasepoint(b1.to_owned()));
    }
    let merged = merged_label(b0, b1);
    let left: HashSet<&str> = m0.labels().filter(|&l| l != b0).collect();
    for l in m1.labels().filter(|&l| l != b1) {
        if left.contains(l) || l == merged {
            return Err(Error::LabelCollision(l.to_owned()));
        }
    }
    if left.contains(merged.as_str()) {
        return Err(Error::LabelCollision(merged));
    }
    let size = m0.len() + m1.len() - 1;
    if size > MAX_ELEMENTS {
        return Err(Error::SizeGuard { size, limit: MAX_ELEMENTS });
    }

    let labels: Vec<String> = m0
        .labels()
        .map(|l| if l == b0 { merged.clone() } else { l.to_owned() })
        .chain(m1.labels().filter(|&l| l != b1).map(str::to_owned))
        .collect();
    // m1 ids map past m0; b1 lands on b0's slot
    let map1: Vec<usize> = (0..m1.len())
        .map(|j| match j.cmp(&id1) {
            std::cmp::Ordering::Less => m0.len() + j,
            std::cmp::Ordering::Equal => id0,
            std::cmp::Ordering::Greater => m0.len() + j - 1,
        })
        .collect();

    let first: Vec<Subset> = m0.circuits().to_vec();
    let second: Vec<Subset> = m1.circuits().iter().map(|c| c.map_ids(&map1)).collect();
    let mut mixed = Vec::new();
    for c in m0.circuits().iter().filter(|c| c.contains(id0)) {
        for d in m1.circuits().iter().filter(|d| d.contains(id1)) {
            mixed.push(c.without(id0).union(d.without(id1).map_ids(&map1)));
        }
    }
    let raw: Vec<Subset> = first.into_iter().chain(second).chain(mixed).collect();
    let mut distinct = raw.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let circuits = minimal_sets(raw);
    if circuits.len() != distinct.len() && m0.is_simple() && m1.is_simple() {
        return Err(Error::MethodDisagreement("minimalizing parallel-connection circuits removed a set".into()));
    }
    Matroid::from_circuits(labels, circuits)
}

/// Seed data for the `M_n` / `M′_n` pair.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    seed: Matroid,
    basepoint: String,
    n: usize,
}

impl FamilySpec {
    /// The seed must be simple, the basepoint one of its labels, `n >= 2`,
    /// and the seed's labels disjoint from the polygon labels `1..n` and `p`.
    pub fn new(seed: Matroid, basepoint: impl Into<String>, n: usize) -> Result<Self> {
        let basepoint = basepoint.into();
        if n < 2 {
            return Err(Error::InvalidParameter(format!("n must be at least 2, got {n}")));
        }
        if !seed.is_simple() {
            return Err(Error::InvalidParameter("seed matroid must have no loops or parallel pairs".into()));
        }
        seed.require_id(&basepoint)?;
        for l in seed.labels() {
            let clash = l == ISTHMUS_LABEL || l.parse::<usize>().is_ok_and(|i| (1..=n).contains(&i));
            if clash {
                return Err(Error::LabelCollision(l.to_owned()));
            }
        }
        Ok(FamilySpec { seed, basepoint, n })
    }

    pub fn seed(&self) -> &Matroid {
        &self.seed
    }

    pub fn basepoint(&self) -> &str {
        &self.basepoint
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Label of the merged element `1 ~ ε₀` in `P^n` and `M′_n`.
    pub fn merged_label(&self) -> String {
        merged_label("1", &self.basepoint)
    }
}

/// `M_n = C_n ⊕ M₀`.
pub fn build_mn(spec: &FamilySpec) -> Result<Matroid> {
    direct_sum(&cycle_matroid(spec.n)?, &spec.seed)
}

/// `P^n = P(C_n, M₀)` along `1 ~ ε₀`.
pub fn build_pn(spec: &FamilySpec) -> Result<Matroid> {
    parallel_connection(&cycle_matroid(spec.n)?, "1", &spec.seed, &spec.basepoint)
}

/// `M′_n = P^n ⊕ S`.
pub fn build_mn_prime(spec: &FamilySpec) -> Result<Matroid> {
    direct_sum(&build_pn(spec)?, &isthmus())
}

/// Whether the seed is the restriction of `m` to the seed's labels, with the
/// basepoint read as the merged element when `m` contains it.
pub fn contains_seed(spec: &FamilySpec, m: &Matroid) -> Result<bool> {
    let merged = spec.merged_label();
    let bp = spec.basepoint();
    let stand_in = if m.id_of(&merged).is_some() { merged.as_str() } else { bp };
    let labels: Vec<&str> = spec.seed.labels().map(|l| if l == bp { stand_in } else { l }).collect();
    let Ok(s) = m.subset_of_labels(&labels) else {
        return Ok(false);
    };
    let restricted = m.restrict(s)?.relabel(|l| if l == stand_in { bp.to_owned() } else { l.to_owned() })?;
    Ok(restricted.same_labeled(&spec.seed))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub label: String,
    pub ends: (String, String),
}

/// Undirected multigraph with labeled edges. Loops and parallel edges are
/// allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::DuplicateLabel(v.clone()));
            }
        }
        let mut labels = HashSet::new();
        for e in &edges {
            if !labels.insert(e.label.as_str()) {
                return Err(Error::DuplicateLabel(e.label.clone()));
            }
            for v in [&e.ends.0, &e.ends.1] {
                if !seen.contains(v.as_str()) {
                    return Err(Error::UnknownElement(v.clone()));
                }
            }
        }
        if edges.len() > MAX_ELEMENTS {
            return Err(Error::SizeGuard { size: edges.len(), limit: MAX_ELEMENTS });
        }
        Ok(Graph { vertices, edges })
    }

    /// Convenience constructor from `(label, u, v)` triples.
    pub fn from_edges<V: ToString>(
        vertices: impl IntoIterator<Item = V>,
        edges: &[(&str, &str, &str)],
    ) -> Result<Self> {
        Graph::new(
            vertices.into_iter().map(|v| v.to_string()).collect(),
            edges.iter().map(|&(l, u, v)| Edge { label: l.into(), ends: (u.into(), v.into()) }).collect(),
        )
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edge sets of all simple cycles (loops and 2-cycles of parallel edges
    /// included).
    pub fn cycles(&self) -> Vec<Subset> {
        let index = |v: &str| self.vertices.iter().position(|x| x == v).expect("validated");
        let nv = self.vertices.len();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
        let mut found = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            let (u, v) = (index(&e.ends.0), index(&e.ends.1));
            if u == v {
                found.push(Subset::singleton(id));
            } else {
                adj[u].push((v, id));
                adj[v].push((u, id));
            }
        }
        // Each cycle is rooted at its smallest vertex and found once per direction.
        for start in 0..nv {
            let mut on_path = vec![false; nv];
            on_path[start] = true;
            walk(&adj, start, start, Subset::EMPTY, &mut on_path, &mut found);
        }
        found.sort_unstable();
        found.dedup();
        found
    }
}

fn walk(
    adj: &[Vec<(usize, usize)>],
    start: usize,
    at: usize,
    used: Subset,
    on_path: &mut [bool],
    found: &mut Vec<Subset>,
) {
    for &(next, edge) in &adj[at] {
        if used.contains(edge) || next < start {
            continue;
        }
        if next == start {
            if !used.is_empty() {
                found.push(used.with(edge));
            }
        } else if !on_path[next] {
            on_path[next] = true;
            walk(adj, start, next, used.with(edge), on_path, found);
            on_path[next] = false;
        }
    }
}

/// Cycle matroid of a graph: edges as ground set, simple cycles as circuits.
pub fn graphic_matroid(g: &Graph) -> Result<Matroid> {
    Matroid::from_circuits(g.edges.iter().map(|e| e.label.clone()), g.cycles())
}

/// Label of the spoke `{0, i}` of `G_m`.
pub fn spoke_label(i: usize) -> String {
    format!("s{i}")
}

/// Label of the path edge `{i, i+1}` of `G_m`.
pub fn path_label(i: usize) -> String {
    format!("p{i}")
}

/// `G_m`: vertices `ℤ_{2m}`, path edges `{i, i+1}` for `1 <= i < 2m-1` and
/// spokes `{0, i}` for `1 <= i < 2m`; `2m` vertices, `4m-3` edges.
pub fn build_gm(m: usize) -> Result<Graph> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("G_m needs m >= 2, got {m}")));
    }
    gm_graph(m)
}

pub(crate) fn gm_graph(m: usize) -> Result<Graph> {
    let vertices: Vec<String> = (0..2 * m).map(|v| v.to_string()).collect();
    let mut edges = Vec::new();
    for i in 1..(2 * m).saturating_sub(1) {
        edges.push(Edge { label: path_label(i), ends: (i.to_string(), (i + 1).to_string()) });
    }
    for i in 1..2 * m {
        edges.push(Edge { label: spoke_label(i), ends: ("0".into(), i.to_string()) });
    }
    debug_assert_eq!(edges.len(), 4 * m - 3);
    Graph::new(vertices, edges)
}

fn check_family_range(m: usize, n: usize, i: usize) -> Result<()> {
    if n <= 2 * m + 1 {
        return Err(Error::InvalidParameter(format!("need n > 2m+1, got m={m}, n={n}")));
    }
    if !(m..=2 * m - 1).contains(&i) {
        return Err(Error::InvalidParameter(format!("spoke index {i} outside [{m}, {}]", 2 * m - 1)));
    }
    Ok(())
}

/// The family spec with seed `M(G_m)` and basepoint the spoke `{0, i}`.
pub fn gm_family_spec(m: usize, n: usize, i: usize) -> Result<FamilySpec> {
    check_family_range(m, n, i)?;
    FamilySpec::new(graphic_matroid(&gm_graph(m)?)?, spoke_label(i), n)
}

/// `M′_{n,i} = S ⊕ P(C_n, M(G_m))` glued along the spoke `{0, i}`.
pub fn build_mn_prime_i(m: usize, n: usize, i: usize) -> Result<Matroid> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("G_m needs m >= 2, got {m}")));
    }
    build_mn_prime(&gm_family_spec(m, n, i)?)
}

/// Cycle graph on vertices `0..n` whose edge `{i-1, i}` is labeled `i`.
pub fn cycle_graph(n: usize) -> Result<Graph> {
    let vertices: Vec<String> = (0..n).map(|v| v.to_string()).collect();
    let edges =
        (1..=n).map(|i| Edge { label: i.to_string(), ends: ((i - 1).to_string(), (i % n).to_string()) }).collect();
    Graph::new(vertices, edges)
}

/// Complete graph `K_k`; edge `{u, v}` is labeled `k{u}{v}`.
pub fn complete_graph(k: usize) -> Result<Graph> {
    let vertices: Vec<String> = (0..k).map(|v| v.to_string()).collect();
    let mut edges = Vec::new();
    for u in 0..k {
        for v in u + 1..k {
            edges.push(Edge { label: format!("k{u}{v}"), ends: (u.to_string(), v.to_string()) });
        }
    }
    Graph::new(vertices, edges)
}
