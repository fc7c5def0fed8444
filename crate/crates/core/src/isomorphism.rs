//! Exhaustive matroid isomorphism search with invariant pruning.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::Subset;

/// Largest ground set the search accepts.
pub const ISO_LIMIT: usize = 14;

/// Searches for a bijection `map[id in a] = id in b` carrying the circuits of
/// `a` onto the circuits of `b`.
///
/// Inputs above [`ISO_LIMIT`] elements are refused.
pub fn are_isomorphic(a: &Matroid, b: &Matroid) -> Result<Option<Vec<usize>>> {
    for m in [a, b] {
        if m.len() > ISO_LIMIT {
            return Err(Error::SizeGuard { size: m.len(), limit: ISO_LIMIT });
        }
    }
    if a.len() != b.len() || a.circuits().len() != b.circuits().len() {
        return Ok(None);
    }
    let mut sizes_a: Vec<usize> = a.circuits().iter().map(|c| c.len()).collect();
    let mut sizes_b: Vec<usize> = b.circuits().iter().map(|c| c.len()).collect();
    sizes_a.sort_unstable();
    sizes_b.sort_unstable();
    if sizes_a != sizes_b {
        return Ok(None);
    }

    let prof_a = profiles(a);
    let prof_b = profiles(b);
    let mut sorted_a = prof_a.clone();
    let mut sorted_b = prof_b.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return Ok(None);
    }

    let candidates: Vec<Vec<usize>> =
        prof_a.iter().map(|p| (0..b.len()).filter(|&j| &prof_b[j] == p).collect()).collect();
    // Most constrained elements first; ties by id keep the search deterministic.
    let mut order: Vec<usize> = (0..a.len()).collect();
    order.sort_by_key(|&i| (candidates[i].len(), i));

    let search = Search {
        a,
        b,
        circuits_b: b.circuits().iter().copied().collect(),
        circuits_a: a.circuits().iter().copied().collect(),
        candidates,
        order,
    };
    let mut map = vec![usize::MAX; a.len()];
    let mut inverse = vec![usize::MAX; b.len()];
    Ok(search.extend(0, Subset::EMPTY, Subset::EMPTY, &mut map, &mut inverse).then_some(map))
}

/// Per element: sorted sizes of the circuits through it.
fn profiles(m: &Matroid) -> Vec<Vec<usize>> {
    (0..m.len())
        .map(|e| {
            let mut p: Vec<usize> = m.circuits().iter().filter(|c| c.contains(e)).map(|c| c.len()).collect();
            p.sort_unstable();
            p
        })
        .collect()
}

struct Search<'a> {
    a: &'a Matroid,
    b: &'a Matroid,
    circuits_a: HashSet<Subset>,
    circuits_b: HashSet<Subset>,
    candidates: Vec<Vec<usize>>,
    order: Vec<usize>,
}

impl Search<'_> {
    fn extend(&self, depth: usize, domain: Subset, range: Subset, map: &mut [usize], inverse: &mut [usize]) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let e = self.order[depth];
        for &f in &self.candidates[e] {
            if range.contains(f) {
                continue;
            }
            map[e] = f;
            inverse[f] = e;
            let dom = domain.with(e);
            let ran = range.with(f);
            if self.consistent(e, f, dom, ran, map, inverse) && self.extend(depth + 1, dom, ran, map, inverse) {
                return true;
            }
            map[e] = usize::MAX;
            inverse[f] = usize::MAX;
        }
        false
    }

    fn consistent(&self, e: usize, f: usize, dom: Subset, ran: Subset, map: &[usize], inverse: &[usize]) -> bool {
        let forward = self
            .a
            .circuits()
            .iter()
            .filter(|c| c.contains(e) && c.is_subset_of(dom))
            .all(|c| self.circuits_b.contains(&c.map_ids(map)));
        forward
            && self
                .b
                .circuits()
                .iter()
                .filter(|c| c.contains(f) && c.is_subset_of(ran))
                .all(|c| self.circuits_a.contains(&c.map_ids(inverse)))
    }
}
