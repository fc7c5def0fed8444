//! Lattice of flats and its Möbius function.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::Subset;

/// Largest ground set for which flats are enumerated.
pub const FLAT_LIMIT: usize = 20;

#[derive(Clone, Debug)]
pub struct FlatLattice {
    /// Flats grouped by rank, each level sorted.
    pub flats: Vec<Vec<Subset>>,
    /// `μ(0̂, X)` aligned with `flats`.
    pub mobius: Vec<Vec<i64>>,
}

impl FlatLattice {
    pub fn new(m: &Matroid) -> Result<Self> {
        if m.len() > FLAT_LIMIT {
            return Err(Error::SizeGuard { size: m.len(), limit: FLAT_LIMIT });
        }
        let r = m.rank();
        let mut levels: Vec<BTreeSet<Subset>> = vec![BTreeSet::new(); r + 1];
        levels[0].insert(m.closure(Subset::EMPTY));
        for k in 0..r {
            let (lower, upper) = levels.split_at_mut(k + 1);
            for &f in &lower[k] {
                for e in m.full_set().difference(f).iter() {
                    upper[0].insert(m.closure(f.with(e)));
                }
            }
        }
        let flats: Vec<Vec<Subset>> = levels.into_iter().map(|l| l.into_iter().collect()).collect();
        let mut mobius: Vec<Vec<i64>> = Vec::with_capacity(flats.len());
        for (k, level) in flats.iter().enumerate() {
            let values = level
                .iter()
                .map(|&x| {
                    if k == 0 {
                        return 1;
                    }
                    let below: i64 = (0..k)
                        .flat_map(|j| flats[j].iter().zip(&mobius[j]))
                        .filter(|(y, _)| y.is_subset_of(x))
                        .map(|(_, &mu)| mu)
                        .sum();
                    -below
                })
                .collect();
            mobius.push(values);
        }
        Ok(FlatLattice { flats, mobius })
    }

    pub fn rank(&self) -> usize {
        self.flats.len() - 1
    }

    /// `Σ_{rank X = p} |μ(0̂, X)|` for each `p`.
    pub fn whitney_numbers(&self) -> Vec<usize> {
        self.mobius.iter().map(|level| level.iter().map(|mu| mu.unsigned_abs() as usize).sum()).collect()
    }
}

/// Graded dimensions of the Orlik-Solomon algebra from the Möbius function
/// of the flat lattice. A matroid with a loop gives all zeros, matching the
/// collapse of the algebra.
pub fn whitney_dimension_oracle(m: &Matroid) -> Result<Vec<usize>> {
    let lattice = FlatLattice::new(m)?;
    if !m.closure(Subset::EMPTY).is_empty() {
        return Ok(vec![0; lattice.rank() + 1]);
    }
    Ok(lattice.whitney_numbers())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::cycle_matroid;

    #[test]
    fn c3_lattice() {
        let l = FlatLattice::new(&cycle_matroid(3).unwrap()).unwrap();
        assert_eq!(l.flats.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 3, 1]);
        assert_eq!(l.mobius, vec![vec![1], vec![-1, -1, -1], vec![2]]);
        assert_eq!(whitney_dimension_oracle(&cycle_matroid(3).unwrap()).unwrap(), vec![1, 3, 2]);
    }

    #[test]
    fn boolean_lattice_gives_binomials() {
        let free = Matroid::free(["a", "b", "c", "d"]).unwrap();
        assert_eq!(whitney_dimension_oracle(&free).unwrap(), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn loop_collapses() {
        let lp = Matroid::from_labeled(&["a", "l"], &[vec!["l"]]).unwrap();
        assert_eq!(whitney_dimension_oracle(&lp).unwrap(), vec![0, 0]);
    }
}
