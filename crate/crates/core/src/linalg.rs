//! Exact rational row reduction on sparse rows.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exterior::Rational;

/// Sparse row keyed by column.
pub type Row = BTreeMap<u64, Rational>;

fn axpy(target: &mut Row, factor: &Rational, source: &Row) {
    for (&col, v) in source {
        let delta = factor * v;
        match target.entry(col) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(delta);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += delta;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }
}

fn sparse_combo_add(target: &mut BTreeMap<usize, Rational>, factor: &Rational, source: &BTreeMap<usize, Rational>) {
    for (&i, v) in source {
        let delta = factor * v;
        let slot = target.entry(i).or_insert_with(Rational::zero);
        *slot += delta;
        if slot.is_zero() {
            target.remove(&i);
        }
    }
}

struct PivotRow {
    row: Row,
    /// Combination of inserted rows (by insertion index) equal to `row`.
    combo: Option<BTreeMap<usize, Rational>>,
}

/// Row echelon basis with distinct leading columns and unit pivots.
///
/// With tracking enabled every basis row remembers how it was formed from the
/// inserted rows, so span membership comes with an explicit combination.
pub struct Echelon {
    pivots: BTreeMap<u64, PivotRow>,
    track: bool,
    inserted: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { pivots: BTreeMap::new(), track: false, inserted: 0 }
    }

    pub fn tracked() -> Self {
        Echelon { pivots: BTreeMap::new(), track: true, inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Leading-term reduction. Returns the remainder and, when tracking, the
    /// combination of inserted rows that was subtracted.
    fn reduce_inner(&self, mut row: Row) -> (Row, BTreeMap<usize, Rational>) {
        let mut used = BTreeMap::new();
        let mut floor = None;
        loop {
            let lead = match floor {
                None => row.keys().next().copied(),
                Some(f) => {
                    row.range((std::ops::Bound::Excluded(f), std::ops::Bound::Unbounded)).next().map(|(&k, _)| k)
                }
            };
            let Some(col) = lead else { break };
            match self.pivots.get(&col) {
                Some(p) => {
                    let factor = -row[&col].clone();
                    axpy(&mut row, &factor, &p.row);
                    if let Some(combo) = &p.combo {
                        sparse_combo_add(&mut used, &-factor.clone(), combo);
                    }
                }
                None => floor = Some(col),
            }
        }
        (row, used)
    }

    /// Remainder of `row` modulo the span; zero iff `row` lies in the span.
    pub fn reduce(&self, row: Row) -> Row {
        self.reduce_inner(row).0
    }

    pub fn contains(&self, row: Row) -> bool {
        self.reduce(row).is_empty()
    }

    /// Coefficients `λ_i` over inserted rows with `Σ λ_i r_i = row`, or
    /// `None` if `row` is outside the span. Requires tracking.
    pub fn express(&self, row: Row) -> Option<BTreeMap<usize, Rational>> {
        assert!(self.track, "express needs a tracked echelon");
        let (rest, used) = self.reduce_inner(row);
        rest.is_empty().then_some(used)
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, row: Row) -> bool {
        let index = self.inserted;
        self.inserted += 1;
        let (mut rest, used) = self.reduce_inner(row);
        let Some((&lead, lead_val)) = rest.iter().next() else {
            return false;
        };
        let inv = lead_val.recip();
        for v in rest.values_mut() {
            *v *= &inv;
        }
        let combo = self.track.then(|| {
            // rest = original - Σ used ; scaled by inv
            let mut c: BTreeMap<usize, Rational> = used.into_iter().map(|(i, v)| (i, -v * &inv)).collect();
            c.insert(index, inv.clone());
            c.retain(|_, v| !v.is_zero());
            c
        });
        self.pivots.insert(lead, PivotRow { row: rest, combo });
        true
    }
}

impl Default for Echelon {
    fn default() -> Self {
        Echelon::new()
    }
}

pub fn rank_of_rows(rows: impl IntoIterator<Item = Row>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Rank of a dense matrix given as rows.
pub fn dense_rank(rows: &[Vec<Rational>]) -> usize {
    rank_of_rows(rows.iter().map(|r| dense_to_row(r)))
}

pub fn dense_to_row(r: &[Rational]) -> Row {
    r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i as u64, v.clone())).collect()
}

/// Gauss-Jordan inverse and determinant of a square matrix.
pub fn invert(matrix: &[Vec<Rational>]) -> Result<(Vec<Vec<Rational>>, Rational)> {
    let n = matrix.len();
    if matrix.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidParameter("matrix is not square".into()));
    }
    let mut a: Vec<Vec<Rational>> = matrix.to_vec();
    let mut inv: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
    let mut det = Rational::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
        if pivot != col {
            a.swap(pivot, col);
            inv.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        let pinv = p.recip();
        for j in 0..n {
            a[col][j] *= &pinv;
            inv[col][j] *= &pinv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let (da, di) = (&f * &a[col][j], &f * &inv[col][j]);
                a[r][j] -= da;
                inv[r][j] -= di;
            }
        }
    }
    Ok((inv, det))
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).fold(Rational::zero(), |acc, k| acc + &row[k] * &b[k][j])).collect())
        .collect()
}

pub fn is_identity(m: &[Vec<Rational>]) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.len() == m.len() && row.iter().enumerate().all(|(j, v)| if i == j { v.is_one() } else { v.is_zero() })
    })
}
