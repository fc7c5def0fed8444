use std::fmt;

/// Subset of a ground set of at most 64 elements, stored as a bit mask keyed
/// by element id.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(u64);

pub const MAX_ELEMENTS: usize = 64;

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(id: usize) -> Self {
        debug_assert!(id < MAX_ELEMENTS);
        Subset(1 << id)
    }

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        if n == MAX_ELEMENTS {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn from_ids<I: IntoIterator<Item = usize>>(ids: I) -> Self {
        ids.into_iter().fold(Subset::EMPTY, |s, id| s.with(id))
    }

    pub fn contains(self, id: usize) -> bool {
        id < MAX_ELEMENTS && self.0 >> id & 1 == 1
    }

    #[must_use]
    pub fn with(self, id: usize) -> Self {
        Subset(self.0 | 1 << id)
    }

    #[must_use]
    pub fn without(self, id: usize) -> Self {
        Subset(self.0 & !(1 << id))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    #[must_use]
    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    #[must_use]
    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    #[must_use]
    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// Number of members strictly greater than `id`.
    pub fn count_above(self, id: usize) -> usize {
        if id >= 63 {
            0
        } else {
            (self.0 >> (id + 1)).count_ones() as usize
        }
    }

    /// Ids in increasing order.
    pub fn iter(self) -> SubsetIter {
        SubsetIter(self.0)
    }

    /// Removes the id slot `id` and shifts every higher id down by one. Used
    /// when an element leaves the ground set so ids stay contiguous.
    #[must_use]
    pub fn squeeze_out(self, id: usize) -> Self {
        let low = self.0 & ((1u64 << id) - 1);
        let high = if id >= 63 { 0 } else { (self.0 >> (id + 1)) << id };
        Subset(low | high)
    }

    /// Applies an id map (`map[old] = new`) to every member.
    pub fn map_ids(self, map: &[usize]) -> Self {
        self.iter().fold(Subset::EMPTY, |s, id| s.with(map[id]))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Subset::from_ids(iter)
    }
}

pub struct SubsetIter(u64);

impl Iterator for SubsetIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let id = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(id)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for SubsetIter {}

/// All `k`-element subsets of `{0..n}` in increasing mask order.
pub fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = Subset> {
    debug_assert!(n < MAX_ELEMENTS);
    let limit = 1u64 << n;
    let mut next = if k > n {
        None
    } else if k == 0 {
        Some(0u64)
    } else {
        Some((1u64 << k) - 1)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let n2 = (((r ^ cur) >> 2) / c) | r;
            (n2 < limit).then_some(n2)
        };
        Some(Subset(cur))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squeeze_shifts_high_ids() {
        let s = Subset::from_ids([0, 2, 5]);
        assert_eq!(s.squeeze_out(2), Subset::from_ids([0, 4]));
        assert_eq!(s.squeeze_out(1), Subset::from_ids([0, 1, 4]));
    }

    #[test]
    fn fixed_size_enumeration_counts_binomials() {
        assert_eq!(subsets_of_size(6, 3).count(), 20);
        assert_eq!(subsets_of_size(5, 0).collect::<Vec<_>>(), vec![Subset::EMPTY]);
        assert_eq!(subsets_of_size(4, 5).count(), 0);
        assert!(subsets_of_size(7, 3).all(|s| s.len() == 3 && s.is_subset_of(Subset::full(7))));
        let v: Vec<_> = subsets_of_size(6, 2).collect();
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn count_above_matches_iteration() {
        let s = Subset::from_ids([1, 3, 4, 9]);
        for id in 0..12 {
            assert_eq!(s.count_above(id), s.iter().filter(|&x| x > id).count());
        }
    }
}
