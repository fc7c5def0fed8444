//! Matroids represented by their circuits.
//!
//! Every construction in the crate produces a circuit list; rank and
//! independence are derived from it. Element ids are contiguous from zero and
//! subsets are bit masks over those ids (see [`Subset`]).

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::subset::{Subset, MAX_ELEMENTS};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    pub id: usize,
    pub label: String,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matroid {
    ground: Vec<Element>,
    /// Sorted by mask; no duplicates.
    circuits: Vec<Subset>,
}

/// A failed circuit axiom, reported with labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `smaller` is a proper subset of `larger`.
    Containment { smaller: Vec<String>, larger: Vec<String> },
    /// No circuit lies inside `(first ∪ second) − element`.
    Elimination { first: Vec<String>, second: Vec<String>, element: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub antichain: bool,
    pub elimination: bool,
    pub violation: Option<AxiomViolation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.antichain && self.elimination
    }
}

impl Matroid {
    /// Builds a matroid from labels and circuits over ids `0..labels.len()`.
    ///
    /// Only structural problems are rejected here (duplicate labels, empty or
    /// repeated circuits, out-of-range ids). The circuit axioms are checked by
    /// [`Matroid::validate`].
    pub fn from_circuits<S, I>(labels: I, circuits: impl IntoIterator<Item = Subset>) -> Result<Self>
    where
        S: Into<String>,
        I: IntoIterator<Item = S>,
    {
        let ground: Vec<Element> =
            labels.into_iter().enumerate().map(|(id, l)| Element { id, label: l.into() }).collect();
        if ground.len() > MAX_ELEMENTS {
            return Err(Error::SizeGuard { size: ground.len(), limit: MAX_ELEMENTS });
        }
        let mut seen = HashSet::new();
        for e in &ground {
            if !seen.insert(e.label.as_str()) {
                return Err(Error::DuplicateLabel(e.label.clone()));
            }
        }
        let full = Subset::full(ground.len());
        let mut set = BTreeSet::new();
        for c in circuits {
            if c.is_empty() {
                return Err(Error::EmptyCircuit);
            }
            if !c.is_subset_of(full) {
                let bad = c.difference(full).min().unwrap_or_default();
                return Err(Error::UnknownElement(format!("#{bad}")));
            }
            if !set.insert(c) {
                let labels = c.iter().map(|id| ground[id].label.clone()).collect();
                return Err(Error::DuplicateCircuit(labels));
            }
        }
        Ok(Matroid { ground, circuits: set.into_iter().collect() })
    }

    /// Builds a matroid from labels and circuits written as label lists.
    pub fn from_labeled<S: AsRef<str>>(labels: &[S], circuits: &[Vec<S>]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_owned()).collect();
        let mut sets = Vec::with_capacity(circuits.len());
        for c in circuits {
            let mut set = Subset::EMPTY;
            for l in c {
                let id = labels
                    .iter()
                    .position(|x| x == l.as_ref())
                    .ok_or_else(|| Error::UnknownElement(l.as_ref().to_owned()))?;
                if set.contains(id) {
                    return Err(Error::DuplicateLabel(l.as_ref().to_owned()));
                }
                set = set.with(id);
            }
            sets.push(set);
        }
        Matroid::from_circuits(labels, sets)
    }

    /// The free matroid (no circuits) on the given labels.
    pub fn free<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        Matroid::from_circuits(labels, [])
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn ground(&self) -> &[Element] {
        &self.ground
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.ground.iter().map(|e| e.label.as_str())
    }

    pub fn label(&self, id: usize) -> &str {
        &self.ground[id].label
    }

    pub fn circuits(&self) -> &[Subset] {
        &self.circuits
    }

    pub fn full_set(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn id_of(&self, label: &str) -> Option<usize> {
        self.ground.iter().position(|e| e.label == label)
    }

    pub fn require_id(&self, label: &str) -> Result<usize> {
        self.id_of(label).ok_or_else(|| Error::UnknownElement(label.to_owned()))
    }

    pub fn subset_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subset> {
        labels.iter().map(|l| self.require_id(l.as_ref())).collect()
    }

    pub fn labels_of(&self, s: Subset) -> Vec<String> {
        s.iter().map(|id| self.ground[id].label.clone()).collect()
    }

    fn check_subset(&self, s: Subset) -> Result<()> {
        match s.difference(self.full_set()).min() {
            Some(bad) => Err(Error::UnknownElement(format!("#{bad}"))),
            None => Ok(()),
        }
    }

    fn check_id(&self, id: usize) -> Result<()> {
        if id < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownElement(format!("#{id}")))
        }
    }

    /// Checks the antichain and circuit-elimination axioms.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport { antichain: true, elimination: true, violation: None };
        for (i, &a) in self.circuits.iter().enumerate() {
            for &b in &self.circuits[i + 1..] {
                let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
                if small.is_subset_of(large) {
                    report.antichain = false;
                    report.violation.get_or_insert(AxiomViolation::Containment {
                        smaller: self.labels_of(small),
                        larger: self.labels_of(large),
                    });
                }
            }
        }
        for (i, &a) in self.circuits.iter().enumerate() {
            for &b in &self.circuits[i + 1..] {
                for e in a.intersection(b).iter() {
                    let room = a.union(b).without(e);
                    if !self.circuits.iter().any(|c| c.is_subset_of(room)) {
                        report.elimination = false;
                        report.violation.get_or_insert(AxiomViolation::Elimination {
                            first: self.labels_of(a),
                            second: self.labels_of(b),
                            element: self.ground[e].label.clone(),
                        });
                    }
                }
            }
        }
        report
    }

    /// True iff no circuit is contained in `s`.
    pub fn is_independent(&self, s: Subset) -> Result<bool> {
        self.check_subset(s)?;
        Ok(!self.circuits.iter().any(|c| c.is_subset_of(s)))
    }

    /// Greedy rank: scan `s` in id order, keeping each element that does not
    /// close a circuit with the elements kept so far.
    pub fn rank_of(&self, s: Subset) -> Result<usize> {
        self.check_subset(s)?;
        Ok(self.rank_unchecked(s))
    }

    pub(crate) fn rank_unchecked(&self, s: Subset) -> usize {
        let mut basis = Subset::EMPTY;
        for e in s.iter() {
            let candidate = basis.with(e);
            if !self.circuits.iter().any(|c| c.contains(e) && c.is_subset_of(candidate)) {
                basis = candidate;
            }
        }
        basis.len()
    }

    pub fn rank(&self) -> usize {
        self.rank_unchecked(self.full_set())
    }

    /// `cl(s)`: every element whose addition does not raise the rank.
    pub fn closure(&self, s: Subset) -> Subset {
        let r = self.rank_unchecked(s);
        (0..self.len()).filter(|&e| s.contains(e) || self.rank_unchecked(s.with(e)) == r).collect()
    }

    pub fn is_loop(&self, id: usize) -> Result<bool> {
        self.check_id(id)?;
        Ok(self.circuits.iter().any(|&c| c == Subset::singleton(id)))
    }

    /// True iff the element lies in no circuit (a coloop).
    pub fn is_isthmus(&self, id: usize) -> Result<bool> {
        self.check_id(id)?;
        Ok(!self.circuits.iter().any(|c| c.contains(id)))
    }

    fn rebuild(&self, removed: usize, circuits: impl IntoIterator<Item = Subset>) -> Matroid {
        let ground = self
            .ground
            .iter()
            .filter(|e| e.id != removed)
            .enumerate()
            .map(|(id, e)| Element { id, label: e.label.clone() })
            .collect();
        let mut circuits: Vec<Subset> = circuits.into_iter().map(|c| c.squeeze_out(removed)).collect();
        circuits.sort_unstable();
        circuits.dedup();
        Matroid { ground, circuits }
    }

    /// `M∖e`: the circuits avoiding `e`.
    pub fn delete(&self, id: usize) -> Result<Matroid> {
        self.check_id(id)?;
        Ok(self.rebuild(id, self.circuits.iter().copied().filter(|c| !c.contains(id))))
    }

    /// `M/e`: the minimal nonempty sets among `C − e`.
    pub fn contract(&self, id: usize) -> Result<Matroid> {
        self.check_id(id)?;
        let residues = minimal_sets(self.circuits.iter().map(|c| c.without(id)).filter(|c| !c.is_empty()));
        Ok(self.rebuild(id, residues))
    }

    pub fn delete_label(&self, label: &str) -> Result<Matroid> {
        self.delete(self.require_id(label)?)
    }

    pub fn contract_label(&self, label: &str) -> Result<Matroid> {
        self.contract(self.require_id(label)?)
    }

    /// `M|s`: the circuits inside `s`, with ids renumbered in order.
    pub fn restrict(&self, s: Subset) -> Result<Matroid> {
        self.check_subset(s)?;
        let mut map = vec![usize::MAX; self.len()];
        let mut labels = Vec::with_capacity(s.len());
        for (new, old) in s.iter().enumerate() {
            map[old] = new;
            labels.push(self.ground[old].label.clone());
        }
        let circuits = self.circuits.iter().filter(|c| c.is_subset_of(s)).map(|c| c.map_ids(&map));
        Matroid::from_circuits(labels, circuits)
    }

    /// Tutte's criterion: every pair of distinct elements lies on a common
    /// circuit. A single element is connected unless it is a loop.
    pub fn is_connected(&self) -> Result<bool> {
        match self.len() {
            0 => Err(Error::EmptyGround),
            1 => Ok(!self.is_loop(0)?),
            _ => {
                let full = self.full_set();
                Ok((0..self.len()).all(|e| {
                    let reach =
                        self.circuits.iter().filter(|c| c.contains(e)).fold(Subset::EMPTY, |acc, &c| acc.union(c));
                    reach == full
                }))
            }
        }
    }

    /// No loops and no parallel pairs.
    pub fn is_simple(&self) -> bool {
        self.circuits.iter().all(|c| c.len() > 2)
    }

    pub fn longest_circuit(&self) -> Result<usize> {
        self.circuits.iter().map(|c| c.len()).max().ok_or(Error::NoCircuits)
    }

    /// Renames every element; ids and circuits are unchanged.
    pub fn relabel(&self, f: impl Fn(&str) -> String) -> Result<Matroid> {
        Matroid::from_circuits(self.ground.iter().map(|e| f(&e.label)), self.circuits.iter().copied())
    }

    /// Circuits as label sets, independent of id order.
    pub fn labeled_circuits(&self) -> BTreeSet<BTreeSet<String>> {
        self.circuits.iter().map(|&c| c.iter().map(|id| self.ground[id].label.clone()).collect()).collect()
    }

    /// Equality as labeled matroids: same labels, same circuits, any id order.
    pub fn same_labeled(&self, other: &Matroid) -> bool {
        let a: BTreeSet<&str> = self.labels().collect();
        let b: BTreeSet<&str> = other.labels().collect();
        a == b && self.labeled_circuits() == other.labeled_circuits()
    }
}

/// Keeps the inclusion-minimal members, sorted and deduplicated.
pub(crate) fn minimal_sets(sets: impl IntoIterator<Item = Subset>) -> Vec<Subset> {
    let mut all: Vec<Subset> = sets.into_iter().collect();
    all.sort_unstable_by_key(|s| (s.len(), *s));
    all.dedup();
    let mut kept: Vec<Subset> = Vec::with_capacity(all.len());
    for s in all {
        if !kept.iter().any(|k| k.is_subset_of(s)) {
            kept.push(s);
        }
    }
    kept.sort_unstable();
    kept
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let circuits: Vec<Vec<&str>> =
            self.circuits.iter().map(|c| c.iter().map(|id| self.ground[id].label.as_str()).collect()).collect();
        f.debug_struct("Matroid")
            .field("ground", &self.labels().collect::<Vec<_>>())
            .field("circuits", &circuits)
            .finish()
    }
}
