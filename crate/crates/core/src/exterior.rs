//! Exterior algebra `Λ(E)` over the rationals, with monomials `e_S` indexed
//! by subsets of element ids and written in increasing id order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::subset::Subset;

pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Sign of `e_a ∧ e_b` relative to `e_{a ∪ b}`, or `None` when the product
/// vanishes.
pub fn wedge_sign(a: Subset, b: Subset) -> Option<i32> {
    if !a.is_disjoint(b) {
        return None;
    }
    let inversions: usize = b.iter().map(|x| a.count_above(x)).sum();
    Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
}

/// Finite rational combination of exterior monomials.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ExteriorElement {
    terms: BTreeMap<Subset, Rational>,
}

impl ExteriorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Subset::EMPTY, Rational::one())
    }

    /// The degree-one generator `e_id`.
    pub fn generator(id: usize) -> Self {
        Self::monomial(Subset::singleton(id), Rational::one())
    }

    pub fn monomial(s: Subset, coeff: Rational) -> Self {
        let mut x = Self::zero();
        x.add_term(s, coeff);
        x
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Subset, Rational)>) -> Self {
        let mut x = Self::zero();
        for (s, c) in terms {
            x.add_term(s, c);
        }
        x
    }

    pub fn add_term(&mut self, s: Subset, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(s) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Subset, &Rational)> {
        self.terms.iter().map(|(&s, c)| (s, c))
    }

    pub fn into_terms(self) -> BTreeMap<Subset, Rational> {
        self.terms
    }

    pub fn coeff(&self, s: Subset) -> Rational {
        self.terms.get(&s).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Union of all monomial supports.
    pub fn support(&self) -> Subset {
        self.terms.keys().fold(Subset::EMPTY, |acc, &s| acc.union(s))
    }

    /// The degree when every term has the same degree; `None` for zero or
    /// mixed elements.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|s| s.len());
        let d = degrees.next()?;
        degrees.all(|x| x == d).then_some(d)
    }

    pub fn by_degree(&self) -> BTreeMap<usize, ExteriorElement> {
        let mut out: BTreeMap<usize, ExteriorElement> = BTreeMap::new();
        for (&s, c) in &self.terms {
            out.entry(s.len()).or_default().add_term(s, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ExteriorElement { terms: self.terms.iter().map(|(&s, x)| (s, x * c)).collect() }
    }

    pub fn wedge(&self, other: &ExteriorElement) -> ExteriorElement {
        let mut out = ExteriorElement::zero();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                if let Some(sign) = wedge_sign(a, b) {
                    let c = ca * cb;
                    out.add_term(a.union(b), if sign < 0 { -c } else { c });
                }
            }
        }
        out
    }

    /// `∂(e_1 ⋯ e_k) = Σ (-1)^(i-1) e_1 ⋯ ê_i ⋯ e_k`, extended linearly.
    pub fn boundary(&self) -> ExteriorElement {
        let mut out = ExteriorElement::zero();
        for (&s, c) in &self.terms {
            for (pos, id) in s.iter().enumerate() {
                let c = c.clone();
                out.add_term(s.without(id), if pos % 2 == 0 { c } else { -c });
            }
        }
        out
    }

    /// Renders terms with the given labels, e.g. `e[2,3] - e[1,3]`.
    pub fn display_with<S: AsRef<str>>(&self, labels: &[S]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (&s, c)) in self.terms.iter().enumerate() {
            let mono = format!(
                "e[{}]",
                s.iter().map(|id| labels.get(id).map_or("?", |l| l.as_ref())).collect::<Vec<_>>().join(",")
            );
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !abs.is_one() {
                out.push_str(&format!("{abs}*"));
            }
            out.push_str(&mono);
        }
        out
    }
}

/// `∂` of the monomial on `s`.
pub fn boundary_of_set(s: Subset) -> ExteriorElement {
    ExteriorElement::monomial(s, Rational::one()).boundary()
}

impl fmt::Debug for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (0..64).map(|i| i.to_string()).collect();
        f.write_str(&self.display_with(&labels))
    }
}

impl Add for &ExteriorElement {
    type Output = ExteriorElement;
    fn add(self, rhs: &ExteriorElement) -> ExteriorElement {
        let mut out = self.clone();
        for (&s, c) in &rhs.terms {
            out.add_term(s, c.clone());
        }
        out
    }
}

impl Add for ExteriorElement {
    type Output = ExteriorElement;
    fn add(self, rhs: ExteriorElement) -> ExteriorElement {
        &self + &rhs
    }
}

impl Neg for &ExteriorElement {
    type Output = ExteriorElement;
    fn neg(self) -> ExteriorElement {
        ExteriorElement { terms: self.terms.iter().map(|(&s, c)| (s, -c)).collect() }
    }
}

impl Sub for &ExteriorElement {
    type Output = ExteriorElement;
    fn sub(self, rhs: &ExteriorElement) -> ExteriorElement {
        self + &(-rhs)
    }
}

impl Sub for ExteriorElement {
    type Output = ExteriorElement;
    fn sub(self, rhs: ExteriorElement) -> ExteriorElement {
        &self - &rhs
    }
}

impl Mul for &ExteriorElement {
    type Output = ExteriorElement;
    fn mul(self, rhs: &ExteriorElement) -> ExteriorElement {
        self.wedge(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(ids: &[usize]) -> ExteriorElement {
        ExteriorElement::monomial(Subset::from_ids(ids.iter().copied()), Rational::one())
    }

    #[test]
    fn boundary_small_cases() {
        assert_eq!(e(&[1, 2]).boundary(), &e(&[2]) - &e(&[1]));
        let d3 = e(&[1, 2, 3]).boundary();
        assert_eq!(d3, &(&e(&[2, 3]) - &e(&[1, 3])) + &e(&[1, 2]));
        assert!(d3.boundary().is_zero());
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(&e(&[2]) * &e(&[1]), -&e(&[1, 2]));
        assert!((&e(&[1]) * &e(&[1])).is_zero());
        assert_eq!(&e(&[1, 3]) * &e(&[2]), -&e(&[1, 2, 3]));
        assert_eq!(&e(&[3]) * &e(&[1, 2]), e(&[1, 2, 3]));
        let a = &e(&[0]) + &e(&[1]);
        assert!((&a * &a).is_zero());
    }

    #[test]
    fn degree_helpers() {
        let x = &e(&[0, 1]) + &e(&[2]);
        assert_eq!(x.homogeneous_degree(), None);
        assert_eq!(x.by_degree().len(), 2);
        assert_eq!(e(&[4, 5]).homogeneous_degree(), Some(2));
        assert_eq!(x.display_with(&["a", "b", "c"]), "e[a,b] + e[c]");
    }
}
