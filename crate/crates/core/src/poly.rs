//! Integer polynomials in `x, y` (Tutte) and in `t` (characteristic,
//! Poincaré).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Sparse polynomial in `x, y` with integer coefficients, keyed by
/// `(deg_x, deg_y)`. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), i64>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn monomial(coeff: i64, dx: u32, dy: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(dx, dy, coeff);
        p
    }

    /// `x^a y^b`.
    pub fn x_pow_y_pow(a: u32, b: u32) -> Self {
        Self::monomial(1, a, b)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), i64)>) -> Self {
        let mut p = Self::zero();
        for ((dx, dy), c) in terms {
            p.add_term(dx, dy, c);
        }
        p
    }

    pub fn add_term(&mut self, dx: u32, dy: u32, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry((dx, dy)).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&(dx, dy));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn coeff(&self, dx: u32, dy: u32) -> i64 {
        self.terms.get(&(dx, dy)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.terms.iter().map(|(&(dx, dy), &c)| c * x.pow(dx) * y.pow(dy)).sum()
    }

    /// Drops every term with a positive power of `y`; the rest as a
    /// polynomial in `x`.
    pub fn at_y_zero(&self) -> UnivariatePolynomial {
        let mut coeffs = Vec::new();
        for (&(dx, dy), &c) in &self.terms {
            if dy == 0 {
                let i = dx as usize;
                if coeffs.len() <= i {
                    coeffs.resize(i + 1, 0);
                }
                coeffs[i] += c;
            }
        }
        UnivariatePolynomial::new(coeffs)
    }

    /// Terms in display order: total degree descending, then `x`-degree
    /// descending.
    fn display_order(&self) -> Vec<((u32, u32), i64)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|a, b| {
            let (ka, kb) = (a.0, b.0);
            (kb.0 + kb.1).cmp(&(ka.0 + ka.1)).then(kb.0.cmp(&ka.0))
        });
        v
    }
}

fn write_signed_terms<I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (i64, String)>,
{
    let mut first = true;
    for (c, mono) in terms {
        let sign = if c < 0 { "-" } else { "+" };
        if first {
            if c < 0 {
                f.write_str("-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        first = false;
        let a = c.unsigned_abs();
        match (a, mono.is_empty()) {
            (_, true) => write!(f, "{a}")?,
            (1, false) => f.write_str(&mono)?,
            _ => write!(f, "{a}*{mono}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

fn power(var: &str, d: u32) -> Option<String> {
    match d {
        0 => None,
        1 => Some(var.to_owned()),
        _ => Some(format!("{var}^{d}")),
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_terms(
            f,
            self.display_order().into_iter().map(|((dx, dy), c)| {
                let parts: Vec<String> = [power("x", dx), power("y", dy)].into_iter().flatten().collect();
                (c, parts.join("*"))
            }),
        )
    }
}

impl fmt::Debug for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl AddAssign<&BivariatePolynomial> for BivariatePolynomial {
    fn add_assign(&mut self, rhs: &BivariatePolynomial) {
        for (&(dx, dy), &c) in &rhs.terms {
            self.add_term(dx, dy, c);
        }
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(mut self, rhs: BivariatePolynomial) -> BivariatePolynomial {
        self += &rhs;
        self
    }
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        BivariatePolynomial { terms: self.terms.iter().map(|(&k, &c)| (k, -c)).collect() }
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        self + &(-rhs)
    }
}

impl Sub for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: BivariatePolynomial) -> BivariatePolynomial {
        &self - &rhs
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero();
        for (&(ax, ay), &ac) in &self.terms {
            for (&(bx, by), &bc) in &rhs.terms {
                out.add_term(ax + bx, ay + by, ac * bc);
            }
        }
        out
    }
}

impl Mul for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: BivariatePolynomial) -> BivariatePolynomial {
        &self * &rhs
    }
}

/// Dense integer polynomial in one variable, ascending coefficients, no
/// trailing zeros.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct UnivariatePolynomial {
    coeffs: Vec<i64>,
}

impl UnivariatePolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UnivariatePolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    /// Coefficients padded with zeros to `len` entries.
    pub fn padded(&self, len: usize) -> Vec<i64> {
        let mut v = self.coeffs.clone();
        v.resize(len.max(v.len()), 0);
        v
    }

    pub fn display_in(&self, var: &str) -> String {
        struct D<'a>(&'a UnivariatePolynomial, &'a str);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_signed_terms(
                    f,
                    self.0
                        .coeffs
                        .iter()
                        .enumerate()
                        .rev()
                        .filter(|(_, &c)| c != 0)
                        .map(|(i, &c)| (c, power(self.1, i as u32).unwrap_or_default())),
                )
            }
        }
        D(self, var).to_string()
    }
}

impl Mul for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn mul(self, rhs: &UnivariatePolynomial) -> UnivariatePolynomial {
        if self.is_zero() || rhs.is_zero() {
            return UnivariatePolynomial::default();
        }
        let mut out = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UnivariatePolynomial::new(out)
    }
}

impl fmt::Display for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

impl fmt::Debug for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
