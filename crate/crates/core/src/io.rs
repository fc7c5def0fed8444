//! JSON documents for matroids, graphs, polynomials, exterior elements,
//! arrangements and sparse matrices. Elements are referred to by label and
//! rationals are written as `"p/q"` strings unless noted.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, LinearForm, MultiPoly};
use crate::constructions::{Edge, FamilySpec, Graph};
use crate::error::{Error, Result};
use crate::exterior::{ExteriorElement, Rational};
use crate::matroid::Matroid;
use crate::poly::{BivariatePolynomial, UnivariatePolynomial};
use crate::SCHEMA_VERSION;

fn schema() -> Option<u32> {
    Some(SCHEMA_VERSION)
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Malformed(format!("not a rational: `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => {
            (a.trim().parse::<BigInt>().map_err(|_| bad())?, b.trim().parse::<BigInt>().map_err(|_| bad())?)
        }
        None => (s.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub ground: Vec<String>,
    pub circuits: Vec<Vec<String>>,
}

impl MatroidJson {
    pub fn from_matroid(m: &Matroid) -> Self {
        MatroidJson {
            schema_version: schema(),
            ground: m.labels().map(str::to_owned).collect(),
            circuits: m.circuits().iter().map(|&c| m.labels_of(c)).collect(),
        }
    }

    /// Rejects repeated circuits; everything else is checked by
    /// [`Matroid::from_labeled`].
    pub fn to_matroid(&self) -> Result<Matroid> {
        let mut seen = BTreeSet::new();
        for c in &self.circuits {
            let key: BTreeSet<&String> = c.iter().collect();
            if key.len() != c.len() {
                return Err(Error::Malformed(format!("circuit {c:?} repeats an element")));
            }
            if !seen.insert(key) {
                return Err(Error::DuplicateCircuit(c.clone()));
            }
        }
        Matroid::from_labeled(&self.ground, &self.circuits)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub label: String,
    pub ends: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
}

impl GraphJson {
    pub fn from_graph(g: &Graph) -> Self {
        GraphJson {
            schema_version: schema(),
            vertices: g.vertices().to_vec(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeJson { label: e.label.clone(), ends: [e.ends.0.clone(), e.ends.1.clone()] })
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { label: e.label.clone(), ends: (e.ends[0].clone(), e.ends[1].clone()) })
            .collect();
        Graph::new(self.vertices.clone(), edges)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpecJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub seed: MatroidJson,
    pub basepoint: String,
    pub n: usize,
}

impl FamilySpecJson {
    pub fn from_spec(spec: &FamilySpec) -> Self {
        FamilySpecJson {
            schema_version: schema(),
            seed: MatroidJson::from_matroid(spec.seed()),
            basepoint: spec.basepoint().to_owned(),
            n: spec.n(),
        }
    }

    pub fn to_spec(&self) -> Result<FamilySpec> {
        FamilySpec::new(self.seed.to_matroid()?, self.basepoint.clone(), self.n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialTermJson {
    pub x: u32,
    pub y: u32,
    pub c: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub terms: Vec<MonomialTermJson>,
    pub pretty: String,
}

impl PolynomialJson {
    pub fn from_poly(p: &BivariatePolynomial) -> Self {
        PolynomialJson {
            schema_version: schema(),
            terms: p.terms().map(|((x, y), c)| MonomialTermJson { x, y, c }).collect(),
            pretty: p.to_string(),
        }
    }

    pub fn to_poly(&self) -> BivariatePolynomial {
        BivariatePolynomial::from_terms(self.terms.iter().map(|t| ((t.x, t.y), t.c)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnivariateJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    /// Ascending coefficients.
    pub coeffs: Vec<i64>,
    pub pretty: String,
}

impl UnivariateJson {
    pub fn from_poly(p: &UnivariatePolynomial) -> Self {
        UnivariateJson { schema_version: schema(), coeffs: p.coeffs().to_vec(), pretty: p.to_string() }
    }

    pub fn to_poly(&self) -> UnivariatePolynomial {
        UnivariatePolynomial::new(self.coeffs.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExteriorTermJson {
    pub monomial: Vec<String>,
    pub num: i64,
    pub den: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExteriorElementJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub terms: Vec<ExteriorTermJson>,
}

impl ExteriorElementJson {
    pub fn from_element(m: &Matroid, x: &ExteriorElement) -> Result<Self> {
        let terms = x
            .terms()
            .map(|(s, c)| {
                let overflow = || Error::Malformed(format!("coefficient {c} does not fit in 64 bits"));
                Ok(ExteriorTermJson {
                    monomial: m.labels_of(s),
                    num: c.numer().to_i64().ok_or_else(overflow)?,
                    den: c.denom().to_i64().ok_or_else(overflow)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(ExteriorElementJson { schema_version: schema(), terms })
    }

    /// Monomials may list labels in any order; the sign of the reordering is
    /// applied.
    pub fn to_element(&self, m: &Matroid) -> Result<ExteriorElement> {
        let mut out = ExteriorElement::zero();
        for t in &self.terms {
            if t.den == 0 {
                return Err(Error::Malformed("zero denominator".into()));
            }
            let mut mono = ExteriorElement::one();
            for l in &t.monomial {
                mono = mono.wedge(&ExteriorElement::generator(m.require_id(l)?));
            }
            out = &out + &mono.scale(&Rational::new(t.num.into(), t.den.into()));
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearFormJson {
    pub coeffs: BTreeMap<String, String>,
    #[serde(rename = "const", default = "zero_string")]
    pub constant: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

fn zero_string() -> String {
    "0".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub variables: Vec<String>,
    pub forms: Vec<LinearFormJson>,
}

impl ArrangementJson {
    pub fn from_arrangement(a: &Arrangement) -> Self {
        ArrangementJson {
            schema_version: schema(),
            variables: a.variables().to_vec(),
            forms: a
                .forms()
                .iter()
                .map(|f| LinearFormJson {
                    coeffs: f.coeffs().iter().map(|(v, c)| (v.clone(), format_rational(c))).collect(),
                    constant: format_rational(f.constant()),
                    label: f.label().map(str::to_owned),
                })
                .collect(),
        }
    }

    pub fn to_arrangement(&self) -> Result<Arrangement> {
        let forms = self
            .forms
            .iter()
            .map(|f| {
                let coeffs = f
                    .coeffs
                    .iter()
                    .map(|(v, c)| Ok((v.clone(), parse_rational(c)?)))
                    .collect::<Result<BTreeMap<_, _>>>()?;
                LinearForm::new(coeffs, parse_rational(&f.constant)?, f.label.clone())
            })
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(self.variables.clone(), forms)
    }
}

/// One monomial as an exponent vector over `MultiPolyJson::variables`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentTermJson {
    pub exponents: Vec<u32>,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiPolyJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub variables: Vec<String>,
    pub terms: Vec<ExponentTermJson>,
    pub pretty: String,
}

impl MultiPolyJson {
    pub fn from_poly(p: &MultiPoly, variables: &[String]) -> Result<Self> {
        let terms = p
            .exponent_vectors(variables)?
            .into_iter()
            .map(|(exponents, c)| ExponentTermJson { exponents, c: format_rational(&c) })
            .collect();
        Ok(MultiPolyJson { schema_version: schema(), variables: variables.to_vec(), terms, pretty: p.to_string() })
    }

    pub fn to_poly(&self) -> Result<MultiPoly> {
        let mut p = MultiPoly::zero();
        for t in &self.terms {
            if t.exponents.len() != self.variables.len() {
                return Err(Error::Malformed(format!("exponent vector {:?} has the wrong length", t.exponents)));
            }
            let mono: BTreeMap<String, u32> =
                self.variables.iter().zip(&t.exponents).filter(|(_, &e)| e > 0).map(|(v, &e)| (v.clone(), e)).collect();
            p.add_term(mono, parse_rational(&t.c)?);
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripletJson {
    pub row: usize,
    pub col: usize,
    pub value: String,
}

/// Sparse matrix as `(row, col, value)` triplets, zero entries omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseMatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<TripletJson>,
}

impl SparseMatrixJson {
    pub fn from_dense(m: &[Vec<Rational>], cols: usize) -> Self {
        let entries = m
            .iter()
            .enumerate()
            .flat_map(|(r, row)| {
                row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(c, v)| TripletJson {
                    row: r,
                    col: c,
                    value: format_rational(v),
                })
            })
            .collect();
        SparseMatrixJson { rows: m.len(), cols, entries }
    }

    pub fn from_columns(rows: usize, columns: &[BTreeMap<usize, Rational>]) -> Self {
        let mut entries: Vec<TripletJson> = columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| {
                col.iter().map(move |(&r, v)| TripletJson { row: r, col: c, value: format_rational(v) })
            })
            .collect();
        entries.sort_by_key(|t| (t.row, t.col));
        SparseMatrixJson { rows, cols: columns.len(), entries }
    }

    pub fn to_dense(&self) -> Result<Vec<Vec<Rational>>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for t in &self.entries {
            if t.row >= self.rows || t.col >= self.cols {
                return Err(Error::Malformed(format!(
                    "entry ({}, {}) outside {}x{}",
                    t.row, t.col, self.rows, self.cols
                )));
            }
            out[t.row][t.col] = parse_rational(&t.value)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete_graph, cycle_matroid};
    use crate::exterior::rational;

    #[test]
    fn rationals_round_trip() {
        for s in ["0", "3", "-7/2", "1/3"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("4/2").unwrap(), rational(2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn matroid_round_trip_and_duplicates() {
        let c4 = cycle_matroid(4).unwrap();
        let j = MatroidJson::from_matroid(&c4);
        let text = serde_json::to_string(&j).unwrap();
        let back: MatroidJson = serde_json::from_str(&text).unwrap();
        assert!(back.to_matroid().unwrap().same_labeled(&c4));
        let dup = MatroidJson {
            schema_version: None,
            ground: vec!["a".into(), "b".into()],
            circuits: vec![vec!["a".into(), "b".into()], vec!["b".into(), "a".into()]],
        };
        assert!(matches!(dup.to_matroid(), Err(Error::DuplicateCircuit(_))));
    }

    #[test]
    fn graph_and_exterior_round_trip() {
        let k4 = complete_graph(4).unwrap();
        assert_eq!(GraphJson::from_graph(&k4).to_graph().unwrap().edges(), k4.edges());
        let c3 = cycle_matroid(3).unwrap();
        let x = crate::os_algebra::os_ideal_generators(&c3).remove(0);
        let j = ExteriorElementJson::from_element(&c3, &x).unwrap();
        assert_eq!(j.to_element(&c3).unwrap(), x);
        let swapped = ExteriorElementJson {
            schema_version: None,
            terms: vec![ExteriorTermJson { monomial: vec!["2".into(), "1".into()], num: 1, den: 1 }],
        };
        assert_eq!(
            swapped.to_element(&c3).unwrap(),
            ExteriorElement::monomial(c3.subset_of_labels(&["1", "2"]).unwrap(), rational(-1))
        );
    }

    #[test]
    fn multipoly_round_trip() {
        let a = crate::arrangement::realize_generic(3).unwrap();
        let q = crate::arrangement::defining_polynomial(&a, crate::Execution::Sequential);
        let j = MultiPolyJson::from_poly(&q, a.variables()).unwrap();
        assert_eq!(j.pretty, "x1^2*x2 + x1*x2^2");
        assert_eq!(j.to_poly().unwrap(), q);
        assert!(MultiPolyJson::from_poly(&q, &["x1".into()]).is_err());
    }
}
