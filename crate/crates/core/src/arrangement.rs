//! Hyperplane arrangements over the rationals: defining polynomials,
//! decone, direct sum, parallel connection and the underlying matroid.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::constructions::{merged_label, Graph};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::exterior::Rational;
use crate::linalg::{dense_rank, dense_to_row, invert, Echelon};
use crate::matroid::Matroid;
use crate::subset::{subsets_of_size, Subset};

/// Largest arrangement whose matroid is extracted by subset enumeration.
pub const ARRANGEMENT_LIMIT: usize = 20;

/// Affine function `Σ a_v v + c`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coeffs: BTreeMap<String, Rational>,
    constant: Rational,
    label: Option<String>,
}

impl LinearForm {
    /// Zero coefficients are dropped; a form without variables is rejected.
    pub fn new(coeffs: BTreeMap<String, Rational>, constant: Rational, label: Option<String>) -> Result<Self> {
        let coeffs: BTreeMap<String, Rational> = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if coeffs.is_empty() {
            return Err(Error::InvalidForm(format!("constant form {constant} defines no hyperplane")));
        }
        Ok(LinearForm { coeffs, constant, label })
    }

    /// Central form from `(variable, coefficient)` pairs.
    pub fn central<S: Into<String>>(terms: impl IntoIterator<Item = (S, i64)>, label: Option<&str>) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for (v, c) in terms {
            *coeffs.entry(v.into()).or_insert_with(Rational::zero) += Rational::from_integer(c.into());
        }
        Self::new(coeffs, Rational::zero(), label.map(str::to_owned))
    }

    pub fn variable(name: &str, label: Option<&str>) -> Self {
        Self::central([(name, 1)], label).expect("nonzero")
    }

    pub fn coeffs(&self) -> &BTreeMap<String, Rational> {
        &self.coeffs
    }

    pub fn coeff(&self, var: &str) -> Rational {
        self.coeffs.get(var).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: Option<String>) -> Self {
        self.label = label;
        self
    }

    pub fn is_central(&self) -> bool {
        self.constant.is_zero()
    }

    /// The variable `v` when the form is exactly `v`.
    pub fn as_coordinate(&self) -> Option<&str> {
        match (self.coeffs.len(), self.coeffs.iter().next()) {
            (1, Some((v, c))) if c.is_one() && self.is_central() => Some(v),
            _ => None,
        }
    }

    /// Same hyperplane: equal up to a nonzero scalar, constants included.
    pub fn is_proportional(&self, other: &LinearForm) -> bool {
        let keys: BTreeSet<&String> = self.coeffs.keys().collect();
        if keys != other.coeffs.keys().collect() {
            return false;
        }
        let (v, a) = self.coeffs.iter().next().expect("nonempty");
        let ratio = &other.coeffs[v] / a;
        self.coeffs.iter().all(|(v, a)| other.coeffs[v] == a * &ratio) && other.constant == &self.constant * &ratio
    }

    /// Replaces `var` by the affine form `by` (given as coefficients and a
    /// constant). Returns `None` when nothing but a constant remains.
    fn substitute(&self, var: &str, by: &BTreeMap<String, Rational>, by_const: &Rational) -> Option<LinearForm> {
        let a = self.coeff(var);
        let mut coeffs = self.coeffs.clone();
        coeffs.remove(var);
        let mut constant = self.constant.clone();
        if !a.is_zero() {
            for (v, c) in by {
                *coeffs.entry(v.clone()).or_insert_with(Rational::zero) += &a * c;
            }
            constant += &a * by_const;
        }
        LinearForm::new(coeffs, constant, self.label.clone()).ok()
    }

    fn rename(&self, f: &impl Fn(&str) -> String) -> LinearForm {
        LinearForm {
            coeffs: self.coeffs.iter().map(|(v, c)| (f(v), c.clone())).collect(),
            constant: self.constant.clone(),
            label: self.label.clone(),
        }
    }

    /// Same form without its label, scaled so the first coefficient is 1.
    fn normalized(&self) -> LinearForm {
        let lead = self.coeffs.values().next().expect("nonempty").recip();
        LinearForm {
            coeffs: self.coeffs.iter().map(|(v, c)| (v.clone(), c * &lead)).collect(),
            constant: &self.constant * &lead,
            label: None,
        }
    }

    pub fn as_polynomial(&self) -> MultiPoly {
        let mut p = MultiPoly::constant(self.constant.clone());
        for (v, c) in &self.coeffs {
            p.add_term(BTreeMap::from([(v.clone(), 1)]), c.clone());
        }
        p
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_polynomial())
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.label {
            Some(l) => write!(f, "{l}: {self}"),
            None => write!(f, "{self}"),
        }
    }
}

type Exponents = BTreeMap<String, u32>;

/// Sparse polynomial with rational coefficients; monomials map variable
/// names to positive exponents.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Exponents, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(Exponents::new(), c);
        p
    }

    pub fn add_term(&mut self, mono: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mono.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.terms.keys().flat_map(|m| m.keys().cloned()).collect()
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut m = a.clone();
                for (v, e) in b {
                    *m.entry(v.clone()).or_insert(0) += e;
                }
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    /// Exponent vectors over `vars`; every variable of the polynomial must
    /// be listed.
    pub fn exponent_vectors(&self, vars: &[String]) -> Result<Vec<(Vec<u32>, Rational)>> {
        if let Some(v) = self.variables().into_iter().find(|v| !vars.contains(v)) {
            return Err(Error::UnknownElement(v));
        }
        let mut out: Vec<(Vec<u32>, Rational)> = self
            .terms
            .iter()
            .map(|(m, c)| (vars.iter().map(|v| m.get(v).copied().unwrap_or(0)).collect(), c.clone()))
            .collect();
        out.sort_by(|a, b| b.0.cmp(&a.0));
        Ok(out)
    }

    fn display_order(&self) -> Vec<(&Exponents, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        let deg = |m: &Exponents| m.values().sum::<u32>();
        let key = |m: &Exponents| m.iter().map(|(v, e)| (v.clone(), *e)).collect::<Vec<_>>();
        v.sort_by(|a, b| deg(b.0).cmp(&deg(a.0)).then_with(|| key(b.0).cmp(&key(a.0))));
        v
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.display_order().into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let mono: Vec<String> =
                m.iter().map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") }).collect();
            match (a.is_one(), mono.is_empty()) {
                (_, true) => write!(f, "{a}")?,
                (true, false) => f.write_str(&mono.join("*"))?,
                (false, false) => write!(f, "{a}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Finite list of hyperplanes in a space with named coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct Arrangement {
    variables: Vec<String>,
    forms: Vec<LinearForm>,
}

impl Arrangement {
    /// Every form may only use declared variables, variable names must be
    /// distinct and no two forms may define the same hyperplane.
    pub fn new(variables: Vec<String>, forms: Vec<LinearForm>) -> Result<Self> {
        let a = Self::allowing_repeats(variables, forms)?;
        for (i, f) in a.forms.iter().enumerate() {
            if let Some(j) = a.forms[..i].iter().position(|g| g.is_proportional(f)) {
                return Err(Error::InvalidForm(format!("forms {j} and {i} define the same hyperplane")));
            }
        }
        Ok(a)
    }

    /// Like [`Arrangement::new`] but repeated hyperplanes are kept.
    pub fn allowing_repeats(variables: Vec<String>, forms: Vec<LinearForm>) -> Result<Self> {
        let declared: HashSet<&String> = variables.iter().collect();
        if declared.len() != variables.len() {
            return Err(Error::InvalidParameter("repeated variable name".into()));
        }
        for f in &forms {
            if let Some(v) = f.coeffs.keys().find(|v| !declared.contains(v)) {
                return Err(Error::UnknownElement(v.clone()));
            }
        }
        let a = Arrangement { variables, forms };
        let labels = a.labels();
        let distinct: HashSet<&String> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(Error::DuplicateLabel(format!("{labels:?}")));
        }
        Ok(a)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn forms(&self) -> &[LinearForm] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn is_central(&self) -> bool {
        self.forms.iter().all(LinearForm::is_central)
    }

    /// Form labels, `h{i}` (1-based) for unlabeled forms.
    pub fn labels(&self) -> Vec<String> {
        self.forms.iter().enumerate().map(|(i, f)| f.label.clone().unwrap_or_else(|| format!("h{}", i + 1))).collect()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels().iter().position(|l| l == label).ok_or_else(|| Error::MissingHyperplane(label.to_owned()))
    }

    /// Gives every form an explicit label.
    pub fn with_resolved_labels(&self) -> Arrangement {
        let forms = self.forms.iter().zip(self.labels()).map(|(f, l)| f.clone().with_label(Some(l))).collect();
        Arrangement { variables: self.variables.clone(), forms }
    }

    pub fn relabel(&self, f: impl Fn(&str) -> String) -> Result<Arrangement> {
        let forms =
            self.forms.iter().zip(self.labels()).map(|(form, l)| form.clone().with_label(Some(f(&l)))).collect();
        Arrangement::allowing_repeats(self.variables.clone(), forms)
    }

    pub fn rename_variables(&self, f: impl Fn(&str) -> String) -> Result<Arrangement> {
        Arrangement::allowing_repeats(
            self.variables.iter().map(|v| f(v)).collect(),
            self.forms.iter().map(|form| form.rename(&f)).collect(),
        )
    }

    /// Forms as normalized, unlabeled hyperplanes.
    pub fn hyperplane_set(&self) -> BTreeSet<String> {
        self.forms.iter().map(|f| f.normalized().to_string()).collect()
    }

    fn require_central(&self) -> Result<()> {
        if self.is_central() {
            Ok(())
        } else {
            Err(Error::NotCentral)
        }
    }

    fn normal_vectors(&self) -> Vec<Vec<Rational>> {
        self.forms.iter().map(|f| self.variables.iter().map(|v| f.coeff(v)).collect()).collect()
    }
}

impl fmt::Debug for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Arrangement").field("variables", &self.variables).field("forms", &self.forms).finish()
    }
}

/// `Q(A) = Π φ_i`, multiplied as a balanced tree so halves can run in
/// parallel.
pub fn defining_polynomial(a: &Arrangement, exec: Execution) -> MultiPoly {
    fn product(forms: &[LinearForm], exec: Execution) -> MultiPoly {
        match forms {
            [] => MultiPoly::one(),
            [f] => f.as_polynomial(),
            _ => {
                let (l, r) = forms.split_at(forms.len() / 2);
                let (pl, pr) = exec.join(|| product(l, exec), || product(r, exec));
                pl.mul(&pr)
            }
        }
    }
    product(&a.forms, exec)
}

/// Result of [`coordinate_change`].
#[derive(Clone, Debug)]
pub struct CoordinateChange {
    pub arrangement: Arrangement,
    /// `new = matrix · old` with rows for `new_variables` and columns for
    /// the original variables.
    pub matrix: Vec<Vec<Rational>>,
    pub new_variables: Vec<String>,
}

/// Linear change of coordinates after which form `h` is the first new
/// variable. The other new variables are the original ones except the
/// pivot (first variable with a nonzero coefficient in `h`), renamed
/// `{prefix}2, {prefix}3, …` in their original order.
pub fn coordinate_change(a: &Arrangement, h: usize, prefix: &str) -> Result<CoordinateChange> {
    let form = a.forms.get(h).ok_or_else(|| Error::MissingHyperplane(format!("index {h}")))?;
    if !form.is_central() {
        return Err(Error::NotCentral);
    }
    let pivot = a.variables.iter().position(|v| !form.coeff(v).is_zero()).expect("form has a variable");
    let r = a.variables.len();
    let mut new_variables = vec![format!("{prefix}1")];
    let mut rename: BTreeMap<String, String> = BTreeMap::new();
    let mut matrix = vec![a.variables.iter().map(|v| form.coeff(v)).collect::<Vec<_>>()];
    for (j, v) in a.variables.iter().enumerate().filter(|&(j, _)| j != pivot) {
        let name = format!("{prefix}{}", new_variables.len() + 1);
        rename.insert(v.clone(), name.clone());
        new_variables.push(name);
        let mut row = vec![Rational::zero(); r];
        row[j] = Rational::one();
        matrix.push(row);
    }
    let (_, det) = invert(&matrix)?;
    debug_assert!(!det.is_zero());

    // old pivot = (x1 − Σ_{j≠pivot} c_j v_j) / c_pivot, in new names
    let c_pivot = form.coeff(&a.variables[pivot]);
    let mut by: BTreeMap<String, Rational> = BTreeMap::from([(new_variables[0].clone(), c_pivot.recip())]);
    for (v, c) in form.coeffs.iter().filter(|(v, _)| **v != a.variables[pivot]) {
        by.insert(rename[v].clone(), -(c / &c_pivot));
    }
    let pivot_name = a.variables[pivot].clone();
    let forms = a
        .forms
        .iter()
        .enumerate()
        .map(|(i, f)| {
            if i == h {
                return Ok(LinearForm::variable(&new_variables[0], None).with_label(f.label.clone()));
            }
            let renamed = f.rename(&|v: &str| if v == pivot_name { v.to_owned() } else { rename[v].clone() });
            renamed
                .substitute(&pivot_name, &by, &Rational::zero())
                .ok_or_else(|| Error::InvalidForm(format!("form {i} collapsed under the coordinate change")))
        })
        .collect::<Result<Vec<_>>>()?;
    let arrangement = Arrangement::allowing_repeats(new_variables.clone(), forms)?.labels_from(a);
    Ok(CoordinateChange { arrangement, matrix, new_variables })
}

impl Arrangement {
    /// Copies resolved labels from `other` (same number of forms).
    fn labels_from(mut self, other: &Arrangement) -> Arrangement {
        for (f, l) in self.forms.iter_mut().zip(other.labels()) {
            f.label = Some(l);
        }
        self
    }
}

/// Coordinates renamed so that the central form `h` is exactly
/// `{prefix}1`: a pure renaming when `h` is already a coordinate, otherwise
/// [`coordinate_change`].
pub fn standardize(a: &Arrangement, h: usize, prefix: &str) -> Result<Arrangement> {
    a.require_central()?;
    let form = a.forms.get(h).ok_or_else(|| Error::MissingHyperplane(format!("index {h}")))?;
    let Some(var) = form.as_coordinate() else {
        return Ok(coordinate_change(a, h, prefix)?.arrangement);
    };
    let mut names: BTreeMap<String, String> = BTreeMap::from([(var.to_owned(), format!("{prefix}1"))]);
    for v in a.variables.iter().filter(|v| *v != var) {
        let k = names.len() + 1;
        names.insert(v.clone(), format!("{prefix}{k}"));
    }
    let order: Vec<String> =
        std::iter::once(var.to_owned()).chain(a.variables.iter().filter(|v| *v != var).cloned()).collect();
    let renamed = a.with_resolved_labels().rename_variables(|v| names[v].clone())?;
    Arrangement::allowing_repeats(order.iter().map(|v| names[v].clone()).collect(), renamed.forms)
}

/// Affine arrangement obtained by setting the coordinate `h` to 1 in every
/// other form. The form `h` must be a bare coordinate; see [`standardize`].
pub fn decone(a: &Arrangement, h: usize) -> Result<Arrangement> {
    a.require_central()?;
    let form = a.forms.get(h).ok_or_else(|| Error::MissingHyperplane(format!("index {h}")))?;
    let var = form
        .as_coordinate()
        .ok_or_else(|| Error::InvalidForm(format!("form {form} is not a coordinate; change coordinates first")))?
        .to_owned();
    let labels = a.labels();
    let forms = a
        .forms
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != h)
        .map(|(i, f)| {
            f.clone()
                .with_label(Some(labels[i].clone()))
                .substitute(&var, &BTreeMap::new(), &Rational::one())
                .ok_or_else(|| Error::InvalidForm(format!("form {i} is parallel to the deconing hyperplane")))
        })
        .collect::<Result<Vec<_>>>()?;
    Arrangement::new(a.variables.iter().filter(|v| **v != var).cloned().collect(), forms)
}

/// Homogenizes an affine arrangement with a new coordinate `var` and adds
/// the hyperplane `var = 0`.
pub fn recone(d: &Arrangement, var: &str) -> Result<Arrangement> {
    if d.variables.iter().any(|v| v == var) {
        return Err(Error::VariableCollision(var.to_owned()));
    }
    let mut forms = vec![LinearForm::variable(var, None)];
    for f in d.forms() {
        let mut coeffs = f.coeffs.clone();
        if !f.constant.is_zero() {
            coeffs.insert(var.to_owned(), f.constant.clone());
        }
        forms.push(LinearForm::new(coeffs, Rational::zero(), f.label.clone())?);
    }
    let variables = std::iter::once(var.to_owned()).chain(d.variables.iter().cloned()).collect();
    Arrangement::new(variables, forms)
}

/// Forms of both arrangements in the union of their (disjoint) variables.
pub fn arr_direct_sum(a0: &Arrangement, a1: &Arrangement) -> Result<Arrangement> {
    if let Some(v) = a0.variables.iter().find(|v| a1.variables.contains(v)) {
        return Err(Error::VariableCollision(v.clone()));
    }
    let (l0, l1) = (a0.labels(), a1.labels());
    if let Some(l) = l0.iter().find(|l| l1.contains(l)) {
        return Err(Error::LabelCollision(l.clone()));
    }
    let variables = a0.variables.iter().chain(&a1.variables).cloned().collect();
    let forms = a0.with_resolved_labels().forms.into_iter().chain(a1.with_resolved_labels().forms).collect();
    Arrangement::new(variables, forms)
}

/// Parallel connection along the hyperplanes `h0 ∈ a0` and `h1 ∈ a1`.
///
/// Coordinates become `x1..x_{r0}` for `a0` (with `h0` = `x1`) and
/// `y2..y_{r1}` for `a1`; `a1`'s coordinate on `h1` is identified with `x1`.
/// Forms are listed as `a0`'s (with `h0` relabeled to the merged label) then
/// `a1`'s without `h1`.
pub fn arr_parallel_connection(a0: &Arrangement, h0: usize, a1: &Arrangement, h1: usize) -> Result<Arrangement> {
    let s0 = standardize(a0, h0, "x")?;
    let s1 = standardize(a1, h1, "y")?;
    let (l0, l1) = (a0.labels(), a1.labels());
    let merged = merged_label(&l0[h0], &l1[h1]);
    let mut forms: Vec<LinearForm> = s0.forms.clone();
    forms[h0].label = Some(merged.clone());
    let glue = BTreeMap::from([("x1".to_owned(), Rational::one())]);
    for (i, f) in s1.forms.iter().enumerate().filter(|&(i, _)| i != h1) {
        let moved = f
            .substitute("y1", &glue, &Rational::zero())
            .ok_or_else(|| Error::InvalidForm(format!("form {i} collapsed when gluing")))?;
        if forms.iter().any(|g| g.label.as_deref() == moved.label()) || moved.label() == Some(merged.as_str()) {
            return Err(Error::LabelCollision(moved.label.clone().unwrap_or_default()));
        }
        forms.push(moved);
    }
    let variables = s0.variables.iter().chain(s1.variables.iter().skip(1)).cloned().collect();
    Arrangement::new(variables, forms)
}

/// Matroid of the normal vectors: circuits are the minimal dependent sets,
/// found by exact rank computations over subsets of increasing size.
pub fn underlying_matroid(a: &Arrangement) -> Result<Matroid> {
    a.require_central()?;
    let n = a.len();
    if n > ARRANGEMENT_LIMIT {
        return Err(Error::SizeGuard { size: n, limit: ARRANGEMENT_LIMIT });
    }
    let vectors = a.normal_vectors();
    let rank_of = |s: Subset| dense_rank(&s.iter().map(|i| vectors[i].clone()).collect::<Vec<_>>());
    let r = rank_of(Subset::full(n));
    let mut circuits: Vec<Subset> = Vec::new();
    for k in 1..=(r + 1).min(n) {
        for s in subsets_of_size(n, k) {
            if circuits.iter().any(|c| c.is_subset_of(s)) {
                continue;
            }
            if rank_of(s) < k {
                circuits.push(s);
            }
        }
    }
    Matroid::from_circuits(a.labels(), circuits)
}

/// `n` hyperplanes in `n − 1` coordinates, any `n − 1` of them independent:
/// the coordinates `x1..x_{n−1}` and their sum. Labels are `1..n`.
pub fn realize_generic(n: usize) -> Result<Arrangement> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need at least two hyperplanes, got {n}")));
    }
    let vars: Vec<String> = (1..n).map(|i| format!("x{i}")).collect();
    let mut forms: Vec<LinearForm> =
        vars.iter().enumerate().map(|(i, v)| LinearForm::variable(v, Some(&(i + 1).to_string()))).collect();
    forms.push(LinearForm::central(vars.iter().map(|v| (v.clone(), 1)), Some(&n.to_string()))?);
    let a = if n == 2 { Arrangement::allowing_repeats(vars, forms)? } else { Arrangement::new(vars, forms)? };
    let vectors = a.normal_vectors();
    for s in subsets_of_size(n, n - 1) {
        let mut e = Echelon::new();
        for i in s.iter() {
            e.insert(dense_to_row(&vectors[i]));
        }
        if e.rank() != n - 1 {
            return Err(Error::MethodDisagreement(format!("hyperplanes {s:?} are dependent")));
        }
    }
    Ok(a)
}

/// Graphic arrangement: coordinate `v{u}` per vertex, form `v{a} − v{b}`
/// per edge, labeled by the edge label.
pub fn graphic_arrangement(g: &Graph) -> Result<Arrangement> {
    let vars: Vec<String> = g.vertices().iter().map(|v| format!("v{v}")).collect();
    let forms = g
        .edges()
        .iter()
        .map(|e| {
            if e.ends.0 == e.ends.1 {
                return Err(Error::InvalidForm(format!("loop edge `{}` has no hyperplane", e.label)));
            }
            LinearForm::central([(format!("v{}", e.ends.0), 1), (format!("v{}", e.ends.1), -1)], Some(&e.label))
        })
        .collect::<Result<Vec<_>>>()?;
    Arrangement::allowing_repeats(vars, forms)
}

/// Outcome of [`verify_homogenization_identity`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomoIdentityReport {
    /// `Q(d P(A₀, A₁))`.
    pub left: MultiPoly,
    /// `Q(dA₀ ⊕ dA₁)`.
    pub right: MultiPoly,
    pub polynomial_identity: bool,
    /// Same affine hyperplanes on both sides, labels ignored.
    pub hyperplanes_equal: bool,
    /// `Q(dA₀ ⊕ dA₁) = Q(dA₀) · Q(dA₁)`.
    pub product_rule: bool,
    /// `ℂ*` factors in `C(S ⊕ P(A₀,A₁)) ≅ ℂ* × ℂ* × C(d P(A₀,A₁))`.
    pub cstar_factors_left: usize,
    /// `ℂ*` factors in `C(A₀ ⊕ A₁) ≅ ℂ* × C(dA₀) × ℂ* × C(dA₁)`.
    pub cstar_factors_right: usize,
    /// Ambient dimensions `1 + (r₀ + r₁ − 1)` and `r₀ + r₁`.
    pub ambient_left: usize,
    pub ambient_right: usize,
}

impl HomoIdentityReport {
    pub fn passed(&self) -> bool {
        self.polynomial_identity
            && self.hyperplanes_equal
            && self.product_rule
            && self.cstar_factors_left == self.cstar_factors_right
            && self.ambient_left == self.ambient_right
    }
}

/// Checks `Q(d P(A₀, A₁)) = Q(dA₀ ⊕ dA₁)` exactly, with `dA₀` in the
/// coordinates `x2..` and `dA₁` in `y2..` as produced by the parallel
/// connection.
pub fn verify_homogenization_identity(
    a0: &Arrangement,
    h0: usize,
    a1: &Arrangement,
    h1: usize,
    exec: Execution,
) -> Result<HomoIdentityReport> {
    let p = arr_parallel_connection(a0, h0, a1, h1)?;
    let dp = decone(&p, h0)?;
    let d0 = decone(&standardize(a0, h0, "x")?, h0)?;
    let d1 = decone(&standardize(a1, h1, "y")?, h1)?;
    let sum = arr_direct_sum(&d0, &d1)?;
    let left = defining_polynomial(&dp, exec);
    let right = defining_polynomial(&sum, exec);
    let product_rule = right == defining_polynomial(&d0, exec).mul(&defining_polynomial(&d1, exec));
    // S contributes one ℂ*, deconing P another; each decone of A₀, A₁ one.
    let cstar_left = 1 + 1;
    let cstar_right = 1 + 1;
    Ok(HomoIdentityReport {
        polynomial_identity: left == right,
        hyperplanes_equal: dp.hyperplane_set() == sum.hyperplane_set(),
        product_rule,
        cstar_factors_left: cstar_left,
        cstar_factors_right: cstar_right,
        ambient_left: 1 + p.variables.len(),
        ambient_right: a0.variables.len() + a1.variables.len(),
        left,
        right,
    })
}
