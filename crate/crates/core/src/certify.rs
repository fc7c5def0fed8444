//! The generator map `φ̂: Λ(M_n) → Λ(M′_n)` and a re-checkable certificate
//! that it induces a graded isomorphism `A(M_n) ≅ A(M′_n)`.
//!
//! Source generators are `e_1..e_n` (polygon) and `e_ε` (seed). Target
//! generators are the merged `ē_1 = ē_{ε₀}`, `ē_2..ē_n`, `ē_ε` for
//! `ε ≠ ε₀`, and the isthmus `e_p`. The map is
//!
//! ```text
//! e_i ↦ ē_i − ē_n + e_p   (i < n)
//! e_n ↦ e_p
//! e_ε ↦ ē_ε               (ε₀ goes to the merged generator)
//! ```

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::constructions::{
    build_gm, build_mn, build_mn_prime, gm_family_spec, graphic_matroid, FamilySpec, ISTHMUS_LABEL,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::exterior::{boundary_of_set, ExteriorElement, Rational};
use crate::flats::whitney_dimension_oracle;
use crate::io::{format_rational, parse_rational, ExteriorElementJson, FamilySpecJson, MatroidJson, SparseMatrixJson};
use crate::isomorphism::{are_isomorphic, ISO_LIMIT};
use crate::linalg::{dense_rank, invert, is_identity, mat_mul, Echelon};
use crate::matroid::Matroid;
use crate::os_algebra::{evaluate_witness, IdealTerm, IdealWitness, Membership, OsAlgebra};
use crate::subset::Subset;
use crate::tutte::tutte_with;
use crate::{SCHEMA_VERSION, TOOL_VERSION};

/// Algebra map between exterior algebras, fixed by degree-one images.
#[derive(Clone, Debug)]
pub struct GeneratorMap {
    source: Matroid,
    target: Matroid,
    images: Vec<ExteriorElement>,
}

impl GeneratorMap {
    /// Every image must be a nonzero homogeneous element of degree one
    /// over the target ground set.
    pub fn new(source: Matroid, target: Matroid, images: Vec<ExteriorElement>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::InvalidParameter(format!("{} images for {} generators", images.len(), source.len())));
        }
        for (id, img) in images.iter().enumerate() {
            if img.homogeneous_degree() != Some(1) {
                return Err(Error::InvalidParameter(format!("image of `{}` is not of degree one", source.label(id))));
            }
            if !img.support().is_subset_of(target.full_set()) {
                return Err(Error::InvalidParameter(format!("image of `{}` leaves the target", source.label(id))));
            }
        }
        Ok(GeneratorMap { source, target, images })
    }

    pub fn identity(m: &Matroid) -> Self {
        let images = (0..m.len()).map(ExteriorElement::generator).collect();
        GeneratorMap { source: m.clone(), target: m.clone(), images }
    }

    pub fn source(&self) -> &Matroid {
        &self.source
    }

    pub fn target(&self) -> &Matroid {
        &self.target
    }

    pub fn image(&self, id: usize) -> &ExteriorElement {
        &self.images[id]
    }

    pub fn images(&self) -> &[ExteriorElement] {
        &self.images
    }

    /// Extends to the exterior algebra: `e_S ↦ ∧_{s ∈ S} image(s)` in
    /// increasing id order.
    pub fn apply(&self, x: &ExteriorElement) -> ExteriorElement {
        let mut out = ExteriorElement::zero();
        for (s, c) in x.terms() {
            let img = s.iter().fold(ExteriorElement::one(), |acc, id| acc.wedge(&self.images[id]));
            out = &out + &img.scale(c);
        }
        out
    }

    /// Degree-one matrix; column `j` holds the coordinates of `image(j)`.
    pub fn matrix(&self) -> Vec<Vec<Rational>> {
        let mut m = vec![vec![Rational::zero(); self.source.len()]; self.target.len()];
        for (j, img) in self.images.iter().enumerate() {
            for (s, c) in img.terms() {
                m[s.min().expect("degree one")][j] = c.clone();
            }
        }
        m
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GeneratorMap) -> Result<GeneratorMap> {
        if !self.target.same_labeled(&other.source) {
            return Err(Error::InvalidParameter("maps do not compose".into()));
        }
        let images = self.images.iter().map(|img| other.apply(img)).collect();
        GeneratorMap::new(self.source.clone(), other.target.clone(), images)
    }

    pub fn is_identity(&self) -> bool {
        self.source.same_labeled(&self.target)
            && self.images.iter().enumerate().all(|(id, img)| *img == ExteriorElement::generator(id))
    }
}

/// Algebra-map extension of `gm` applied to `x`.
pub fn extend_multiplicatively(gm: &GeneratorMap, x: &ExteriorElement) -> ExteriorElement {
    gm.apply(x)
}

fn gen(m: &Matroid, label: &str) -> Result<ExteriorElement> {
    Ok(ExteriorElement::generator(m.require_id(label)?))
}

/// Target label of the polygon element `i` in `M′_n`.
fn bar(spec: &FamilySpec, i: usize) -> String {
    if i == 1 {
        spec.merged_label()
    } else {
        i.to_string()
    }
}

/// `φ̂` from `M_n = C_n ⊕ M₀` to `M′_n = P(C_n, M₀) ⊕ S`.
pub fn build_phi_hat(spec: &FamilySpec) -> Result<GeneratorMap> {
    let source = build_mn(spec)?;
    let target = build_mn_prime(spec)?;
    let n = spec.n();
    let p = gen(&target, ISTHMUS_LABEL)?;
    let last = gen(&target, &bar(spec, n))?;
    let mut images = Vec::with_capacity(source.len());
    for id in 0..source.len() {
        let label = source.label(id);
        let img = if id < n {
            let i = id + 1;
            if label != i.to_string() {
                return Err(Error::InvalidParameter(format!("polygon element {i} carries label `{label}`")));
            }
            if i < n {
                &(&gen(&target, &bar(spec, i))? - &last) + &p
            } else {
                p.clone()
            }
        } else if label == spec.basepoint() {
            gen(&target, &spec.merged_label())?
        } else {
            gen(&target, label)?
        };
        images.push(img);
    }
    GeneratorMap::new(source, target, images)
}

/// The inverse written out directly: `ē_i ↦ e_i − e_1 + e_{ε₀}`,
/// `ē_ε ↦ e_ε`, `e_p ↦ e_n`.
pub fn displayed_inverse(spec: &FamilySpec) -> Result<GeneratorMap> {
    let source = build_mn_prime(spec)?;
    let target = build_mn(spec)?;
    let n = spec.n();
    let shift = &gen(&target, spec.basepoint())? - &gen(&target, "1")?;
    let mut images = Vec::with_capacity(source.len());
    for id in 0..source.len() {
        let label = source.label(id);
        let img = if label == ISTHMUS_LABEL {
            gen(&target, &n.to_string())?
        } else if let Some(i) = (1..=n).find(|&i| bar(spec, i) == label) {
            &gen(&target, &i.to_string())? + &shift
        } else {
            gen(&target, label)?
        };
        images.push(img);
    }
    GeneratorMap::new(source, target, images)
}

/// Exact inverse of the degree-one matrix.
#[derive(Clone, Debug)]
pub struct Degree1Witness {
    pub matrix: Vec<Vec<Rational>>,
    pub inverse: Vec<Vec<Rational>>,
    pub determinant: Rational,
}

/// Inverts the degree-one matrix and requires determinant `±1` with an
/// integral inverse.
pub fn check_degree1_bijective(gm: &GeneratorMap) -> Result<Degree1Witness> {
    if gm.source.len() != gm.target.len() {
        return Err(Error::InvalidParameter(format!(
            "{} source generators against {} target generators",
            gm.source.len(),
            gm.target.len()
        )));
    }
    let matrix = gm.matrix();
    let (inverse, determinant) = invert(&matrix)?;
    if determinant.abs() != Rational::one() {
        return Err(Error::InvalidParameter(format!("determinant {determinant} is not a unit")));
    }
    if inverse.iter().flatten().any(|v| !v.is_integer()) {
        return Err(Error::InvalidParameter("inverse has non-integral entries".into()));
    }
    Ok(Degree1Witness { matrix, inverse, determinant })
}

/// How the image of a circuit boundary lands in the target ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RelationCase {
    /// Every element of the circuit maps to a single target generator.
    Direct,
    /// Some element maps to a sum; the image is a telescoping product.
    Telescoping,
}

#[derive(Clone, Debug)]
pub struct RelationTranscript {
    /// Circuit of the source.
    pub circuit: Subset,
    pub case: RelationCase,
    /// `φ̂(∂e_C)` over the target.
    pub image: ExteriorElement,
    /// `(C′, ±1)` when the image is `±∂e_{C′}` for a target circuit `C′`.
    pub literal_generator: Option<(Subset, i32)>,
    pub membership: Membership,
}

/// `(C′, sign)` with `x = sign · ∂e_{C′}` and `C′` a circuit of `target`.
fn literal_generator(target: &Matroid, x: &ExteriorElement) -> Option<(Subset, i32)> {
    let support = x.support();
    if !target.circuits().contains(&support) {
        return None;
    }
    let d = boundary_of_set(support);
    if *x == d {
        Some((support, 1))
    } else if *x == -&d {
        Some((support, -1))
    } else {
        None
    }
}

/// Sends every source circuit boundary through `gm` and proves membership in
/// the target ideal. Fails on the first circuit whose image is not in it.
pub fn check_relations(gm: &GeneratorMap, target: &OsAlgebra, exec: Execution) -> Result<Vec<RelationTranscript>> {
    if !target.matroid().same_labeled(&gm.target) {
        return Err(Error::InvalidParameter("algebra is not over the map's target".into()));
    }
    let circuits = gm.source.circuits().to_vec();
    let results = exec.map(circuits, |c| -> Result<RelationTranscript> {
        let direct = c.iter().all(|id| {
            let img = &gm.images[id];
            img.len() == 1 && img.terms().all(|(_, v)| v.is_one())
        });
        let image = gm.apply(&boundary_of_set(c));
        let membership = target.ideal_membership(&image)?;
        if !membership.member {
            return Err(Error::InvalidParameter(format!(
                "image of circuit {:?} is not in the target ideal",
                gm.source.labels_of(c)
            )));
        }
        Ok(RelationTranscript {
            circuit: c,
            case: if direct { RelationCase::Direct } else { RelationCase::Telescoping },
            literal_generator: literal_generator(&gm.target, &image),
            image,
            membership,
        })
    });
    results.into_iter().collect()
}

/// Matrix in degree `p` of the induced map from source nbc monomials to
/// target nbc coordinates, one column per source monomial.
fn degree_matrix(
    gm: &GeneratorMap,
    source: &OsAlgebra,
    target: &OsAlgebra,
    p: usize,
) -> Vec<BTreeMap<usize, Rational>> {
    source.nbc_basis()[p]
        .iter()
        .map(|s| {
            let factors: Vec<ExteriorElement> = s.iter().map(|id| gm.images[id].clone()).collect();
            target.nbc_coordinates(&target.product(&factors), p)
        })
        .collect()
}

fn column_rank(columns: &[BTreeMap<usize, Rational>]) -> usize {
    let mut e = Echelon::new();
    for col in columns {
        e.insert(col.iter().map(|(&r, v)| (r as u64, v.clone())).collect());
    }
    e.rank()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageJson {
    pub source: String,
    pub image: ExteriorElementJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Degree1Json {
    pub matrix: SparseMatrixJson,
    pub inverse: SparseMatrixJson,
    pub determinant: String,
    pub displayed_inverse: Vec<ImageJson>,
    /// The displayed inverse composed with the map is the identity on
    /// generators, in both orders.
    pub round_trip_identity: bool,
    /// `e_i − e_{i+1} ↦ ē_i − ē_{i+1}` for `1 <= i < n`.
    pub telescoping_factors: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessTermJson {
    pub monomial: Vec<String>,
    pub circuit: Vec<String>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiteralJson {
    pub circuit: Vec<String>,
    pub sign: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    pub circuit: Vec<String>,
    pub case: RelationCase,
    pub image: ExteriorElementJson,
    pub literal_generator: Option<LiteralJson>,
    /// `image = Σ coeff · e_monomial ∧ ∂e_circuit` over target circuits.
    pub witness: Vec<WitnessTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionsJson {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub whitney_source: Vec<usize>,
    pub whitney_target: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRankJson {
    pub degree: usize,
    pub dimension: usize,
    pub rank: usize,
    /// Rows index target nbc monomials, columns source nbc monomials, both
    /// in the order of `nbc_basis` for the element id order.
    pub matrix: SparseMatrixJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageJson {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Everything needed to re-check `A(M_n) ≅ A(M′_n)` without trusting the
/// rewriting engine: the map, the inverse matrix, explicit ideal
/// combinations for every relation, and per-degree matrices of full rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoCertificate {
    pub schema_version: u32,
    pub tool_version: String,
    pub spec: FamilySpecJson,
    pub source: MatroidJson,
    pub target: MatroidJson,
    pub images: Vec<ImageJson>,
    pub degree1: Degree1Json,
    pub relations: Vec<RelationJson>,
    pub dimensions: DimensionsJson,
    pub surjectivity: Vec<DegreeRankJson>,
    pub stages: Vec<StageJson>,
    pub notes: Vec<String>,
    pub accepted: bool,
}

fn element_json(m: &Matroid, x: &ExteriorElement) -> Result<ExteriorElementJson> {
    let mut j = ExteriorElementJson::from_element(m, x)?;
    j.schema_version = None;
    Ok(j)
}

fn images_json(gm: &GeneratorMap) -> Result<Vec<ImageJson>> {
    (0..gm.source.len())
        .map(|id| {
            Ok(ImageJson { source: gm.source.label(id).to_owned(), image: element_json(&gm.target, &gm.images[id])? })
        })
        .collect()
}

fn witness_json(target: &Matroid, w: &IdealWitness) -> Vec<WitnessTermJson> {
    w.iter()
        .map(|(t, c)| WitnessTermJson {
            monomial: target.labels_of(t.monomial),
            circuit: target.labels_of(t.circuit),
            coeff: format_rational(c),
        })
        .collect()
}

fn stage<T>(stages: &mut Vec<StageJson>, name: &'static str, run: impl FnOnce() -> Result<(T, String)>) -> Result<T> {
    let (value, detail) = run().map_err(|e| Error::stage(name, e))?;
    stages.push(StageJson { name: name.to_owned(), passed: true, detail });
    Ok(value)
}

fn telescoping_factors_hold(gm: &GeneratorMap, spec: &FamilySpec) -> Result<bool> {
    for i in 1..spec.n() {
        let src = &gen(&gm.source, &i.to_string())? - &gen(&gm.source, &(i + 1).to_string())?;
        let expected = &gen(&gm.target, &bar(spec, i))? - &gen(&gm.target, &bar(spec, i + 1))?;
        if gm.apply(&src) != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Runs the full pipeline. Any failing stage aborts with
/// [`Error::Stage`] naming it.
pub fn certify_iso(spec: &FamilySpec, exec: Execution) -> Result<IsoCertificate> {
    let mut stages = Vec::new();

    let gm = stage(&mut stages, "validate", || {
        let gm = build_phi_hat(spec)?;
        for (name, m) in [("seed", spec.seed()), ("source", gm.source()), ("target", gm.target())] {
            let report = m.validate();
            if !report.passed() {
                return Err(Error::InvalidParameter(format!("{name} fails the circuit axioms: {report:?}")));
            }
        }
        let detail = format!("{} source and {} target elements", gm.source.len(), gm.target.len());
        Ok((gm, detail))
    })?;

    let inverse_map = displayed_inverse(spec)?;
    let (witness, round_trip, telescoping) = stage(&mut stages, "degree1", || {
        let w = check_degree1_bijective(&gm)?;
        let round_trip = gm.then(&inverse_map)?.is_identity() && inverse_map.then(&gm)?.is_identity();
        if !round_trip {
            return Err(Error::InvalidParameter("displayed inverse does not invert the map".into()));
        }
        let telescoping = telescoping_factors_hold(&gm, spec)?;
        if !telescoping {
            return Err(Error::InvalidParameter("e_i - e_(i+1) is not sent to its barred counterpart".into()));
        }
        let detail = format!("determinant {}", w.determinant);
        Ok(((w, round_trip, telescoping), detail))
    })?;

    let source_alg = OsAlgebra::new(gm.source.clone());
    let target_alg = OsAlgebra::new(gm.target.clone());

    let transcripts = stage(&mut stages, "relations", || {
        let t = check_relations(&gm, &target_alg, exec)?;
        let detail = format!("{} circuit images lie in the target ideal", t.len());
        Ok((t, detail))
    })?;

    let dims = stage(&mut stages, "dimensions", || {
        let (s, t) = exec.join(|| source_alg.graded_dimensions(exec), || target_alg.graded_dimensions(exec));
        let (s, t) = (s?, t?);
        let ws = whitney_dimension_oracle(&gm.source)?;
        let wt = whitney_dimension_oracle(&gm.target)?;
        if s != t || ws != s || wt != t {
            return Err(Error::InvalidParameter(format!(
                "dimension vectors {s:?} / {t:?}, flat lattice {ws:?} / {wt:?}"
            )));
        }
        let detail = format!("{s:?}");
        Ok((DimensionsJson { source: s, target: t, whitney_source: ws, whitney_target: wt }, detail))
    })?;

    let surjectivity = stage(&mut stages, "surjectivity", || {
        let degrees: Vec<usize> = (0..dims.source.len()).collect();
        let per_degree = exec.map(degrees, |p| {
            let columns = degree_matrix(&gm, &source_alg, &target_alg, p);
            let rows = target_alg.nbc_basis()[p].len();
            DegreeRankJson {
                degree: p,
                dimension: rows,
                rank: column_rank(&columns),
                matrix: SparseMatrixJson::from_columns(rows, &columns),
            }
        });
        if let Some(bad) = per_degree.iter().find(|d| d.rank != d.dimension || d.matrix.cols != d.dimension) {
            return Err(Error::InvalidParameter(format!(
                "degree {} has rank {} of {}",
                bad.degree, bad.rank, bad.dimension
            )));
        }
        Ok((per_degree, "every degree square of full rank".to_owned()))
    })?;

    let relations = transcripts
        .iter()
        .map(|t| {
            Ok(RelationJson {
                circuit: gm.source.labels_of(t.circuit),
                case: t.case,
                image: element_json(&gm.target, &t.image)?,
                literal_generator: t
                    .literal_generator
                    .map(|(c, sign)| LiteralJson { circuit: gm.target.labels_of(c), sign }),
                witness: witness_json(&gm.target, t.membership.witness.as_ref().expect("members carry witnesses")),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let cols = gm.source.len();
    Ok(IsoCertificate {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_owned(),
        spec: FamilySpecJson::from_spec(spec),
        source: MatroidJson::from_matroid(&gm.source),
        target: MatroidJson::from_matroid(&gm.target),
        images: images_json(&gm)?,
        degree1: Degree1Json {
            matrix: SparseMatrixJson::from_dense(&witness.matrix, cols),
            inverse: SparseMatrixJson::from_dense(&witness.inverse, cols),
            determinant: format_rational(&witness.determinant),
            displayed_inverse: images_json(&inverse_map)?,
            round_trip_identity: round_trip,
            telescoping_factors: telescoping,
        },
        relations,
        dimensions: dims,
        surjectivity,
        stages,
        notes: vec![
            format!(
                "the merged generator `{}` stands for both the polygon element 1 and the basepoint `{}`",
                spec.merged_label(),
                spec.basepoint()
            ),
            format!("source generator `{}` is sent to the merged generator", spec.basepoint()),
            "checked e_i - e_(i+1) maps to the barred e_i - e_(i+1), for 1 <= i < n".to_owned(),
            "coefficients are exact rationals".to_owned(),
        ],
        accepted: true,
    })
}

/// Outcome of [`IsoCertificate::reverify`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Reverification {
    pub failures: Vec<String>,
}

impl Reverification {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl IsoCertificate {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Re-checks every claim from the serialized data. Membership is
    /// confirmed by expanding the stored ideal combinations, so no rewriting
    /// is trusted; dimensions are recounted and the per-degree matrices are
    /// recomputed and rank-checked.
    pub fn reverify(&self) -> Result<Reverification> {
        let mut failures = Vec::new();
        let mut check = |ok: bool, what: &str| {
            if !ok {
                failures.push(what.to_owned());
            }
        };

        let spec = self.spec.to_spec()?;
        let source = self.source.to_matroid()?;
        let target = self.target.to_matroid()?;
        check(source.same_labeled(&build_mn(&spec)?), "source is not M_n for the family spec");
        check(target.same_labeled(&build_mn_prime(&spec)?), "target is not M'_n for the family spec");
        check(source.validate().passed() && target.validate().passed(), "circuit axioms");

        let images = self
            .images
            .iter()
            .enumerate()
            .map(|(id, img)| {
                if source.label(id) != img.source {
                    return Err(Error::Malformed(format!("image {id} is for `{}`", img.source)));
                }
                img.image.to_element(&target)
            })
            .collect::<Result<Vec<_>>>()?;
        let gm = GeneratorMap::new(source.clone(), target.clone(), images)?;
        check(gm.apply(&ExteriorElement::one()) == ExteriorElement::one(), "unit");

        // degree one
        let matrix = self.degree1.matrix.to_dense()?;
        let inverse = self.degree1.inverse.to_dense()?;
        check(matrix == gm.matrix(), "stored degree-one matrix differs from the images");
        let square = matrix.len() == source.len() && matrix.iter().all(|r| r.len() == source.len());
        check(square, "degree-one matrix is not square");
        if square && inverse.len() == matrix.len() {
            check(is_identity(&mat_mul(&matrix, &inverse)), "matrix times inverse");
            check(is_identity(&mat_mul(&inverse, &matrix)), "inverse times matrix");
            check(inverse.iter().flatten().all(|v| v.is_integer()), "inverse is integral");
            let det = invert(&matrix).map(|(_, d)| d).ok();
            check(det.as_ref().map(format_rational) == Some(self.degree1.determinant.clone()), "determinant");
            check(det.is_some_and(|d| d.abs().is_one()), "determinant is a unit");
        }
        let inverse_images = self
            .degree1
            .displayed_inverse
            .iter()
            .map(|img| img.image.to_element(&source))
            .collect::<Result<Vec<_>>>()?;
        let inv_map = GeneratorMap::new(target.clone(), source.clone(), inverse_images)?;
        check(gm.then(&inv_map)?.is_identity() && inv_map.then(&gm)?.is_identity(), "displayed inverse round trip");
        check(telescoping_factors_hold(&gm, &spec)?, "telescoping factors");

        // relations
        let mut stored: BTreeMap<Subset, &RelationJson> = BTreeMap::new();
        for r in &self.relations {
            stored.insert(source.subset_of_labels(&r.circuit)?, r);
        }
        check(stored.keys().copied().eq(source.circuits().iter().copied()), "one relation per source circuit");
        for (&c, r) in &stored {
            let image = gm.apply(&boundary_of_set(c));
            check(r.image.to_element(&target)? == image, "stored relation image");
            let mut witness: IdealWitness = Vec::new();
            for t in &r.witness {
                let circuit = target.subset_of_labels(&t.circuit)?;
                check(target.circuits().contains(&circuit), "witness uses a target circuit");
                witness.push((
                    IdealTerm { monomial: target.subset_of_labels(&t.monomial)?, circuit },
                    parse_rational(&t.coeff)?,
                ));
            }
            check(evaluate_witness(&witness) == image, "witness reproduces the relation image");
            let literal = literal_generator(&target, &image);
            let stored_literal = r
                .literal_generator
                .as_ref()
                .map(|l| Ok::<_, Error>((target.subset_of_labels(&l.circuit)?, l.sign)))
                .transpose()?;
            check(literal == stored_literal, "literal generator record");
        }

        // dimensions
        let source_alg = OsAlgebra::new(source.clone());
        let target_alg = OsAlgebra::new(target.clone());
        let (sd, td) = (source_alg.nbc_counts(), target_alg.nbc_counts());
        check(sd == self.dimensions.source && td == self.dimensions.target, "recounted nbc dimensions");
        check(sd == td, "dimension vectors agree");
        check(whitney_dimension_oracle(&source)? == self.dimensions.whitney_source, "flat lattice of the source");
        check(whitney_dimension_oracle(&target)? == self.dimensions.whitney_target, "flat lattice of the target");

        // surjectivity
        check(self.surjectivity.len() == sd.len(), "one matrix per degree");
        for d in &self.surjectivity {
            if d.degree >= sd.len() {
                check(false, "degree out of range");
                continue;
            }
            let columns = degree_matrix(&gm, &source_alg, &target_alg, d.degree);
            let recomputed = SparseMatrixJson::from_columns(target_alg.nbc_basis()[d.degree].len(), &columns);
            check(recomputed == d.matrix, "per-degree matrix");
            let dense = d.matrix.to_dense()?;
            let full = d.matrix.rows == d.matrix.cols && dense_rank(&dense) == d.matrix.rows;
            check(full && d.rank == d.dimension && d.dimension == d.matrix.rows, "per-degree full rank");
        }

        check(self.stages.iter().all(|s| s.passed), "all stages passed");
        check(self.accepted, "accepted flag");
        Ok(Reverification { failures })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryMember {
    /// Index of the spoke `{0, i}` used as basepoint.
    pub i: usize,
    pub basepoint: String,
    pub matroid: MatroidJson,
    pub longest_circuit: usize,
    pub tutte: String,
    pub tutte_differs_from_reference: bool,
    pub dimensions: Vec<usize>,
    pub certificate_accepted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub i: usize,
    pub j: usize,
    /// `"exhaustive"` when a full isomorphism search ran, otherwise
    /// `"longest-circuit"`.
    pub method: String,
    pub isomorphic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub m: usize,
    pub n: usize,
    pub reference: MatroidJson,
    pub reference_tutte: String,
    pub reference_dimensions: Vec<usize>,
    pub members: Vec<CorollaryMember>,
    pub pairs: Vec<PairJson>,
    pub accepted: bool,
}

/// Builds `M′_{n,i}` for `i = m..2m−1`, shows they are pairwise
/// non-isomorphic and certifies each against `M_n = C_n ⊕ M(G_m)`.
///
/// `m = 1` yields the degenerate one-member report.
pub fn demonstrate_corollary(m: usize, n: usize, exec: Execution) -> Result<(CorollaryReport, Vec<IsoCertificate>)> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    if n <= 2 * m + 1 {
        return Err(Error::InvalidParameter(format!("need n > 2m+1, got m={m}, n={n}")));
    }
    let specs: Vec<(usize, FamilySpec)> =
        (m..2 * m).map(|i| Ok((i, gm_family_spec(m, n, i)?))).collect::<Result<_>>()?;
    if m >= 2 {
        // cross-check the seed against the public constructor
        let seed = graphic_matroid(&build_gm(m)?)?;
        if !seed.same_labeled(specs[0].1.seed()) {
            return Err(Error::MethodDisagreement("G_m seed differs between constructors".into()));
        }
    }
    let reference = build_mn(&specs[0].1)?;
    let reference_tutte = tutte_with(&reference, exec);

    let outcomes = exec.map(specs, |(i, spec)| -> Result<(CorollaryMember, Matroid, IsoCertificate)> {
        let cert = certify_iso(&spec, exec)?;
        let target = build_mn_prime(&spec)?;
        let t = tutte_with(&target, exec);
        Ok((
            CorollaryMember {
                i,
                basepoint: spec.basepoint().to_owned(),
                matroid: MatroidJson::from_matroid(&target),
                longest_circuit: target.longest_circuit()?,
                tutte: t.to_string(),
                tutte_differs_from_reference: t != reference_tutte,
                dimensions: cert.dimensions.target.clone(),
                certificate_accepted: cert.accepted,
            },
            target,
            cert,
        ))
    });
    let outcomes = outcomes.into_iter().collect::<Result<Vec<_>>>()?;

    let mut pairs = Vec::new();
    for a in 0..outcomes.len() {
        for b in a + 1..outcomes.len() {
            let (ma, mb) = (&outcomes[a].1, &outcomes[b].1);
            let by_invariant = outcomes[a].0.longest_circuit != outcomes[b].0.longest_circuit;
            let (method, isomorphic) = if ma.len() <= ISO_LIMIT {
                let iso = are_isomorphic(ma, mb)?.is_some();
                if iso && by_invariant {
                    return Err(Error::MethodDisagreement(
                        "isomorphic matroids with different longest circuits".into(),
                    ));
                }
                ("exhaustive", iso)
            } else {
                ("longest-circuit", !by_invariant)
            };
            pairs.push(PairJson { i: outcomes[a].0.i, j: outcomes[b].0.i, method: method.into(), isomorphic });
        }
    }

    let accepted = outcomes.iter().all(|o| o.0.certificate_accepted)
        && pairs.iter().all(|p| !p.isomorphic)
        && (m == 1 || outcomes.iter().all(|o| o.0.tutte_differs_from_reference));
    let reference_dimensions = outcomes[0].2.dimensions.source.clone();
    let (members, certs): (Vec<_>, Vec<_>) = outcomes.into_iter().map(|(member, _, cert)| (member, cert)).unzip();
    Ok((
        CorollaryReport {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.to_owned(),
            m,
            n,
            reference: MatroidJson::from_matroid(&reference),
            reference_tutte: reference_tutte.to_string(),
            reference_dimensions,
            members,
            pairs,
            accepted,
        },
        certs,
    ))
}
