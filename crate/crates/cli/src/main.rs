//! `osforge` command-line front end.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 bad usage or input.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use osforge::arrangement::{
    arr_parallel_connection, decone, defining_polynomial, standardize, verify_homogenization_identity, Arrangement,
};
use osforge::certify::{certify_iso, demonstrate_corollary, IsoCertificate};
use osforge::constructions::{build_mn, build_mn_prime, build_pn, gm_family_spec, graphic_matroid, FamilySpec};
use osforge::io::{
    read_json, ArrangementJson, ExteriorElementJson, FamilySpecJson, GraphJson, MatroidJson, MultiPolyJson,
    PolynomialJson, UnivariateJson,
};
use osforge::isomorphism::are_isomorphic;
use osforge::tutte::{beta_invariant, characteristic, poincare_from_chi, tutte_with};
use osforge::{Error, Execution, Matroid, OsAlgebra, SCHEMA_VERSION};

#[derive(Parser)]
#[command(name = "osforge", version, about = "Matroids, Tutte polynomials, Orlik-Solomon algebras and arrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the output here (atomically) instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Clone)]
struct MatroidInput {
    /// Matroid JSON: {"ground": [...], "circuits": [[...], ...]}.
    #[arg(long, alias = "seed-matroid")]
    matroid: Option<PathBuf>,
    /// Graph JSON; its cycle matroid is used.
    #[arg(long, conflicts_with = "matroid")]
    graph: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct FamilyInput {
    #[command(flatten)]
    seed: MatroidInput,
    /// Seed element glued to the polygon.
    #[arg(long)]
    basepoint: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Use the graph G_m as seed (with --i selecting the spoke).
    #[arg(long)]
    m: Option<usize>,
    /// Spoke index for the G_m seed, m <= i <= 2m-1.
    #[arg(long)]
    i: Option<usize>,
}

#[derive(Args, Clone)]
struct ArrangementInput {
    /// Arrangement JSON; repeat for commands taking two.
    #[arg(long, required = true)]
    arrangement: Vec<PathBuf>,
    /// Hyperplane label per arrangement, defaulting to the first form.
    #[arg(long)]
    hyperplane: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the circuit axioms.
    Validate(MatroidInput),
    /// Tutte polynomial by deletion-contraction.
    Tutte(MatroidInput),
    /// Characteristic polynomial.
    Chi(MatroidInput),
    /// Beta invariant (coefficient of x in the Tutte polynomial).
    Beta(MatroidInput),
    /// Graded dimensions of the Orlik-Solomon algebra, checked three ways.
    OsDims(MatroidInput),
    /// Normal form of an exterior element modulo the Orlik-Solomon ideal.
    Nf {
        #[command(flatten)]
        input: MatroidInput,
        /// Exterior element JSON.
        #[arg(long)]
        element: PathBuf,
    },
    /// Build M_n, P^n and M'_n from a seed.
    BuildFamily(FamilyInput),
    /// Certify A(M_n) ≅ A(M'_n), or re-check a stored certificate.
    Certify {
        #[command(flatten)]
        family: FamilyInput,
        /// Re-verify this certificate instead of building a new one.
        #[arg(long, conflicts_with_all = ["matroid", "graph", "basepoint", "n", "m", "i"])]
        certificate: Option<PathBuf>,
    },
    /// Non-isomorphic matroids M'_{n,i} with isomorphic algebras, seeded by G_m.
    CorollaryCor {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Also embed every certificate in the output.
        #[arg(long)]
        with_certificates: bool,
    },
    /// Decone a central arrangement at a hyperplane.
    ArrDecone(ArrangementInput),
    /// Parallel connection of two central arrangements.
    ArrParallel(ArrangementInput),
    /// Check Q(d P(A0, A1)) = Q(dA0 ⊕ dA1).
    ArrVerifyHomo(ArrangementInput),
    /// Search for an isomorphism between two matroids.
    Isomorphic {
        /// Two matroid JSON files.
        #[arg(long, num_args = 1, required = true)]
        matroid: Vec<PathBuf>,
    },
}

/// What a command produced.
struct Output {
    json: String,
    text: String,
    verified: bool,
}

impl Output {
    fn new(doc: &impl Serialize, text: impl Into<String>) -> anyhow::Result<Self> {
        Ok(Output { json: serde_json::to_string_pretty(doc)?, text: text.into(), verified: true })
    }

    fn verified(mut self, ok: bool) -> Self {
        self.verified = ok;
        self
    }
}

fn load_matroid(input: &MatroidInput) -> anyhow::Result<Matroid> {
    match (&input.matroid, &input.graph) {
        (Some(path), None) => {
            let j: MatroidJson = read_json(path)?;
            Ok(j.to_matroid().with_context(|| format!("{}", path.display()))?)
        }
        (None, Some(path)) => {
            let g: GraphJson = read_json(path)?;
            Ok(graphic_matroid(&g.to_graph()?)?)
        }
        _ => bail!("give the matroid with --matroid FILE or --graph FILE"),
    }
}

/// Seeds whose labels clash with the polygon labels `1..n` or `p` are
/// relabeled `m<label>`, basepoint included.
fn family_spec(input: &FamilyInput) -> anyhow::Result<FamilySpec> {
    let n = input.n.ok_or_else(|| anyhow!("--n is required"))?;
    if let Some(m) = input.m {
        if input.seed.matroid.is_some() || input.seed.graph.is_some() || input.basepoint.is_some() {
            bail!("--m selects the G_m seed; drop --matroid/--graph/--basepoint or drop --m");
        }
        let i = input.i.ok_or_else(|| anyhow!("--m needs --i (spoke index, m <= i <= 2m-1)"))?;
        return Ok(gm_family_spec(m, n, i)?);
    }
    let seed = load_matroid(&input.seed)?;
    let basepoint = input.basepoint.clone().ok_or_else(|| anyhow!("--basepoint is required"))?;
    match FamilySpec::new(seed.clone(), basepoint.clone(), n) {
        Err(Error::LabelCollision(l)) => {
            eprintln!("note: seed label `{l}` clashes with the polygon labels; seed relabeled with prefix `m`");
            Ok(FamilySpec::new(seed.relabel(|l| format!("m{l}"))?, format!("m{basepoint}"), n)?)
        }
        other => Ok(other?),
    }
}

fn load_arrangements(input: &ArrangementInput, count: usize) -> anyhow::Result<Vec<(Arrangement, usize)>> {
    if input.arrangement.len() != count {
        bail!("expected {count} --arrangement file(s), got {}", input.arrangement.len());
    }
    if input.hyperplane.len() > count {
        bail!("at most {count} --hyperplane label(s) allowed");
    }
    input
        .arrangement
        .iter()
        .enumerate()
        .map(|(k, path)| {
            let j: ArrangementJson = read_json(path)?;
            let a = j.to_arrangement().with_context(|| format!("{}", path.display()))?.with_resolved_labels();
            let h = match input.hyperplane.get(k) {
                Some(label) => a.index_of(label)?,
                None => 0,
            };
            Ok((a, h))
        })
        .collect()
}

#[derive(Serialize)]
struct Versioned<T: Serialize> {
    schema_version: u32,
    #[serde(flatten)]
    body: T,
}

fn versioned<T: Serialize>(body: T) -> Versioned<T> {
    Versioned { schema_version: SCHEMA_VERSION, body }
}

#[derive(Serialize)]
struct ValidationJson {
    elements: usize,
    rank: usize,
    circuits: usize,
    antichain: bool,
    elimination: bool,
    violation: Option<String>,
    passed: bool,
}

#[derive(Serialize)]
struct DimsJson {
    rank: usize,
    dimensions: Vec<usize>,
    poincare: String,
}

#[derive(Serialize)]
struct NormalFormJson {
    input: ExteriorElementJson,
    normal_form: ExteriorElementJson,
    pretty: String,
    in_ideal: bool,
}

#[derive(Serialize)]
struct FamilyJson {
    spec: FamilySpecJson,
    mn: MatroidJson,
    pn: MatroidJson,
    mn_prime: MatroidJson,
}

#[derive(Serialize)]
struct ReverifyJson {
    passed: bool,
    failures: Vec<String>,
}

#[derive(Serialize)]
struct CorollaryJson {
    report: osforge::certify::CorollaryReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificates: Option<Vec<IsoCertificate>>,
}

#[derive(Serialize)]
struct ArrangementOut {
    arrangement: ArrangementJson,
    polynomial: MultiPolyJson,
}

#[derive(Serialize)]
struct HomoJson {
    passed: bool,
    polynomial_identity: bool,
    hyperplanes_equal: bool,
    product_rule: bool,
    cstar_factors_left: usize,
    cstar_factors_right: usize,
    ambient_left: usize,
    ambient_right: usize,
    left: MultiPolyJson,
    right: MultiPolyJson,
}

#[derive(Serialize)]
struct IsoJson {
    isomorphic: bool,
    map: Option<BTreeMap<String, String>>,
}

fn poly_vars(p: &osforge::arrangement::MultiPoly) -> Vec<String> {
    p.variables().into_iter().collect()
}

fn arrangement_text(a: &Arrangement) -> String {
    a.forms().iter().map(|f| format!("{}: {f}", f.label().unwrap_or("?"))).collect::<Vec<_>>().join("\n")
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::default() };
    match &cli.command {
        Command::Validate(input) => {
            let m = load_matroid(input)?;
            let r = m.validate();
            let body = ValidationJson {
                elements: m.len(),
                rank: if r.passed() { m.rank() } else { 0 },
                circuits: m.circuits().len(),
                antichain: r.antichain,
                elimination: r.elimination,
                violation: r.violation.as_ref().map(|v| format!("{v:?}")),
                passed: r.passed(),
            };
            let text = match &body.violation {
                None => format!("valid: {} elements, rank {}, {} circuits", body.elements, body.rank, body.circuits),
                Some(v) => format!("invalid: {v}"),
            };
            let passed = body.passed;
            Ok(Output::new(&versioned(body), text)?.verified(passed))
        }
        Command::Tutte(input) => {
            let t = tutte_with(&load_matroid(input)?, exec);
            Output::new(&PolynomialJson::from_poly(&t), t.to_string())
        }
        Command::Chi(input) => {
            let chi = characteristic(&load_matroid(input)?);
            Output::new(&UnivariateJson::from_poly(&chi), chi.display_in("t"))
        }
        Command::Beta(input) => {
            let beta = beta_invariant(&load_matroid(input)?)?;
            Output::new(&versioned(BTreeMap::from([("beta", beta)])), beta.to_string())
        }
        Command::OsDims(input) => {
            let m = load_matroid(input)?;
            let dims = OsAlgebra::new(m.clone()).graded_dimensions(exec)?;
            let poincare = if dims.first() == Some(&1) {
                poincare_from_chi(&characteristic(&m), m.rank())?.display_in("t")
            } else {
                "0".into()
            };
            let text = format!("{dims:?}");
            Output::new(&versioned(DimsJson { rank: m.rank(), dimensions: dims, poincare }), text)
        }
        Command::Nf { input, element } => {
            let m = load_matroid(input)?;
            let j: ExteriorElementJson = read_json(element)?;
            let x = j.to_element(&m)?;
            let a = OsAlgebra::new(m.clone());
            let nf = a.normal_form(&x);
            let in_ideal = a.ideal_membership(&x)?.member;
            let labels: Vec<&str> = m.labels().collect();
            let pretty = nf.display_with(&labels);
            let body = NormalFormJson {
                input: ExteriorElementJson::from_element(&m, &x)?,
                normal_form: ExteriorElementJson::from_element(&m, &nf)?,
                pretty: pretty.clone(),
                in_ideal,
            };
            Output::new(&versioned(body), pretty)
        }
        Command::BuildFamily(input) => {
            let spec = family_spec(input)?;
            let (mn, pn, mp) = (build_mn(&spec)?, build_pn(&spec)?, build_mn_prime(&spec)?);
            let text = format!("M_n: {mn:?}\nP^n: {pn:?}\nM'_n: {mp:?}");
            let body = FamilyJson {
                spec: FamilySpecJson::from_spec(&spec),
                mn: MatroidJson::from_matroid(&mn),
                pn: MatroidJson::from_matroid(&pn),
                mn_prime: MatroidJson::from_matroid(&mp),
            };
            Output::new(&versioned(body), text)
        }
        Command::Certify { family, certificate: Some(path) } => {
            let _ = family;
            let cert: IsoCertificate = read_json(path)?;
            let re = cert.reverify()?;
            let passed = re.passed();
            let text = if passed {
                "certificate re-verified".to_owned()
            } else {
                format!("failed: {}", re.failures.join("; "))
            };
            Ok(Output::new(&versioned(ReverifyJson { passed, failures: re.failures }), text)?.verified(passed))
        }
        Command::Certify { family, certificate: None } => {
            let spec = family_spec(family)?;
            let cert = certify_iso(&spec, exec)?;
            let text = cert
                .stages
                .iter()
                .map(|s| format!("{} {}: {}", if s.passed { "ok" } else { "FAILED" }, s.name, s.detail))
                .collect::<Vec<_>>()
                .join("\n");
            let accepted = cert.accepted;
            Ok(Output { json: cert.to_json()?, text, verified: accepted })
        }
        Command::CorollaryCor { m, n, with_certificates } => {
            let (report, certs) = demonstrate_corollary(*m, *n, exec)?;
            let mut text: Vec<String> = report
                .members
                .iter()
                .map(|mm| {
                    format!(
                        "M'_{{{n},{}}}: longest circuit {}, certified {}",
                        mm.i, mm.longest_circuit, mm.certificate_accepted
                    )
                })
                .collect();
            text.extend(
                report.pairs.iter().map(|p| format!("({}, {}) isomorphic: {} [{}]", p.i, p.j, p.isomorphic, p.method)),
            );
            let accepted = report.accepted;
            let body = CorollaryJson { report, certificates: with_certificates.then_some(certs) };
            Ok(Output::new(&body, text.join("\n"))?.verified(accepted))
        }
        Command::ArrDecone(input) => {
            let (a, h) = load_arrangements(input, 1)?.remove(0);
            let a = if a.forms()[h].as_coordinate().is_some() { a } else { standardize(&a, h, "x")? };
            let d = decone(&a, h)?;
            let q = defining_polynomial(&d, exec);
            let body = ArrangementOut {
                arrangement: ArrangementJson::from_arrangement(&d),
                polynomial: MultiPolyJson::from_poly(&q, d.variables())?,
            };
            Output::new(&body, format!("{}\nQ = {q}", arrangement_text(&d)))
        }
        Command::ArrParallel(input) => {
            let mut both = load_arrangements(input, 2)?;
            let (a1, h1) = both.pop().expect("two arrangements");
            let (a0, h0) = both.pop().expect("two arrangements");
            let p = arr_parallel_connection(&a0, h0, &a1, h1)
                .context("relabel the hyperplanes so the two arrangements share no label")?;
            let q = defining_polynomial(&p, exec);
            let body = ArrangementOut {
                arrangement: ArrangementJson::from_arrangement(&p),
                polynomial: MultiPolyJson::from_poly(&q, p.variables())?,
            };
            Output::new(&body, format!("{}\nQ = {q}", arrangement_text(&p)))
        }
        Command::ArrVerifyHomo(input) => {
            let mut both = load_arrangements(input, 2)?;
            let (a1, h1) = both.pop().expect("two arrangements");
            let (a0, h0) = both.pop().expect("two arrangements");
            let r = verify_homogenization_identity(&a0, h0, &a1, h1, exec)
                .context("relabel the hyperplanes so the two arrangements share no label")?;
            let passed = r.passed();
            let text = format!(
                "{}\nQ(dP) = {}\nQ(dA0 + dA1) = {}",
                if passed { "identity holds" } else { "identity FAILS" },
                r.left,
                r.right
            );
            let body = HomoJson {
                passed,
                polynomial_identity: r.polynomial_identity,
                hyperplanes_equal: r.hyperplanes_equal,
                product_rule: r.product_rule,
                cstar_factors_left: r.cstar_factors_left,
                cstar_factors_right: r.cstar_factors_right,
                ambient_left: r.ambient_left,
                ambient_right: r.ambient_right,
                left: MultiPolyJson::from_poly(&r.left, &poly_vars(&r.left))?,
                right: MultiPolyJson::from_poly(&r.right, &poly_vars(&r.right))?,
            };
            Ok(Output::new(&versioned(body), text)?.verified(passed))
        }
        Command::Isomorphic { matroid } => {
            if matroid.len() != 2 {
                bail!("give exactly two --matroid files");
            }
            let a = load_matroid(&MatroidInput { matroid: Some(matroid[0].clone()), graph: None })?;
            let b = load_matroid(&MatroidInput { matroid: Some(matroid[1].clone()), graph: None })?;
            let map = are_isomorphic(&a, &b)?.map(|perm| {
                perm.iter().enumerate().map(|(i, &j)| (a.label(i).to_owned(), b.label(j).to_owned())).collect()
            });
            let text = match &map {
                Some(map) => format!("isomorphic: {map:?}"),
                None => "not isomorphic".to_owned(),
            };
            Output::new(&versioned(IsoJson { isomorphic: map.is_some(), map }), text)
        }
    }
}

fn write_atomically(path: &Path, content: &str) -> anyhow::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp =
        tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating a file in {}", dir.display()))?;
    tmp.write_all(content.as_bytes())?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn is_verification_failure(err: &anyhow::Error) -> bool {
    matches!(err.downcast_ref::<Error>(), Some(Error::Stage { .. } | Error::MethodDisagreement(_)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(if is_verification_failure(&e) { 1 } else { 2 });
        }
    };
    let mut content = match cli.format {
        Format::Json => output.json,
        Format::Text => output.text,
    };
    content.push('\n');
    let written = match &cli.out {
        Some(path) => write_atomically(path, &content),
        None => std::io::stdout().write_all(content.as_bytes()).map_err(Into::into),
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if output.verified {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
