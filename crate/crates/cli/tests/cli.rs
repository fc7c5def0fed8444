use std::path::PathBuf;
use std::process::{Command, Output};

use osforge::certify::{CorollaryReport, IsoCertificate};
use osforge::io::{ArrangementJson, ExteriorElementJson, MatroidJson, MultiPolyJson, PolynomialJson, UnivariateJson};
use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn osforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_osforge")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn tutte_of_c3() {
    let out = osforge(&["tutte", "--matroid", &data("c3.json")]);
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["pretty"], "x^2 + x + y");
    let p: PolynomialJson = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(p.to_poly().to_string(), "x^2 + x + y");
}

#[test]
fn chi_and_beta_from_graphs() {
    let chi: UnivariateJson =
        serde_json::from_slice(&osforge(&["chi", "--graph", &data("k4_graph.json")]).stdout).unwrap();
    // T(1 - t, 0) for K4.
    assert_eq!(chi.coeffs, vec![6, -11, 6, -1]);
    let beta = json(&osforge(&["beta", "--graph", &data("g2_graph.json")]));
    assert_eq!(beta["beta"], 1);
}

#[test]
fn os_dims_of_two_triangles() {
    let v = json(&osforge(&["os-dims", "--matroid", &data("c3_plus_c3.json")]));
    assert_eq!(v["dimensions"], serde_json::json!([1, 6, 13, 12, 4]));
}

#[test]
fn normal_form_round_trips() {
    let out = osforge(&["nf", "--matroid", &data("c3.json"), "--element", &data("c3_element.json")]);
    let v = json(&out);
    assert_eq!(v["pretty"], "-e[1,2] + e[1,3]");
    let nf: ExteriorElementJson = serde_json::from_value(v["normal_form"].clone()).unwrap();
    assert_eq!(nf.terms.len(), 2);
}

#[test]
fn certify_then_recheck() {
    let dir = tempfile::tempdir().unwrap();
    let cert_path = dir.path().join("cert.json");
    let cert_str = cert_path.to_str().unwrap();
    let out =
        osforge(&["certify", "--seed-matroid", &data("c3.json"), "--basepoint", "1", "--n", "3", "--out", cert_str]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&cert_path).unwrap();
    let cert = IsoCertificate::from_json(&text).unwrap();
    assert!(cert.accepted);
    assert_eq!(cert.spec.basepoint, "m1");

    let recheck = json(&osforge(&["certify", "--certificate", cert_str]));
    assert_eq!(recheck["passed"], true);

    let mut forged: Value = serde_json::from_str(&text).unwrap();
    forged["dimensions"]["target"][1] = serde_json::json!(99);
    let forged_path = dir.path().join("forged.json");
    std::fs::write(&forged_path, serde_json::to_string(&forged).unwrap()).unwrap();
    let out = osforge(&["certify", "--certificate", forged_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn certify_graph_seed_and_gm_seed() {
    let v = json(&osforge(&["certify", "--graph", &data("k4_graph.json"), "--basepoint", "k01", "--n", "4"]));
    assert_eq!(v["accepted"], true);
    let v = json(&osforge(&["certify", "--m", "2", "--n", "6", "--i", "3"]));
    assert_eq!(v["accepted"], true);
}

#[test]
fn build_family_outputs_read_back() {
    let v = json(&osforge(&["build-family", "--graph", &data("g2_graph.json"), "--basepoint", "s2", "--n", "4"]));
    for key in ["mn", "pn", "mn_prime"] {
        let m: MatroidJson = serde_json::from_value(v[key].clone()).unwrap();
        assert!(m.to_matroid().unwrap().validate().passed(), "{key}");
    }
    let mp: MatroidJson = serde_json::from_value(v["mn_prime"].clone()).unwrap();
    assert_eq!(mp.ground.len(), 9);
}

#[test]
fn family_demonstration_report() {
    let out = osforge(&["corollary-cor", "--m", "2", "--n", "6"]);
    let v = json(&out);
    let report: CorollaryReport = serde_json::from_value(v["report"].clone()).unwrap();
    assert!(report.accepted);
    let longest: Vec<usize> = report.members.iter().map(|m| m.longest_circuit).collect();
    assert_eq!(longest, vec![7, 8]);
    assert!(v.get("certificates").is_none());
}

#[test]
fn arrangement_commands() {
    let out = osforge(&["arr-decone", "--arrangement", &data("c3_arrangement.json"), "--hyperplane", "h1"]);
    let v = json(&out);
    let d: ArrangementJson = serde_json::from_value(v["arrangement"].clone()).unwrap();
    assert_eq!(d.to_arrangement().unwrap().len(), 2);
    let q: MultiPolyJson = serde_json::from_value(v["polynomial"].clone()).unwrap();
    assert_eq!(q.to_poly().unwrap().to_string(), q.pretty);

    let pair = ["--arrangement", &data("c3_arrangement.json"), "--arrangement", &data("generic4_arrangement.json")];
    let v = json(&osforge(&[&["arr-parallel"], &pair[..]].concat()));
    let p: ArrangementJson = serde_json::from_value(v["arrangement"].clone()).unwrap();
    assert_eq!(p.to_arrangement().unwrap().len(), 3 + 4 - 1);

    let v = json(&osforge(&[&["arr-verify-homo"], &pair[..], &["--hyperplane", "h2", "--hyperplane", "g4"]].concat()));
    assert_eq!(v["passed"], true);
    assert_eq!(v["left"], v["right"]);
}

#[test]
fn isomorphic_command() {
    let v = json(&osforge(&["isomorphic", "--matroid", &data("c3.json"), "--matroid", &data("c3.json")]));
    assert_eq!(v["isomorphic"], true);
    let v = json(&osforge(&["isomorphic", "--matroid", &data("c3.json"), "--matroid", &data("c3_plus_c3.json")]));
    assert_eq!(v["isomorphic"], false);
}

#[test]
fn outputs_are_deterministic() {
    let args = ["certify", "--graph", &data("g2_graph.json"), "--basepoint", "s3", "--n", "3"];
    let a = osforge(&args);
    let b = osforge(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = osforge(&[&args[..], &["--sequential"]].concat());
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(osforge(&["tutte"]).status.code(), Some(2));
    assert_eq!(osforge(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(osforge(&["tutte", "--matroid", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(osforge(&["certify", "--matroid", &data("c3.json"), "--n", "3"]).status.code(), Some(2));
    assert_eq!(osforge(&["corollary-cor", "--m", "2", "--n", "5"]).status.code(), Some(2));
}

#[test]
fn invalid_matroid_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"ground":["a","b","c"],"circuits":[["a","b"],["b","c"]]}"#).unwrap();
    let out = osforge(&["validate", "--matroid", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], false);
}

#[test]
fn text_format() {
    let out = osforge(&["os-dims", "--matroid", &data("c3.json"), "--format", "text"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "[1, 3, 2]");
}
