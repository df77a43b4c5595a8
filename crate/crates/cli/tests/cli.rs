use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn ueda(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ueda"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut all = vec!["atlas", "gen"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["-o", path.to_str().unwrap()]);
    let o = ueda(&all);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

#[test]
fn classify_trivial() {
    let dir = tempfile::tempdir().unwrap();
    let t = gen(dir.path(), "trivial.json", &["trivial"]);
    let o = ueda(&["classify", t.to_str().unwrap(), "--max-order", "6"]);
    assert_eq!(code(&o), 0);
    let r = stdout_json(&o);
    assert_eq!(r["result"]["verdict"], "InfiniteUpTo");
    assert_eq!(r["result"]["order"], 6);
}

#[test]
fn linearize_finite_type_exits_one() {
    let o = ueda(&["linearize", &data("perturbed-f2-zeta.json"), "--order", "4"]);
    assert_eq!(code(&o), 1);
    let r = stdout_json(&o);
    assert_eq!(r["error"]["kind"], "finite-type-detected");
    assert_eq!(r["error"]["obstruction"]["order"], 1);
}

#[test]
fn linearize_coboundary_writes_ledger() {
    let dir = tempfile::tempdir().unwrap();
    let ledger = dir.path().join("ledger.json");
    let o = ueda(&[
        "linearize",
        &data("coboundary.json"),
        "--order",
        "6",
        "--ledger",
        ledger.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = stdout_json(&o);
    assert_eq!(r["result"]["agreement_order"], 6);
    assert_eq!(r["certificate"]["certified"], true);
    let l: Value = serde_json::from_str(&std::fs::read_to_string(ledger).unwrap()).unwrap();
    assert_eq!(l["A"].as_array().unwrap().len(), 5);
}

#[test]
fn resolve_reports_ell() {
    let o = ueda(&["resolve", "--nbar", "1"]);
    assert_eq!(code(&o), 0);
    let r = stdout_json(&o);
    assert_eq!(r["result"]["ell"], serde_json::json!([1, 6]));
    assert_eq!(r["result"]["contraction"]["contractions"], 6);
    assert_eq!(
        r["result"]["resolution"]["divisor"],
        serde_json::json!([6, 3, 2, 1])
    );
}

#[test]
fn resolve_bad_cover_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"degree": 6, "pullback": [
            {"class": "C1", "components": 1, "ramification": 1},
            {"class": "E1", "components": 3, "ramification": 3},
            {"class": "E2", "components": 2, "ramification": 3},
            {"class": "E3", "components": 1, "ramification": 6}]}"#,
    )
    .unwrap();
    let o = ueda(&["resolve", "--cover", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("E1"));
}

#[test]
fn nontrivial_bundle_is_a_domain_outcome() {
    use ueda_core::atlas::{Atlas, AtlasParams};
    use ueda_core::json::Json;
    use ueda_core::series::{Coeff, LSeries, Scalar, Series};

    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("bundle.json");
    // c1 = 1 + ζ: winding 0 but a nonzero Pic⁰ class
    let p = AtlasParams::new(4);
    let mut w = Series::zero_like(p.n_w, &LSeries::zero(p.window()));
    w.set(
        1,
        LSeries::one(p.window()).add_c(&LSeries::monomial(p.window(), 1, Scalar::from_int(1))),
    );
    let a = Atlas::from_w(&p, &w).unwrap();
    std::fs::write(&t, a.to_json().to_string()).unwrap();

    let o = ueda(&["normal-bundle", t.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["result"]["trivial"], false);
    let o = ueda(&["classify", t.to_str().unwrap(), "--max-order", "2"]);
    assert_eq!(code(&o), 1, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout_json(&o)["error"]["kind"], "not-applicable");
}

#[test]
fn malformed_input_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let t = gen(dir.path(), "trivial.json", &["trivial", "--n-w", "4"]);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&t).unwrap()).unwrap();
    v["X_trans"]["lo"] = serde_json::json!(-3);
    std::fs::write(&t, v.to_string()).unwrap();
    let o = ueda(&["classify", t.to_str().unwrap(), "--max-order", "2"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("X_trans"));

    std::fs::write(&t, "{not json").unwrap();
    let o = ueda(&["classify", t.to_str().unwrap(), "--max-order", "2"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn validate_and_obstruction() {
    let o = ueda(&["atlas", "validate", &data("coboundary.json")]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["result"]["valid"], true);
    let o = ueda(&["obstruction", &data("coboundary.json"), "--order", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["result"]["vanishes"], true);
    let o = ueda(&[
        "obstruction",
        &data("perturbed-f2-zeta.json"),
        "--order",
        "2",
    ]);
    assert_eq!(code(&o), 1);
}

#[test]
fn reports_are_byte_identical() {
    let a = ueda(&["classify", &data("coboundary.json"), "--max-order", "5"]);
    let b = ueda(&["classify", &data("coboundary.json"), "--max-order", "5"]);
    assert_eq!(a.stdout, b.stdout);
    let a = ueda(&["resolve", "--nbar", "7"]);
    let b = ueda(&["resolve", "--nbar", "7"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&ueda(&["classify"])), 2);
    assert_eq!(
        code(&ueda(&[
            "atlas",
            "gen",
            "perturbed",
            "--order",
            "1",
            "--class",
            "x"
        ])),
        2
    );
    assert_eq!(code(&ueda(&["resolve", "--nbar", "0"])), 2);
}
