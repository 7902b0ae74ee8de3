//! End-to-end checks of the command-line interface: exit codes,
//! parseable JSON output, determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bcf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_stdout(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn classify_exit_codes() {
    let out = run(&["classify", &fixture("identity.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_stdout(&out);
    assert_eq!(v["status"], "solvable_determinate");
    assert_eq!(v["classification"]["tag"], "se_minimally_positive");

    let out = run(&["classify", &fixture("nevanlinna.json")]);
    assert_eq!(out.status.code(), Some(2));
    let v = json_stdout(&out);
    assert_eq!(v["status"], "unsolvable");
    assert_eq!(v["classification"]["tag"], "positive_singular_not_se_minimal");
    assert_eq!(v["rank"], 2);

    let out = run(&["classify", &fixture("pd_indeterminate.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_stdout(&out)["status"], "solvable_indeterminate");

    let out = run(&["classify", &fixture("rho_odd.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_stdout(&out)["reason"], "rho_odd");

    let out = run(&["classify", &fixture("positive_residue.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_stdout(&out)["reason"], "residue_positive");
}

#[test]
fn solve_outputs() {
    let out = run(&["solve", &fixture("geometric.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_stdout(&out);
    assert_eq!(v["solution"]["type"], "exact");
    // z/(1 - z), normalized to a monic denominator: -z/(z - 1).
    assert_eq!(v["solution"]["num"], serde_json::json!(["0", "-1"]));
    assert_eq!(v["solution"]["den"], serde_json::json!(["-1", "1"]));
    assert_eq!(v["solution"]["degree"], 1);

    let out = run(&["solve", &fixture("pole.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_stdout(&out);
    assert_eq!(v["solution"]["pole_residue"], "-1");

    let out = run(&["solve", &fixture("even_corner_fail.json")]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["solve", &fixture("pd_indeterminate.json"), "--tail", "1/2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_stdout(&out)["solution"]["type"], "exact");

    let out = run(&["solve", &fixture("interior.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_stdout(&out)["solution"]["type"], "numeric");

    let out = run(&["solve", &fixture("complex_rho2.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_stdout(&out)["solution"]["type"], "numeric");
}

#[test]
fn params_output() {
    let out = run(&["params", &fixture("pd_indeterminate.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_stdout(&out);
    assert_eq!(v["s"].as_array().unwrap().len(), 2);
    assert_eq!(v["t"][0], "1");
    assert_eq!(v["k_const"], "1");

    // Determinate problems have no free parametrization.
    let out = run(&["params", &fixture("identity.json")]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["params", &fixture("shifted_node.json")]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_and_sample() {
    for f in ["geometric.json", "pd_indeterminate.json", "pole.json", "interior.json"] {
        let out = run(&["verify", &fixture(f)]);
        assert_eq!(out.status.code(), Some(0), "verify failed for {f}");
        let v = json_stdout(&out);
        assert_eq!(v["ok"], true, "report not ok for {f}");
    }
    let out = run(&["verify", &fixture("nevanlinna.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_stdout(&out)["classification_agrees"], true);

    let out = run(&["sample", &fixture("pd_indeterminate.json"), "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_stdout(&out);
    assert!(v["min_im"].as_f64().unwrap() >= -1e-9);
}

#[test]
fn deterministic_output() {
    let args = ["sample", &fixture("pd_indeterminate.json"), "--seed", "42", "--grid", "500"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["classify", &fixture("nevanlinna.json")]);
    let d = run(&["classify", &fixture("nevanlinna.json")]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn error_handling() {
    let out = run(&["classify", "/nonexistent.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    let dir = std::env::temp_dir().join("bcf-cli-int");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"x": "1/0", "a": ["0"]}"#).unwrap();
    let out = run(&["classify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["solve", &fixture("pd_indeterminate.json"), "--tail", "affine:-1,0"]);
    assert_eq!(out.status.code(), Some(1));
}
