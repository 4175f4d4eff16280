use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use matspec::hyper::{neghmf_series, HyperParams};
use matspec::verify::registry::FUNCTIONS;
use matspec::verify::CATALOG;
use matspec::{EvalConfig, SquareMatrix, C64};
use serde_json::{json, Value};

fn matspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matspec")).args(args).env_remove("MATSPEC_CONFIG").output().expect("run matspec")
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

fn matrix(v: &Value) -> SquareMatrix {
    serde_json::from_value(v.clone()).expect("matrix")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("matspec-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn eval_gamma_of_identity() {
    let o = matspec(&["eval", "gamma", "--input", r#"{"A": [[1, 0], [0, 1]]}"#]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["function"], "gamma");
    assert_eq!(v["converged"], true);
    assert!(matrix(&v["value"]).relative_distance(&SquareMatrix::identity(2)) < 1e-11);
}

#[test]
fn eval_rejects_non_positive_stable_extension() {
    let input = json!({ "A": [[1]], "B": [[2]], "X": [[1]], "Z": [[1]], "Y": [[-0.5]] }).to_string();
    let o = matspec(&["eval", "beta_new_extended", "--input", &input]);
    assert_eq!(o.status.code(), Some(1));
    let err = &json_out(&o)["error"];
    assert_eq!(err["kind"], "precondition");
    assert_eq!(err["hypothesis"], "positive stable");
    assert_eq!(err["role"], "Y");
    assert!(err["anchor"].as_str().unwrap().contains("3.2"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("positive stable"));
}

#[test]
fn eval_matches_the_library_bit_for_bit() {
    let input = json!({
        "A": [[1.0]], "B": [[2.0]], "A1": [[0.8]], "B1": [[1.1]], "C1": [[2.3]], "Y": [[0.2]], "z": 0.3
    });
    let o = matspec(&["eval", "neghmf_series", "--input", &input.to_string()]);
    assert_eq!(o.status.code(), Some(0));
    let cli = matrix(&json_out(&o)["value"]);
    let s = |v: f64| SquareMatrix::real_scalar(1, v);
    let p = HyperParams { a: s(1.0), b: s(2.0), a1: Some(s(0.8)), b1: s(1.1), c1: s(2.3), y: s(0.2), z: C64::new(0.3, 0.0) };
    let lib = neghmf_series(&p, &EvalConfig::default()).unwrap();
    assert_eq!(cli, lib.value);
}

#[test]
fn eval_reads_files_and_stdin_and_writes_output() {
    let input = scratch("gamma.json");
    std::fs::write(&input, r#"{"A": [[2.0]]}"#).unwrap();
    let out = scratch("gamma-out.json");
    let o = matspec(&["eval", "gamma", "--input", input.to_str().unwrap(), "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(matrix(&v["value"]).relative_distance(&SquareMatrix::identity(1)) < 1e-11);

    let mut child = Command::new(env!("CARGO_BIN_EXE_matspec"))
        .args(["eval", "pochhammer", "--input", "-"])
        .env_remove("MATSPEC_CONFIG")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(br#"{"A": [[0.5, 0], [0, 2]], "n": 3}"#).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(matrix(&json_out(&o)["value"]).relative_distance(&SquareMatrix::real_diag(&[1.875, 24.0])) < 1e-15);
}

#[test]
fn eval_reports_nonconvergence_with_exit_two() {
    let input = r#"{"A1": [[1]], "B1": [[1]], "C1": [[2]], "z": 0.9}"#;
    let o = matspec(&["eval", "gauss_2f1", "--max-terms", "5", "--input", input]);
    assert_eq!(o.status.code(), Some(2));
    let v = json_out(&o);
    assert_eq!(v["converged"], false);
    assert!(!v["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn malformed_json_reports_position() {
    let o = matspec(&["eval", "gamma", "--input", "{\"A\": [[1, 0]"]);
    assert_eq!(o.status.code(), Some(1));
    let err = &json_out(&o)["error"];
    assert_eq!(err["kind"], "parse");
    assert_eq!(err["line"], 1);
    assert!(err["column"].as_u64().unwrap() > 0);
}

#[test]
fn unknown_ids_exit_one_and_list_valid_ids() {
    let o = matspec(&["eval", "no_such_function", "--input", "{}"]);
    assert_eq!(o.status.code(), Some(1));
    let err = &json_out(&o)["error"];
    assert_eq!(err["kind"], "unknown_id");
    assert!(err["valid_ids"].as_array().unwrap().iter().any(|v| v == "beta_new_extended"));

    let o = matspec(&["verify", "unknown-id"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(json_out(&o)["error"]["valid_ids"].as_array().unwrap().iter().any(|v| v == "pfaff-4.11"));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "beta-recurrence-3.7", "--draws", "10", "--seed", "7"];
    let a = matspec(&args);
    let b = matspec(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json_out(&a);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["passed"], true);
    assert_eq!(v["cases"][0]["draws"], 10);
    assert_eq!(v["cases"][0]["failures"], 0);
}

#[test]
fn verify_reads_defaults_from_config_file() {
    let cfg = scratch("config.json");
    std::fs::write(&cfg, r#"{"seed": 3, "draws": 2, "orders": [1]}"#).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_matspec")).args(["verify", "beta-symmetry"]).env("MATSPEC_CONFIG", &cfg).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["seed"], 3);
    assert_eq!(v["orders"], json!([1]));
    assert_eq!(v["cases"][0]["draws"], 2);

    // Flags win over the file.
    let o = Command::new(env!("CARGO_BIN_EXE_matspec"))
        .args(["verify", "beta-symmetry", "--seed", "4"])
        .env("MATSPEC_CONFIG", &cfg)
        .output()
        .unwrap();
    assert_eq!(json_out(&o)["seed"], 4);

    std::fs::write(&cfg, r#"{"sead": 3}"#).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_matspec")).args(["verify", "beta-symmetry"]).env("MATSPEC_CONFIG", &cfg).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn diagnostics_do_not_fail_verify() {
    let o = matspec(&["verify", "xb1-factorization-diagnostic", "--draws", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["cases"][0]["class"], "diagnostic");
    assert!(v["cases"][0]["max_residual"].as_f64().unwrap() > 1e-4);
}

#[test]
fn list_functions_and_cases() {
    let o = matspec(&["list", "functions"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("beta_new_extended (Eq. 3.2)"));
    assert!(!text.contains("cases:"));

    let text = String::from_utf8(matspec(&["list", "cases"]).stdout).unwrap();
    assert!(text.contains("pfaff-4.11"));
    assert!(text.contains("[diagnostic, criterion 10]"));
}

#[test]
fn list_json_matches_the_library_catalog() {
    let o = matspec(&["list", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    let fids: Vec<&str> = v["functions"].as_array().unwrap().iter().map(|f| f["id"].as_str().unwrap()).collect();
    let cids: Vec<&str> = v["cases"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(fids, FUNCTIONS.iter().map(|f| f.id).collect::<Vec<_>>());
    assert_eq!(cids, CATALOG.iter().map(|c| c.id).collect::<Vec<_>>());
    assert!(v["cases"][0]["anchor"].is_string());
}

#[test]
fn every_function_is_reachable() {
    // An empty input reaches the function's own argument parsing, never the
    // unknown-id path.
    for f in FUNCTIONS {
        let o = matspec(&["eval", f.id, "--input", "{}"]);
        let v = json_out(&o);
        if o.status.code() == Some(1) {
            assert_ne!(v["error"]["kind"], "unknown_id", "{}", f.id);
        }
    }
}
