use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symdomain")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn list_names_every_check() {
    let out = run(&["--list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["params", "radial-check", "toeplitz-check", "peaking", "boundary-rep", "moments"] {
        assert!(text.contains(name), "{name} missing from --list");
    }
}

#[test]
fn params_rank_two_complex() {
    let out = run(&["--no-timing", "params", "--r", "2", "--a", "2", "--b", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["details"]["nu"], serde_json::json!(["3", "2"]));
    assert_eq!(v["details"]["d"], "4");
    assert_eq!(v["pass"], true);
}

#[test]
fn invalid_parameters_exit_two() {
    assert_eq!(run(&["params", "--r", "0"]).status.code(), Some(2));
    assert_eq!(run(&["params", "--r", "2", "--a", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["toeplitz-check", "--degree", "0"]).status.code(), Some(2));
    assert_eq!(run(&["toeplitz-check", "--model", "3x2"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic_without_timing() {
    let args = ["--no-timing", "--seed", "7", "toeplitz-check", "--model", "2x2", "--degree", "3", "--trials", "3"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["params"]["seed"], "7");
}

#[test]
fn moments_table_and_csv() {
    let dir = std::env::temp_dir().join(format!("symdomain-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("moments.csv");
    let out = run(&["--no-timing", "--csv", csv.to_str().unwrap(), "moments", "--d", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["details"].as_array().unwrap().len(), 6);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("case,value,target,rel_err,pass"));
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn boundary_residuals_on_two_by_two() {
    let out = run(&["--no-timing", "boundary-rep", "--model", "2x2", "--n-max", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let seqs = v["details"].as_array().unwrap();
    assert_eq!(seqs.len(), 2);
    assert_eq!(seqs[0]["residual"].as_array().unwrap().len(), 12);
}

#[test]
fn radial_check_reports_failure_with_exit_one() {
    // one node cannot integrate the degree-four moments
    let out = run(&["--no-timing", "radial-check", "--r", "2", "--max-weight", "4", "--nodes", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["pass"], false);
}
