use std::process::{Command, Output};

fn polyineq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyineq")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn worked_instance_checks_clean() {
    let out = polyineq(&[
        "check", "--ineq", "M1", "--poly", "[[0,0],[0,0],[1,0]]", "--R", "2", "--alpha", "0.3", "--beta", "0.7",
        "--a", "0.4", "--z", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = &json(&out)[0];
    assert!(report["margin"].as_f64().unwrap().abs() < 1e-10);
    assert!((report["lhs"].as_f64().unwrap() - 10.13).abs() < 1e-10);
}

#[test]
fn inadmissible_alpha_is_a_usage_error() {
    let out = polyineq(&["check", "--ineq", "M1", "--poly", "[[0,0],[0,0],[1,0]]", "--alpha", "1.5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("alpha"));
}

#[test]
fn malformed_input_exits_one() {
    assert_eq!(polyineq(&["check", "--ineq", "Q7", "--poly", "[[1,0]]"]).status.code(), Some(1));
    assert_eq!(polyineq(&["check", "--ineq", "M1", "--poly", "[[1,0],"]).status.code(), Some(1));
    assert_eq!(polyineq(&["certify", "--ineq", "M1", "--poly", "[[1,0],[1,0]]", "--radius-grid", "0.5"]).status.code(), Some(1));
    assert_eq!(polyineq(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn help_exits_zero() {
    assert_eq!(polyineq(&["--help"]).status.code(), Some(0));
}

#[test]
fn planted_search_reports_violation() {
    let out = polyineq(&["search", "--ineq", "M1", "--budget", "1000", "--max-degree", "6", "--rhs-factor", "0.9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(json(&out)["best_margin"].as_f64().unwrap() < 0.0);
}

#[test]
fn sweep_csv_header_and_file_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let args = [
        "sweep", "--ineq", "L4", "--degrees", "1..6", "--format", "csv", "--out", path.to_str().unwrap(),
    ];
    let out = polyineq(&args);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "ineq,params,radius,lhs,rhs,margin,relative_margin,witness_z,hypothesis_ok,notes"
    );
    assert_eq!(lines.count(), 6);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let sweep = ["sweep", "--ineq", "M3", "--region", "outside", "--seed", "5", "--R", "1,2", "--degrees", "3,4"];
    assert_eq!(polyineq(&sweep).stdout, polyineq(&sweep).stdout);
    let search = ["search", "--ineq", "L6", "--budget", "60", "--seed", "3"];
    assert_eq!(polyineq(&search).stdout, polyineq(&search).stdout);
}

#[test]
fn probe_finds_equality() {
    let out = polyineq(&["probe", "--ineq", "M5", "--family", "zn_plus_1", "--degrees", "2..8"]);
    assert_eq!(out.status.code(), Some(0));
    assert!((json(&out)["best_ratio"].as_f64().unwrap() - 1.0).abs() < 1e-10);
}

#[test]
fn pair_inequality_reads_dominant_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.json");
    std::fs::write(&f, "[[0.5,0],[0,0],[0,0],[1,0]]").unwrap();
    let out = polyineq(&[
        "certify", "--ineq", "DOM-A", "--poly", "[[-0.25,0],[0,0],[0,0],[0.25,0]]", "--dominant", f.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out).as_array().unwrap().iter().all(|r| r["hypothesis_ok"] == true));
}

#[test]
fn quick_selftest_passes() {
    let out = polyineq(&["selftest", "--quick"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert_eq!(text.lines().filter(|l| l.contains("PASS")).count(), 10);
}
