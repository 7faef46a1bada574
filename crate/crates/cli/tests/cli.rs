use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const TRIANGLE: &str = "p mccq 3 3 3\nc 1 1\nc 2 2\nc 3 3\ne 1 2\ne 1 3\ne 2 3\n";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cliquegap")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn sidon_emits_a_certified_set() {
    let v = json(&run(&["sidon", "--n", "5", "--q", "3", "--t", "4", "--adaptive"]));
    assert_eq!(v["vectors"].as_array().unwrap().len(), 5);
    assert_eq!(v["certificate"]["t_independent"], true);
    assert_eq!(v["certificate"]["linear_sidon"], true);
    let fixed = json(&run(&["sidon", "--n", "3", "--q", "2", "--t", "4", "--d", "3"]));
    assert_eq!(fixed["vectors"], serde_json::json!(["001", "010", "100"]));
}

#[test]
fn sidon_reports_exhaustion() {
    let out = run(&["sidon", "--n", "4", "--q", "2", "--t", "4", "--d", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn reduce_then_solve_the_product() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("tri.mccq");
    let hprod = dir.path().join("tri.hprod");
    fs::write(&input, TRIANGLE).unwrap();
    let v = json(&run(&[
        "reduce",
        "--input",
        path(&input),
        "--q",
        "2",
        "--variant",
        "improved",
        "--materialize",
        "--out",
        path(&hprod),
    ]));
    assert_eq!(v["k"], 3);
    assert_eq!(v["d"], 3);
    assert_eq!(v["nodes"], "64");
    let text = fs::read_to_string(&hprod).unwrap();
    assert!(text.starts_with("p hprod 64 "));

    let s = json(&run(&["solve", "--input", path(&hprod)]));
    assert_eq!(s["omega"], 8);
    assert_eq!(s["witness"].as_array().unwrap().len(), 8);
    let d = json(&run(&["solve", "--input", path(&hprod), "--bound", "7"]));
    assert_eq!(d["exceeds"], true);
    let d = json(&run(&["solve", "--input", path(&hprod), "--bound", "8"]));
    assert_eq!(d["exceeds"], false);
}

#[test]
fn reduce_refuses_over_budget() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("tri.mccq");
    fs::write(&input, TRIANGLE).unwrap();
    let out = run(&[
        "reduce",
        "--input",
        path(&input),
        "--q",
        "2",
        "--variant",
        "basic",
        "--mode",
        "guaranteed",
        "--budget",
        "2047",
        "--materialize",
        "--out",
        path(&dir.path().join("h")),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    let v = json(&run(&["reduce", "--input", path(&input), "--q", "2", "--variant", "basic", "--mode", "guaranteed"]));
    assert_eq!(v["d"], 8);
}

#[test]
fn solve_reads_mccq_and_dimacs() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("g.mccq");
    fs::write(&m, TRIANGLE).unwrap();
    assert_eq!(json(&run(&["solve", "--input", path(&m)]))["omega"], 3);
    let d = dir.path().join("g.col");
    fs::write(&d, "c square\np edge 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n").unwrap();
    let v = json(&run(&["solve", "--input", path(&d)]));
    assert_eq!(v["omega"], 2);
    let bad = dir.path().join("g.txt");
    fs::write(&bad, "hello\n").unwrap();
    assert_eq!(run(&["solve", "--input", path(&bad)]).status.code(), Some(2));
}

#[test]
fn gap_on_the_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("tri.mccq");
    fs::write(&input, TRIANGLE).unwrap();
    let v = json(&run(&["gap", "--input", path(&input), "--q", "2", "--variant", "improved"]));
    assert_eq!(v["omega_H"], 8);
    assert_eq!(v["r1_pass"], true);
    assert_eq!(v["r2_pass"], Value::Null);
}

#[test]
fn generate_and_verify_a_suite() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("yes.mccq");
    let out = run(&["generate", "--kind", "planted-yes", "--n", "5", "--k", "3", "--seed", "4", "--out", path(&g)]);
    assert!(out.status.success());
    let suite = dir.path().join("suite.json");
    fs::write(
        &suite,
        r#"{
            "experiments": [
                {"name": "yes", "source": {"type": "file", "path": "yes.mccq"}, "q": 2, "variant": "improved"}
            ],
            "families": [
                {"name": "f", "kinds": ["planted-yes", "no-instance"], "n": [4], "k": [3], "q": [2],
                 "variants": ["basic"], "count": 1, "seed": 5}
            ]
        }"#,
    )
    .unwrap();
    let report = dir.path().join("report.json");
    let out = run(&["verify", "--suite", path(&suite), "--out", path(&report)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["summary"]["total"], 3);
    assert_eq!(v["summary"]["errors"], 0);
    assert_eq!(v["experiments"][0]["name"], "yes");
}

#[test]
fn verify_fails_when_an_experiment_fails() {
    let dir = tempfile::tempdir().unwrap();
    let suite = dir.path().join("suite.json");
    fs::write(
        &suite,
        r#"{"experiments": [{"name": "gone", "source": {"type": "file", "path": "missing.mccq"}, "q": 2, "variant": "basic"}]}"#,
    )
    .unwrap();
    let out = run(&["verify", "--suite", path(&suite), "--out", path(&dir.path().join("r.json"))]);
    assert_eq!(out.status.code(), Some(1));
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"experiments": 3}"#).unwrap();
    let out = run(&["verify", "--suite", path(&bad), "--out", path(&dir.path().join("r.json"))]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generate_to_stdout_is_valid_mccq() {
    let out = run(&["generate", "--kind", "no-instance", "--n", "6", "--k", "3", "--seed", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("p mccq 6 "));
}
