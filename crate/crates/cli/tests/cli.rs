use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quiver-mukai"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn check_reports_subspace_equality() {
    let dir = tempfile::tempdir().unwrap();
    let q = write(dir.path(), "q.json", r#"{"vertices": ["s", "h"], "arrows": [["s", "h", 4]]}"#);
    let d = write(dir.path(), "d.json", r#"{"s": 1, "h": 1}"#);
    let out = run(&["check", &q, &d]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["hypotheses"]["coprime"], true);
    assert_eq!(v["verdict"]["dimension"], 3);
    assert_eq!(v["verdict"]["index"], 4);
    assert_eq!(v["verdict"]["mukai_equality"], true);
    let c = &v["verdict"]["classification"];
    assert_eq!(c["kind"], "subspace_equality");
    assert_eq!(c["sources"], 1);
    assert_eq!(c["thickness"], 4);
}

#[test]
fn invariants_outside_hypotheses_still_computes() {
    let dir = tempfile::tempdir().unwrap();
    let q = write(dir.path(), "q.json", r#"{"vertices": ["a", "b"], "arrows": [["a", "b", 3]]}"#);
    let d = write(dir.path(), "d.json", r#"{"a": 2, "b": 2}"#);
    let out = run(&["invariants", &q, &d]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["hypotheses"], "unmet");
    assert_eq!(v["dimension"], 5);
}

#[test]
fn malformed_input_names_the_problem() {
    let dir = tempfile::tempdir().unwrap();
    let d = write(dir.path(), "d.json", r#"{"a": 1}"#);
    let bad = write(dir.path(), "bad.json", "{\n  \"vertices\": [\"a\"],\n  \"arrows\": 7\n}");
    let out = run(&["check", &bad, &d]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");

    let unknown = write(dir.path(), "u.json", r#"{"vertices": ["a"], "arrows": [["a", "z"]]}"#);
    let out = run(&["check", &unknown, &d]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("arrows[0]"));

    let cyclic = write(dir.path(), "c.json", r#"{"vertices": ["a", "b"], "arrows": [["a", "b"], ["b", "a"]]}"#);
    let d2 = write(dir.path(), "d2.json", r#"{"a": 1, "b": 1}"#);
    assert_eq!(run(&["check", &cyclic, &d2]).status.code(), Some(1));
    assert_eq!(run(&["check", &dir.path().join("missing").to_string_lossy(), &d]).status.code(), Some(1));
}

#[test]
fn lemma_check_reports_witness() {
    let out = run(&["lemma", "check", "--a", "1,1", "--b", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["verdict"]["hypothesis_holds"], false);
    assert_eq!(v["verdict"]["witness"], serde_json::json!([[1], [0]]));

    let v = stdout_json(&run(&["lemma", "check", "--a", "2", "--b", "3"]));
    assert_eq!(v["verdict"]["hypothesis_holds"], true);
    assert_eq!(v["distinct_grid_values"], 4);
    assert_eq!(v["grid_lower_bound"], 3);
}

#[test]
fn small_sweep_writes_report_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let csv = dir.path().join("eq.csv");
    let out = bin()
        .args(["sweep", "--max-vertices", "2", "--max-mult", "6", "--max-dim", "3", "--cross-check"])
        .arg("--report")
        .arg(&report)
        .arg("--csv")
        .arg(&csv)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert!(v["counterexamples"].as_array().unwrap().is_empty());
    let rows: Vec<String> = fs::read_to_string(&csv).unwrap().lines().map(String::from).collect();
    assert_eq!(rows[0], "n,arrows,d,dim,rank,index");
    // thin Kronecker quivers with 4, 5 and 6 arrows
    assert_eq!(rows.len(), 4);
}

#[test]
fn sweep_over_budget_fails() {
    let out = run(&["sweep", "--max-vertices", "4", "--budget", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn lemma_sweep_confirms() {
    let out = run(&["lemma", "sweep", "--max-k", "2", "--max-l", "2", "--max-value", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert!(v["violations"].as_array().unwrap().is_empty());
    assert!(v["hypothesis_instances"].as_u64().unwrap() > 0);
}
