//! End-to-end tests of the binary: exit codes, diagnostics, JSON artifacts
//! and byte-for-byte determinism.

use std::path::Path;
use std::process::{Command, Output};

fn tiltlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tiltlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_file(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.display().to_string()
}

#[test]
fn census_counts_by_family() {
    let out = tiltlab(&["census", "--family", "A2", "--p", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("3 indecomposables"));

    let out = tiltlab(&["census", "--family", "D4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("12 indecomposables"));
}

#[test]
fn census_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("census.json");
    let out = tiltlab(&[
        "census",
        "--family",
        "A3",
        "--json",
        json_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(value["p"], 2);
    assert_eq!(value["indecomposables"].as_array().unwrap().len(), 6);
    assert_eq!(value["homTable"].as_array().unwrap().len(), 6);
    assert_eq!(value["extTable"].as_array().unwrap().len(), 6);
}

#[test]
fn census_rejects_malformed_json_with_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(dir.path(), "broken.json", "{ not json");
    let out = tiltlab(&["census", "--quiver", &path]);
    assert_eq!(out.status.code(), Some(2));
    let diag: serde_json::Value = serde_json::from_str(stderr(&out).trim()).unwrap();
    assert!(diag["error"].as_str().unwrap().contains("malformed"));
}

#[test]
fn census_rejects_non_dynkin_quiver() {
    let dir = tempfile::tempdir().unwrap();
    // two parallel arrows: the Kronecker quiver is not representation-finite
    let path = write_file(
        dir.path(),
        "kronecker.json",
        r#"{"vertices": 2, "arrows": [[1, 2], [1, 2]]}"#,
    );
    let out = tiltlab(&["census", "--quiver", &path]);
    assert_eq!(out.status.code(), Some(2));
    let diag: serde_json::Value = serde_json::from_str(stderr(&out).trim()).unwrap();
    assert!(diag["error"].as_str().unwrap().contains("multiple edge"));
}

#[test]
fn census_rejects_directed_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(
        dir.path(),
        "cycle.json",
        r#"{"vertices": 2, "arrows": [[1, 2], [2, 1]]}"#,
    );
    let out = tiltlab(&["census", "--quiver", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cycle"));
}

#[test]
fn quiver_file_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(
        dir.path(),
        "a2.json",
        r#"{"vertices": 2, "arrows": [[1, 2]]}"#,
    );
    let out = tiltlab(&["verify", "--quiver", &path]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn enumerate_support_tilting_a2() {
    let out = tiltlab(&["enumerate", "--set", "support-tilting", "--family", "A2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("5 entries"));

    let out = tiltlab(&[
        "enumerate",
        "--set",
        "support-tilting",
        "--family",
        "A2",
        "--sincere",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("2 entries"), "two tilting classes");
}

#[test]
fn enumerate_antichains_a1() {
    let out = tiltlab(&["enumerate", "--set", "antichains", "--family", "A1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("2 entries"));
}

#[test]
fn enumerate_rejects_unknown_set() {
    let out = tiltlab(&["enumerate", "--set", "widgets", "--family", "A2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown set name"));
}

#[test]
fn verify_a3_counts_14() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("report.json");
    let out = tiltlab(&[
        "verify",
        "--family",
        "A3",
        "--p",
        "2",
        "--json",
        json_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    for i in 1..=7 {
        assert_eq!(report["counts"][format!("set{i}")], 14);
    }
    assert_eq!(report["rootPoset"]["pass"], true);
    assert_eq!(report["oracle"]["ran"], true);
    assert_eq!(report["oracle"]["torsionMatch"], true);
    assert_eq!(report["oracle"]["thickMatch"], true);
}

#[test]
fn verify_is_field_independent_on_a2() {
    for p in ["2", "3", "5"] {
        let out = tiltlab(&["verify", "--family", "A2", "--p", p]);
        assert!(out.status.success(), "p = {p}");
        assert!(stdout(&out).contains("set1=5"), "p = {p}");
    }
}

#[test]
fn verify_rejects_non_prime_modulus() {
    let out = tiltlab(&["verify", "--family", "A2", "--p", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not prime"));
}

#[test]
fn verify_rejects_bad_oracle_mode() {
    let out = tiltlab(&["verify", "--family", "A2", "--oracle", "sometimes"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_with_oracle_off_still_passes() {
    let out = tiltlab(&["verify", "--family", "A2", "--oracle", "off"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("oracle: skipped"));
}

#[test]
fn table_family_a_totals_are_catalan() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("table.json");
    let out = tiltlab(&[
        "table",
        "--family",
        "A",
        "--max-n",
        "3",
        "--json",
        json_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let table: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    let rows = table["rows"].as_array().unwrap();
    let totals: Vec<u64> = rows.iter().map(|r| r["total"].as_u64().unwrap()).collect();
    assert_eq!(totals, vec![2, 5, 14]);
    // the n = 2 row sums to its total
    let row2: u64 = rows[1]["byRank"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .sum();
    assert_eq!(row2, 5);
}

#[test]
fn table_rejects_excessive_rank() {
    let out = tiltlab(&["table", "--family", "A", "--max-n", "40"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_rejects_unknown_family() {
    let out = tiltlab(&["table", "--family", "E", "--max-n", "6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.json");
    let second = dir.path().join("second.json");
    let out1 = tiltlab(&[
        "verify",
        "--family",
        "A2",
        "--json",
        first.to_str().unwrap(),
    ]);
    let out2 = tiltlab(&[
        "verify",
        "--family",
        "A2",
        "--json",
        second.to_str().unwrap(),
    ]);
    assert!(out1.status.success() && out2.status.success());
    assert_eq!(out1.stdout, out2.stdout);
    assert_eq!(
        std::fs::read(&first).unwrap(),
        std::fs::read(&second).unwrap()
    );
}

#[test]
fn missing_quiver_source_is_a_usage_error() {
    let out = tiltlab(&["census", "--p", "2"]);
    assert_eq!(out.status.code(), Some(2));
}
