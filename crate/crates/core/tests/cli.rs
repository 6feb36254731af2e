//! End-to-end CLI checks: exit codes, formats, and the circuit dump.

mod common;

use std::process::{Command, Output};

fn qfta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfta"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn analyze_reports_all_estimates() {
    let out = qfta(&[
        "analyze",
        common::DP_FILE,
        "--shots",
        "50000",
        "--seed",
        "42",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("9 basic events, 5 gates (14 qubits)"));
    assert!(text.contains("analytic"));
    assert!(text.contains("brute force"));
    assert!(text.contains("exact"));
    assert!(text.contains("sampled"));
    assert!(text.contains("0.32267788"));
}

#[test]
fn analyze_missing_file_exits_2() {
    let out = qfta(&["analyze", "missing.ft"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn analyze_invalid_file_exits_1_with_line_number() {
    let dir = std::env::temp_dir();
    let path = dir.join("qfta_invalid_test.ft");
    std::fs::write(&path, "basic a p=0.5\ngate g AND a b\ntop g\n").unwrap();
    let out = qfta(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
    std::fs::remove_file(&path).ok();
}

#[test]
fn analyze_analytic_mode_skips_sampling() {
    let out = qfta(&["analyze", common::DP_FILE, "--mode", "analytic"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("analytic"));
    assert!(!text.contains("sampled"));
    assert!(!text.contains("scenarios"));
}

#[test]
fn compile_dump_is_deterministic() {
    let a = qfta(&["compile", common::DP_FILE]);
    let b = qfta(&["compile", common::DP_FILE]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let dump = stdout(&a);
    assert!(dump.starts_with("qubits 14\n"));
    let lines: Vec<&str> = dump.lines().collect();
    assert_eq!(lines.len(), 34);
    assert!(lines[1..10].iter().all(|l| l.starts_with("ry q")));
    assert_eq!(dump.matches("\nmcx ").count(), 5);
}

#[test]
fn compile_two_event_and() {
    let dir = std::env::temp_dir();
    let path = dir.join("qfta_two_event_and.ft");
    std::fs::write(&path, "basic a p=0.5\nbasic b p=0.5\ngate g AND a b\ntop g\n").unwrap();
    let out = qfta(&["compile", path.to_str().unwrap()]);
    assert!(out.status.success());
    let dump = stdout(&out);
    assert!(dump.starts_with("qubits 3\n"));
    assert_eq!(dump.matches("mcx ").count(), 1);
    std::fs::remove_file(&path).ok();
}

#[test]
fn compile_dump_to_file() {
    let dir = std::env::temp_dir();
    let dump_path = dir.join("qfta_dump_test.txt");
    let out = qfta(&[
        "compile",
        common::DP_FILE,
        "--dump",
        dump_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let dump = std::fs::read_to_string(&dump_path).unwrap();
    assert!(dump.starts_with("qubits 14\n"));
    std::fs::remove_file(&dump_path).ok();
}

#[test]
fn scenarios_csv_has_header_and_dominant_row() {
    let out = qfta(&[
        "scenarios",
        common::DP_FILE,
        "--shots",
        "100000",
        "--seed",
        "3",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let csv = stdout(&out);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("bitstring,count,frequency,failed_components")
    );
    let first = lines.next().unwrap();
    assert!(first.contains("human_error_r1;human_error_r2"), "{first}");
}

#[test]
fn scenarios_empty_when_nothing_fails() {
    let dir = std::env::temp_dir();
    let path = dir.join("qfta_never_fails.ft");
    std::fs::write(&path, "basic a p=0\nbasic b p=0\ngate g OR a b\ntop g\n").unwrap();
    let out = qfta(&[
        "scenarios",
        path.to_str().unwrap(),
        "--shots",
        "1000",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "bitstring,count,frequency,failed_components\n"
    );
    std::fs::remove_file(&path).ok();
}

#[test]
fn full_layout_reports_every_qubit() {
    let out = qfta(&[
        "analyze",
        common::DP_FILE,
        "--shots",
        "10000",
        "--layout",
        "full",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let layout = json["bit_layout"].as_array().unwrap();
    assert_eq!(layout.len(), 14);
    let scenario = &json["scenarios"][0]["bitstring"];
    assert_eq!(scenario.as_str().unwrap().len(), 14);
}
