//! End-to-end checks of the `mdk` binary: exit codes, determinism, and
//! output shapes.

use std::process::{Command, Output};

fn mdk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mdk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn check_word_verdicts_and_exit_codes() {
    let out = mdk(&["check-word", "a1 b2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("forbidden"));

    let out = mdk(&["check-word", "b2 b2", "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("agrees"));

    let out = mdk(&["check-word", ""]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("admissible"));

    let out = mdk(&["check-word", "x1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(mdk(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(mdk(&["verify-paper", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(mdk(&["matrices", "--format", "nonsense"]).status.code(), Some(2));
}

#[test]
fn matrix_file_parse_error_reports_line() {
    let dir = std::env::temp_dir().join("mdk-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.matrix");
    std::fs::write(&path, "2\n1 1\n1 q\n").unwrap();
    let out = mdk(&["matrices", "--matrix", path.to_str().unwrap(), "--max-level", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "stderr was: {err}");
}

#[test]
fn matrix_file_source_works() {
    let dir = std::env::temp_dir().join("mdk-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("golden.matrix");
    std::fs::write(&path, "2\n1 1\n1 0\n").unwrap();
    let out = mdk(&["check-word", "a1 b2", "--matrix", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("forbidden"));
}

#[test]
fn ktheory_json_is_byte_identical_across_runs() {
    let one = mdk(&["ktheory", "--matrix", "full:2", "--max-level", "4"]);
    let two = mdk(&["ktheory", "--matrix", "full:2", "--max-level", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, two.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&one.stdout).expect("valid json");
    assert_eq!(doc["matrix"], "full:2");
    assert_eq!(doc["levels"][1]["k0"]["invariant_factors"], serde_json::json!([2]));
}

#[test]
fn matrices_pretty_contains_printed_rows() {
    let out = mdk(&["matrices", "--max-level", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    // The level-1 symbolic matrix and difference matrix as printed.
    assert!(text.contains("a1+b1"), "output was: {text}");
    assert!(text.contains("[2  -1]"), "output was: {text}");
}

#[test]
fn matrices_latex_and_json_shapes() {
    let out = mdk(&["matrices", "--max-level", "2", "--format", "latex"]);
    assert!(stdout(&out).contains("\\begin{smallmatrix}"));
    assert!(stdout(&out).contains("\\alpha_{1}"));

    let out = mdk(&["matrices", "--matrix", "full:2", "--max-level", "2", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid json");
    assert_eq!(doc["matrix"], "full:2");
    assert!(doc["levels"][0]["symbolic"].is_array());
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("mdk-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = mdk(&[
        "ktheory",
        "--max-level",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"matrix\": \"fibonacci\""));
}
