use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wonderstab")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn temp_json(v: &Value) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{v}").unwrap();
    f
}

#[test]
fn stab_transposition() {
    let out = run(&["stab", "--n", "3", "--x", "0,0,0", "--line", "1,-1,0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["h"], 1);
    assert_eq!(v["generators"], serde_json::json!(["(1 2)"]));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("{\"h\":1"), "{text}");
}

#[test]
fn stab_brute_force_agrees() {
    let out = run(&["stab", "--n", "4", "--x", "0,0,0,0", "--line", "1,-1,0,0", "--brute"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["h"], 2);
    assert_eq!(v["auto_completed"], true);
    assert_eq!(v["oracle"]["match"], true);
    assert_eq!(v["oracle"]["order"], 4);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["stab", "--x", "0,0,0,0", "--line", "1,-1,0,0"][..],
        &["stratum", "--x", "0,0,0", "--line", "1,-1,0"],
        &["diagram", "--x", "-1,1/2,1/2"],
        &["verify", "--n", "3", "--samples", "10", "--seed", "3"],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn verify_passes() {
    let out = run(&["verify", "--n", "3", "--samples", "50", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert!(v["suites"].as_array().unwrap().len() >= 20);
}

#[test]
fn nested_only_fails_with_witness() {
    let out = run(&["verify", "--n", "3", "--samples", "200", "--seed", "1", "--nested-only"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["pass"], false);
    assert!(!v["witness"].is_null());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["stab", "--x", "1,a,1"]).status.code(), Some(2));
    assert_eq!(run(&["stab"]).status.code(), Some(2));
    assert_eq!(run(&["stab", "--n", "4", "--x", "0,0,0"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    // x off the sum-zero hyperplane
    let bad = run(&["stab", "--x", "1,1,1"]);
    assert_eq!(bad.status.code(), Some(3));
    assert!(!bad.stderr.is_empty());
}

#[test]
fn text_format() {
    let out = run(&["stab", "--x", "0,0,0", "--line", "1,-1,0", "--text"]);
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("order 2"), "{s}");
    let out = run(&["verify", "--n", "2", "--samples", "5", "--text"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.trim_end().ends_with("0 failed"), "{s}");
}

#[test]
fn model_point_input_file() {
    let f = temp_json(&serde_json::json!({"n": 3, "x": ["0", "0", "0"], "lines": [["1", "-1", "0"]]}));
    let path = f.path().to_str().unwrap();
    let a = run(&["stab", "--input", path]);
    let b = run(&["stab", "--x", "0,0,0", "--line", "1,-1,0"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let f = temp_json(&serde_json::json!({"n": 4, "x": ["0", "0", "0"]}));
    assert_eq!(run(&["stab", "--input", f.path().to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn diagram_input_file_round_trips() {
    let out = run(&["diagram", "--x", "0,0,0,0", "--line", "1,-1,0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let f = temp_json(&v["diagram"]);
    let again = run(&["diagram", "--input", f.path().to_str().unwrap()]);
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(again.stdout, out.stdout);
}
