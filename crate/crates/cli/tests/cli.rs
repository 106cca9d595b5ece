use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cographic")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = run(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn analyze_cycle() {
    let v = json(&["analyze", data("cycle3.txt").to_str().unwrap()]);
    assert_eq!(v["dimension"], 4);
    assert_eq!(v["tangent_dimension"], 5);
    assert_eq!(v["multiplicity"], 2);
    assert_eq!(v["gorenstein"], true);
    assert_eq!(v["presentation"]["relations"].as_array().unwrap().len(), 1);
}

#[test]
fn analyze_with_invariant_check() {
    let v = json(&["analyze", data("thick2.txt").to_str().unwrap(), "--degree-bound", "4"]);
    assert_eq!(v["invariant_check"]["agrees"], true);
}

#[test]
fn presentation_of_thick_edge() {
    let v = json(&["presentation", data("thick2.txt").to_str().unwrap()]);
    assert_eq!(v["generators"], serde_json::json!(["X{+1-2}", "X{-1+2}", "T1", "T2"]));
    assert_eq!(v["relations"], serde_json::json!(["X{+1-2}*X{-1+2} - T1*T2"]));
}

#[test]
fn hilbert_basis_size() {
    let v = json(&["hilbert-basis", data("thick2.txt").to_str().unwrap()]);
    assert_eq!(v["size"], 4);
}

#[test]
fn reid_tai_counterexample() {
    let out = run(&["reid-tai", data("non_q_gorenstein.json").to_str().unwrap()]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("not Q-Gorenstein"));
    let v = json(&["reid-tai", data("non_q_gorenstein.json").to_str().unwrap()]);
    assert_eq!(v["quotient"]["q_gorenstein"], false);
    assert_eq!(v["cone"]["gorenstein"], true);
    assert_eq!(v["quotient"]["gorenstein_sufficient"], "unknown");
}

#[test]
fn jacobian_with_tail() {
    let f = data("elliptic_tail.txt");
    let v = json(&["jacobian", f.to_str().unwrap(), "--tail", "b"]);
    assert_eq!(v["finite_quotient_locus"], true);
    assert_eq!(v["smooth"], true);
    assert_eq!(v["splitting"]["case"], "2-I");
    assert_eq!(v["splitting"]["dimension"], 3);
    let v = json(&["jacobian", f.to_str().unwrap(), "--sigma", "2", "--tail", "b"]);
    assert_eq!(v["splitting"]["case"], "2-II");
    assert_eq!(v["toric_factor"]["dimension"], 2);
}

#[test]
fn json_is_canonical() {
    let out = run(&["--format", "json", "analyze", data("cycle3.txt").to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text);
}

#[test]
fn input_errors_exit_one() {
    let out = run(&["analyze", data("unknown_vertex.txt").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown_vertex.txt:3"));
    let out = run(&["analyze", data("disconnected.txt").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["analyze", "/nonexistent/graph.txt"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn selftest_passes() {
    let out = Command::new(env!("CARGO_BIN_EXE_cographic"))
        .arg("selftest")
        .env("COGRAPHIC_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
