// SPDX-License-Identifier: MIT OR Apache-2.0

use std::io::Write;
use std::process::{Command, Output};

use grading_forge::cli::{parse_input, AlgebraFile, GradingFile};
use grading_forge::algebra::corpus::quadratic_order;
use grading_forge::algebra::Base;
use grading_forge::Error;
use serde_json::{json, Value};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grading-forge")).args(args).output().expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn write_temp(v: &Value) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(serde_json::to_string(v).unwrap().as_bytes()).unwrap();
    f
}

#[test]
fn validate_and_spectrum() {
    let v = stdout_json(&bin(&["validate", "corpus:Z[sqrt2]"]));
    assert_eq!(v["kind"], "algebra");
    assert_eq!(v["rank"], 2);
    let s = stdout_json(&bin(&["spectrum", "corpus:Z[sqrt2]"]));
    assert_eq!(s["factors"].as_array().unwrap().len(), 1);
    assert_eq!(s["factors"][0]["degree"], 2);
    let s = stdout_json(&bin(&["spectrum", "corpus:Q[C4]"]));
    assert_eq!(s["factors"].as_array().unwrap().len(), 3);
}

#[test]
fn broken_table_is_rejected() {
    // e1·e1 = e0 + e1 but e0 is not a unit for e1
    let file = json!({
        "base": "Z",
        "rank": 2,
        "table": [[[1, 0], [0, 0]], [[0, 0], [1, 1]]],
    });
    let f = write_temp(&file);
    let o = bin(&["validate", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());

    // e1·e2 = e1 but e2·e1 = e2
    let noncomm = json!({
        "base": "Q",
        "rank": 3,
        "table": [
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            [[0, 1, 0], [0, 0, 0], [0, 1, 0]],
            [[0, 0, 1], [0, 0, 1], [0, 0, 0]],
        ],
    });
    let parsed = parse_input(serde_json::to_string(&noncomm).unwrap().as_bytes());
    assert!(matches!(parsed, Err(Error::NotCommutative { h: 1, i: 2 })), "{:?}", parsed.err());
}

#[test]
fn algebra_file_round_trip() {
    let a = quadratic_order(2, Base::Z).with_name("s");
    let f = AlgebraFile::from_algebra(&a);
    assert_eq!(f.to_algebra().unwrap(), a);
    let rational = json!({ "base": "Q", "rank": 1, "table": [[["1/1"]]] });
    let parsed: AlgebraFile = serde_json::from_value(rational).unwrap();
    assert_eq!(parsed.to_algebra().unwrap().rank(), 1);
}

#[test]
fn cyclic_counts() {
    let o = stdout_json(&bin(&["cyclic", "corpus:Q(zeta8)", "--prime", "2", "--power", "3"]));
    assert_eq!(o["count"], 6);
    let o = stdout_json(&bin(&["cyclic", "corpus:Z", "--prime", "5", "--power", "2"]));
    assert_eq!(o["count"], 1);
    let o = stdout_json(&bin(&["cyclic", "corpus:Z[sqrt2]", "--prime", "2"]));
    assert_eq!(o["count"], 2);
}

#[test]
fn emitted_gradings_validate() {
    let mut files: Vec<Value> = Vec::new();
    let o = stdout_json(&bin(&["cyclic", "corpus:Z[C2xC2]", "--prime", "2", "--power", "1"]));
    files.extend(o["gradings"].as_array().unwrap().iter().cloned());
    files.push(stdout_json(&bin(&["universal-abelian", "corpus:Z[zeta8]"]))["grading"].clone());
    files.push(stdout_json(&bin(&["universal-grid", "corpus:Z[sqrt2]^2"]))["grading"].clone());
    assert!(files.len() >= 4);
    for file in &files {
        let g: GradingFile = serde_json::from_value(file.clone()).unwrap();
        g.to_grading().unwrap();
        let f = write_temp(file);
        let v = stdout_json(&bin(&["validate", f.path().to_str().unwrap()]));
        assert_eq!(v["kind"], "grading");
        assert_eq!(v["ok"], true);
    }
}

#[test]
fn universal_outputs() {
    let u = stdout_json(&bin(&["universal-abelian", "corpus:Z[zeta8]"]));
    assert_eq!(u["invariant_factors"], json!([4]));
    assert_eq!(u["grading"]["components"].as_object().unwrap().len(), 4);
    let g = stdout_json(&bin(&["universal-grid", "corpus:Z[sqrt2]^2"]));
    assert_eq!(g["grading"]["components"].as_object().unwrap().len(), 3);
    let p = g["grading"]["presentation"].as_str().unwrap();
    assert!(p.starts_with("< ") && p.matches("^2").count() == 2, "{}", p);
    let t = stdout_json(&bin(&["universal-grid", "corpus:Z"]));
    assert_eq!(t["grading"]["components"].as_object().unwrap().len(), 1);
}

#[test]
fn census_command() {
    let c = stdout_json(&bin(&["census", "--prime", "2", "--max-power", "3"]));
    let counts: Vec<u64> = c["counts"].as_array().unwrap().iter().map(|r| r["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, vec![1, 2, 6]);
}

#[test]
fn deterministic_output() {
    let a = bin(&["universal-abelian", "corpus:Z[C2xC2]"]);
    let b = bin(&["universal-abelian", "corpus:Z[C2xC2]"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(bin(&["validate", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(bin(&["validate", "corpus:nothing"]).status.code(), Some(2));
    assert_eq!(bin(&["universal-grid", "corpus:Z[sqrt2]^2", "--max-spec", "1"]).status.code(), Some(3));
    assert_eq!(bin(&["universal-abelian", "corpus:Q(zeta8)"]).status.code(), Some(2));
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
}
