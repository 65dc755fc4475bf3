use std::process::{Command, Output};

use serde_json::Value;

fn qbic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbic")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn classify_a_normal_form() {
    let v = json(&qbic(&["classify", "--q", "3", "--type", "1^2+N2"]));
    assert_eq!(v["type"], "1^2+N2");
    assert_eq!(v["corank"], 1);
    assert_eq!(v["nonsingular"], false);
}

#[test]
fn normal_form_file_classifies_back() {
    let dir = std::env::temp_dir().join(format!("qbic-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("form.json");
    let path = path.to_str().unwrap();
    assert!(qbic(&["normal-form", "--q", "2", "--type", "1+N2", "--out", path]).status.success());
    let v = json(&qbic(&["classify", "--gram", path]));
    assert_eq!(v["type"], "1+N2");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn counts_and_tables() {
    assert_eq!(json(&qbic(&["hermitian", "--q", "2", "--type", "1^3"]))["count"], 9);
    assert_eq!(json(&qbic(&["lines", "--q", "2", "--type", "1^4"]))["count"], 27);
    let t = json(&qbic(&["f-table", "--q", "3"]));
    assert_eq!(t["entries"], serde_json::json!([[0, 3], [1, 6], [2, 7]]));
    assert_eq!(json(&qbic(&["reps", "table", "--p", "3"]))["total"], 31);
    assert_eq!(json(&qbic(&["invariants", "--q", "3"]))["c1_sq"], "1440");
}

#[test]
fn divisor_on_the_nodal_curve() {
    let v = json(&qbic(&["divisor", "--q", "2", "--line", "1,0,0;0,0,1"]));
    assert_eq!(v["degree"], 3);
    assert_eq!(v["points"][0]["multiplicity"], 3);
}

#[test]
fn bad_input_exits_with_2() {
    let out = qbic(&["invariants", "--q", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a prime power"));
    assert_eq!(qbic(&["classify", "--q", "2"]).status.code(), Some(2));
    assert_eq!(qbic(&["classify", "--q", "2", "--type", "1^2+N0"]).status.code(), Some(2));
}

#[test]
fn reproduce_is_deterministic_without_timing() {
    let args = ["reproduce", "--suite", "invariants", "--no-timing", "--seed", "3"];
    let (a, b) = (qbic(&args), qbic(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "match"));
}
