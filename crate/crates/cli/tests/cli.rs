use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn corpus(name: &str) -> PathBuf {
    root().join("corpus").join(name)
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coprime"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).expect("json on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("coprime-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn classify_z6() {
    let out = run(&["classify", corpus("zmod06.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["predicates"]["local"]["value"], false);
    assert_eq!(report["predicates"]["vn_regular"]["value"], true);
    assert_eq!(report["predicates"]["exchange"]["value"], true);
    assert_eq!(report["minimal_class_count"], 4);
}

#[test]
fn classify_z4() {
    let out = run(&["classify", corpus("zmod04.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["predicates"]["local"]["value"], true);
    assert_eq!(report["predicates"]["semisimple"]["value"], false);
}

#[test]
fn classify_selected_predicates_in_given_order() {
    let out = run(&[
        "classify",
        corpus("m2_z2.json").to_str().unwrap(),
        "--predicates",
        "quasi_duo,local",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    let names: Vec<&String> = report["predicates"].as_object().unwrap().keys().collect();
    assert_eq!(names.len(), 2);
    assert_eq!(report["predicates"]["quasi_duo"]["value"], false);
    assert!(report["predicates"]["quasi_duo"]["witnesses"]["left_not_right_coprime"].is_array());

    let out = run(&["classify", corpus("m2_z2.json").to_str().unwrap(), "--predicates", "nope"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn non_associative_table_is_an_input_error() {
    let out = run(&["classify", fixture("bad.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("associativity"), "{stderr}");
    assert!(stderr.contains("(x, y, z) = ("), "{stderr}");
}

#[test]
fn cap_exceeded_exit_code() {
    let out = run(&["classify", corpus("m2_z3.json").to_str().unwrap(), "--cap-full", "64"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["rcp", corpus("m2_z3.json").to_str().unwrap(), "--cap-arith", "64"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn rcp_z6_dot() {
    let dir = scratch("dot");
    let dot = dir.join("out.dot");
    let out = run(&[
        "rcp",
        corpus("zmod06.json").to_str().unwrap(),
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&dot).unwrap();
    assert_eq!(text.matches(" [label=").count(), 9);
    assert_eq!(text.matches("doublecircle").count(), 4);
    let again = dir.join("again.dot");
    run(&["rcp", corpus("zmod06.json").to_str().unwrap(), "--dot", again.to_str().unwrap()]);
    assert_eq!(fs::read(&dot).unwrap(), fs::read(&again).unwrap());
}

#[test]
fn rcp_z2_has_three_classes() {
    let out = run(&["rcp", corpus("zmod02.json").to_str().unwrap()]);
    assert_eq!(json(&out)["class_count"], 3);
}

#[test]
fn rcp_m2_z2_matches_golden_files() {
    let dir = scratch("golden");
    let dot = dir.join("m2.dot");
    let out = run(&[
        "rcp",
        corpus("m2_z2.json").to_str().unwrap(),
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&dot).unwrap(), fs::read_to_string(golden("m2_z2.dot")).unwrap());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        fs::read_to_string(golden("m2_z2.json")).unwrap()
    );
}

#[test]
fn chains_z6_explicit_chain() {
    let out = run(&["chains", corpus("zmod06.json").to_str().unwrap(), "--chain", "1,1;2,3"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["report"]["chain"]["step_witnesses"][0]["r"], 2);
    assert_eq!(report["report"]["chain"]["step_witnesses"][0]["s"], 3);
    assert_eq!(report["report"]["minimal_lower_bound"], serde_json::json!([2, 3]));
    assert_eq!(report["annihilator_criterion"]["holds"], true);

    let out = run(&["chains", corpus("zmod06.json").to_str().unwrap(), "--chain", "2,3;1,1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["chains", corpus("zmod06.json").to_str().unwrap(), "--chain", "2,4"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn chains_default_audit() {
    let out = run(&["chains", corpus("m2_z2.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["strongly_exchange"]["value"], true);
    assert!(report["audit"]["chains"].as_u64().unwrap() >= 1000);
}

#[test]
fn verify_props_text() {
    let out = run(&["verify-props", corpus("ut2_z2.json").to_str().unwrap(), "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("passed true"));
}

#[test]
fn audit_empty_directory() {
    let dir = scratch("empty");
    let out = run(&["audit", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["ring_count"], 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn audit_isolates_a_malformed_spec() {
    let dir = scratch("isolation");
    fs::copy(corpus("zmod04.json"), dir.join("a.json")).unwrap();
    fs::copy(fixture("malformed.json"), dir.join("b.json")).unwrap();
    fs::copy(corpus("zmod06.json"), dir.join("c.json")).unwrap();
    let out = run(&["audit", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    let statuses: Vec<&str> = report["rings"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["status"].as_str().unwrap())
        .collect();
    assert_eq!(statuses, vec!["pass", "input_error", "pass"]);
}

#[test]
fn out_flag_writes_file() {
    let dir = scratch("out");
    let path = dir.join("report.json");
    let out = run(&[
        "classify",
        corpus("zmod02.json").to_str().unwrap(),
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let report: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(report["size"], 2);
}
