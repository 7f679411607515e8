use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cu-lattice"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn validate_reports_six_passes() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "nbar2.json", r#"{"kind":"nbar_power","k":2}"#);
    let out = run(&["validate", &m]);
    assert_eq!(out.status.code(), Some(0));
    let reports = json(&out);
    assert_eq!(reports.as_array().unwrap().len(), 6);
    assert_eq!(String::from_utf8_lossy(&out.stderr).matches("PASS").count(), 6);
}

#[test]
fn validate_rejects_invalid_table() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(
        dir.path(),
        "broken.json",
        r#"{"kind":"finite_table","n":2,"add":[[0,1],[1,0]],"leq":[[true,true],[false,true]]}"#,
    );
    let out = run(&["validate", &m]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invariant violation"));
}

#[test]
fn validate_fails_on_broken_fixture() {
    let out = run(&["validate", "builtin:broken_o6"]);
    assert_eq!(out.status.code(), Some(1));
    let reports = json(&out);
    let o6 = reports.as_array().unwrap().iter().find(|r| r["axiom"] == "O6").unwrap();
    assert!(o6["counterexample"].is_array());
}

#[test]
fn compare_is_a_query() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "nbar1.json", r#"{"kind":"nbar_power","k":1}"#);
    let out = run(&["compare", &m, "3", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], false);
    assert_eq!(v["mn"]["holds"], false);
    let out = run(&["compare", &m, "2", "inf", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["witnesses"]["verdict"], true);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["compare", "builtin:nbar_power_1", "x", "1"]).status.code(), Some(2));
    assert_eq!(run(&["validate", "/nonexistent/model.json"]).status.code(), Some(2));
    assert_eq!(run(&["realify", "builtin:nbar_power_1", "--expr", "hat(1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn json_reports_carry_schema_and_params() {
    let out = run(&["cone", "builtin:nbar_power_2", "--json", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "cu-lattice/1");
    assert_eq!(v["seed"], 5);
    assert_eq!(v["params"]["trials"], 1000);
    assert_eq!(v["params"]["denominator_bound"], 4);
    assert_eq!(v["model_digest"].as_str().unwrap().len(), 64);
    assert_eq!(v["witnesses"]["representatives"].as_array().unwrap().len(), 8);
}

#[test]
fn lattice_with_rays() {
    let out = run(&["lattice", "builtin:nbar_power_1", "--rays", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let n = v["witnesses"]["functionals"].as_array().unwrap().len();
    assert_eq!(v["witnesses"]["join"].as_array().unwrap().len(), n);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn realify_evaluates_terms() {
    let out = run(&["realify", "builtin:nbar_power_1", "--expr", "1/2*hat(3) + sup[hat(1),hat(2)]", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let values: Vec<&str> =
        v["witnesses"]["values"].as_array().unwrap().iter().map(|x| x["value"].as_str().unwrap()).collect();
    // representatives of N̄: λ_{0}, then λ_{N̄} and its ray (the identity)
    assert_eq!(values, vec!["inf", "0", "7/2"]);
}

#[test]
fn refine_finds_witness_and_reports_exhaustion() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(
        dir.path(),
        "inst.json",
        r#"{"f_prime":["1/2*hat(1)","1/2*hat(1)"],"f":["hat(1)","hat(1)"],"g":["hat(1)","hat(1)"]}"#,
    );
    let out = run(&["refine", "builtin:nbar_power_1", &inst, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["witnesses"]["status"], "found");
    let out = run(&["refine", "builtin:nbar_power_1", &inst, "--json", "--denominator-bound", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["witnesses"]["status"], "grid_exhausted");
}

#[test]
fn glimm_outcomes() {
    let out = run(&["glimm", "builtin:nbar_power_1", "1", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["witnesses"]["kind"], "chain_case");
    let out = run(&["glimm", "builtin:nbar_power_1", "2", "--json"]);
    assert_eq!(json(&out)["witnesses"]["z"], serde_json::json!([1]));
    let out = run(&["glimm", "builtin:nbar_power_2", "[1,1]"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not simple"));
}

#[test]
fn thread_cap_is_honoured_and_validated() {
    let out = bin().args(["validate", "builtin:three_point"]).env("CU_LATTICE_THREADS", "1").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = bin().args(["validate", "builtin:three_point"]).env("CU_LATTICE_THREADS", "many").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
