use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn gtx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gtx")).arg("--compact").args(args).output().expect("gtx runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gtx-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn admissible_minimal_orbit() {
    let out = gtx(&["admissible", "--n", "3", "--p", "3", "--q", "2", "--orbit", "min"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["classes"], 1);
    assert_eq!(v["orbit"], "(2,1)");
    assert_eq!(v["representatives"][0]["var_dimension"], 4);
    assert_eq!(v["representatives"][0]["weight"], serde_json::json!(["-3/2", "0"]));
}

#[test]
fn admissible_rejects_non_coprime() {
    let out = gtx(&["admissible", "--n", "3", "--p", "4", "--q", "2"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("coprime"));
}

#[test]
fn classify_l7_verifies() {
    let out = gtx(&[
        "classify",
        "--p",
        "3",
        "--q",
        "2",
        "--lambda1",
        "0",
        "--lambda2",
        "0",
        "--a",
        "1",
        "--family",
        "L7",
        "--radius",
        "6",
        "--verify",
    ]);
    assert!(out.status.success());
    let v = json_of(&out);
    let fam = &v["families"][0];
    assert_eq!(fam["family"], "L7");
    assert_eq!(fam["closure"]["violations"], 0);
    assert_eq!(fam["census"]["min_interior"], 1);
    assert_eq!(fam["census"]["max_interior"], 1);
    assert_eq!(fam["params"]["z"], "-5/14");
    assert_eq!(v["pass"], true);
}

#[test]
fn classify_without_verify_lists_seeds() {
    let out = gtx(&["classify", "--p", "3", "--q", "2", "--a", "1", "--family", "L16"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["families"][0]["regime"], "Singular1");
    assert_eq!(v["families"][0]["seed"]["rows"][1], serde_json::json!(["-1/2", "-1/2"]));
}

#[test]
fn classify_principal_family_infers_orbit() {
    let out = gtx(&["classify", "--p", "4", "--q", "3", "--family", "S-L5", "--radius", "4", "--verify"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    let growth = v["families"][0]["growth"].as_array().unwrap();
    assert_eq!(growth.len(), 3);
}

#[test]
fn classify_reports_parameter_clash() {
    let out = gtx(&["classify", "--p", "3", "--q", "2", "--a", "1", "--family", "L5", "--params", "z=1/2"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("integer"));
}

#[test]
fn induce_sl2_at_rank_four() {
    let out = gtx(&[
        "induce",
        "--n",
        "4",
        "--sub",
        "2",
        "--p",
        "5",
        "--q",
        "4",
        "--lambdas",
        "0,0,0",
        "--mus",
        "0,0,0",
        "--radius",
        "2",
        "--verify",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["inner_level"]["k"], "-3/4");
    assert_eq!(v["simplicity"]["simple"], true);
    assert_eq!(v["closure"]["pass"], true);
    assert_eq!(v["relations"]["pass"], true);
}

#[test]
fn induce_rejects_small_q() {
    let out = gtx(&["induce", "--n", "3", "--p", "3", "--q", "2", "--lambdas", "0,0", "--mus", "0,0"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("q >= n"));
}

#[test]
fn twist_verifies_lemma() {
    let spec = scratch(
        "l1.json",
        r#"{"seed": {"n": 3, "rows": [["-1"], ["-1", "-1/2"], ["-1", "-1/2", "-3/2"]]}, "regime": "Generic", "predicate": {"type": "full_lattice"}}"#,
    );
    let out = gtx(&[
        "twist",
        "--alpha",
        "21",
        "--a",
        "1/2",
        "--spec",
        spec.to_str().unwrap(),
        "--radius",
        "4",
        "--verify-lemma",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["pass"], true);
    let checks = v["lemma"]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 6);
    assert!(checks.iter().all(|c| c["pass"] == true));
    // Theta_a(E21) = E21
    assert_eq!(v["theta"]["E21"].as_array().unwrap().len(), 1);
}

#[test]
fn twist_rejects_positive_root() {
    let spec = scratch(
        "l1b.json",
        r#"{"seed": {"n": 3, "rows": [["-1"], ["-1", "-1/2"], ["-1", "-1/2", "-3/2"]]}, "predicate": {"type": "full_lattice"}}"#,
    );
    let out = gtx(&["twist", "--alpha", "13", "--a", "1/2", "--spec", spec.to_str().unwrap()]);
    assert!(!out.status.success());
}
