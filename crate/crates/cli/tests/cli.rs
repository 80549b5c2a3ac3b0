use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lamistrat")).args(args).env_remove("LAMISTRAT_BUDGET").output().unwrap()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn stderr_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).unwrap()
}

#[test]
fn intersect_torus_slopes() {
    let o = run(&["intersect", "--surface", "s_1_1", "--a", "0,1,1", "--b", "1,0,1"]);
    assert!(o.status.success());
    assert_eq!(stdout_json(&o), json!({"i": 1}));
}

#[test]
fn parity_violation_exits_one() {
    let o = run(&["validate", "--surface", "s_1_1", "--weights", "1,1,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["error"], "ParityViolation");
}

#[test]
fn decompose_reports_multiplicity() {
    let o = run(&["decompose", "--surface", "s_1_1", "--weights", "[0,2,2]"]);
    assert_eq!(stdout_json(&o), json!({"components": [{"multiplicity": 2, "weights": [0, 1, 1]}]}));
}

#[test]
fn pants_support_depth() {
    let o = run(&["depth", "--surface", "s_0_5", "--support", "[[0,0,1,0,1,0,1,0,1],[1,0,1,0,0,1,0,1,0]]"]);
    let v = stdout_json(&o);
    assert_eq!(v["depth"], 1);
    assert_eq!(v["components"], 2);
}

#[test]
fn separating_cut() {
    let o = run(&["cut", "--surface", "s_1_2", "--curve", "2,2,2,0,2,2"]);
    assert_eq!(stdout_json(&o), json!({"regions": [[1, 0, 1], [0, 2, 1]], "separating": true}));
}

#[test]
fn twist_power_on_torus() {
    let o = run(&["twist", "--surface", "s_1_1", "--curve", "0,1,1", "--weights", "1,0,1", "--power", "3"]);
    assert_eq!(stdout_json(&o), json!({"weights": [1, 3, 2]}));
}

#[test]
fn strata_summary() {
    let o = run(&["enumerate-strata", "--surface", "s_0_5", "--max-weight", "8"]);
    let v = stdout_json(&o);
    assert_eq!(v["strata"], 16);
    assert_eq!(v["max_depth"], 1);
    assert_eq!(v["axioms"]["violations"], json!([]));
}

#[test]
fn dot_export() {
    let o = run(&["poset-export", "--surface", "s_1_1", "--max-weight", "2", "--format", "dot"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("digraph strata {"));
    assert_eq!(text.matches("depth 0").count(), 3);
}

#[test]
fn budget_exhaustion_exits_three() {
    let o = Command::new(env!("CARGO_BIN_EXE_lamistrat"))
        .args(["enumerate-strata", "--surface", "s_0_5", "--max-weight", "8"])
        .env("LAMISTRAT_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stderr_json(&o)["error"], "BudgetExceeded");
}

#[test]
fn verify_dimension_criterion() {
    let o = run(&["verify", "--criterion", "9"]);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"][0]["id"], 9);
}

#[test]
fn unknown_criterion_is_invalid_input() {
    let o = run(&["verify", "--criterion", "42"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["error"], "InvalidInput");
}

#[test]
fn unknown_flag_is_rejected() {
    let o = run(&["fixtures", "--bogus"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["error"], "InvalidInput");
}
