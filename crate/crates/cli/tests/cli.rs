use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn fedlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fedlab")).args(args).output().expect("run fedlab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).unwrap_or_else(|e| panic!("stderr is not JSON ({e}): {}", String::from_utf8_lossy(&o.stderr)))
}

#[test]
fn cycle_bounds_pin_down_the_value() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("c10.json");
    let o = fedlab(&["gen", "cycle", "10", "-o", g.to_str().unwrap()]);
    assert!(o.status.success());
    let o = fedlab(&["bounds", g.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l == "fed = 4"), "{}", stdout(&o));
}

#[test]
fn fixture_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("z8.json");
    let graph = dir.path().join("z8.graph.json");
    let o = fedlab(&["fixture", "z8", "-o", cert.to_str().unwrap(), "--graph-output", graph.to_str().unwrap()]);
    assert!(o.status.success());
    let o = fedlab(&["verify", cert.to_str().unwrap(), graph.to_str().unwrap()]);
    assert!(o.status.success());
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["violations"], Value::Array(vec![]));

    // a certificate checked against the wrong graph is a verification failure
    let other = dir.path().join("prism.json");
    assert!(fedlab(&["gen", "prism", "4", "-o", other.to_str().unwrap()]).status.success());
    let o = fedlab(&["verify", cert.to_str().unwrap(), other.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn tampered_certificate_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("p.json");
    let graph = dir.path().join("p.graph.json");
    assert!(fedlab(&["fixture", "petersen", "-o", cert.to_str().unwrap(), "--graph-output", graph.to_str().unwrap()])
        .status
        .success());
    let mut v: Value = serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    v["weight"] = Value::String("5/2".into());
    fs::write(&cert, v.to_string()).unwrap();
    let o = fedlab(&["verify", cert.to_str().unwrap(), graph.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn hypercube_table_prefix() {
    let o = fedlab(&["table", "hypercube", "--max-d", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "d\tgamma\tfed\n1\t1\t1\n2\t2\t[4/3,2]\n3\t2\t2\n");
}

#[test]
fn usage_errors_exit_2_with_json() {
    let o = fedlab(&["gen", "no_such_family", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_json(&o)["exit_code"], 2);
    let o = fedlab(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_json(&o)["exit_code"], 2);
}

#[test]
fn budget_overrun_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("q4.json");
    assert!(fedlab(&["gen", "hypercube", "4", "-o", g.to_str().unwrap()]).status.success());
    let o = fedlab(&["solve-a", g.to_str().unwrap(), "--budget", "8"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(error_json(&o)["exit_code"], 3);
}

#[test]
fn solve_a_certificate_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("c5.json");
    let cert = dir.path().join("c5.cert.json");
    assert!(fedlab(&["gen", "cycle", "5", "-o", g.to_str().unwrap()]).status.success());
    let o = fedlab(&["solve-a", g.to_str().unwrap(), "-o", cert.to_str().unwrap()]);
    assert!(o.status.success());
    let c: Value = serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(c["weight"], "2");
    assert!(fedlab(&["verify", cert.to_str().unwrap(), g.to_str().unwrap()]).status.success());
}

#[test]
fn simulation_is_deterministic_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("pet.json");
    assert!(fedlab(&["gen", "kneser", "5", "2", "-o", g.to_str().unwrap()]).status.success());
    let run = |seed: &str| {
        let o = fedlab(&[
            "simulate", g.to_str().unwrap(), "--defender", "connectivity_uniform", "--seed", seed, "--rounds", "30",
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        stdout(&o)
    };
    let a = run("7");
    assert_eq!(a, run("7"));
    let t: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(t["outcome"], "survived");
    assert_eq!(t["events"].as_array().unwrap().len(), 30);
}

#[test]
fn edge_list_and_json_inputs_agree() {
    let dir = tempfile::tempdir().unwrap();
    let j = dir.path().join("g.json");
    let e = dir.path().join("g.txt");
    assert!(fedlab(&["gen", "grid", "3", "3", "-o", j.to_str().unwrap()]).status.success());
    assert!(fedlab(&["gen", "grid", "3", "3", "--edge-list", "-o", e.to_str().unwrap()]).status.success());
    let a = fedlab(&["gamma-f", j.to_str().unwrap()]);
    let b = fedlab(&["gamma-f", e.to_str().unwrap()]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}
