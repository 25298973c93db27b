use std::process::{Command, Output};

use serde_json::Value;

fn lgcy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lgcy")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.push("--json");
    let out = lgcy(&full);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn unit_quantum_dimensions() {
    let v = json(&["mf", "qdim", "--unit", "x^4+y^2+z^2"]);
    assert_eq!((v["left"].as_str(), v["right"].as_str()), (Some("1"), Some("1")));
    assert_eq!(v["ambidextrous"], Value::Bool(true));
}

#[test]
fn unit_fusion_through_reduce() {
    let v = json(&["mf", "reduce", "--lhs", "perm:4:{0}", "--rhs", "perm:4:{1,2}"]);
    assert_eq!(v["isomorphic_to"].as_str(), Some("perm:4:{1,2}"));
    assert_eq!(v["mf"]["schema"].as_str(), Some("mf.v1"));
}

#[test]
fn built_factorisation_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    let out = lgcy(&["mf", "build-perm", "--d", "5", "--subset", "1,2", "--json"]);
    assert!(out.status.success());
    std::fs::write(&path, &out.stdout).unwrap();
    let q = json(&["mf", "qdim", "--in", path.to_str().unwrap()]);
    // zeta + zeta^2 and its conjugate zeta^3 + zeta^4 = -1 - zeta - zeta^2
    assert_eq!(q["left"].as_str(), Some("[0,1,1,0]@5"));
    assert_eq!(q["right"].as_str(), Some("[-1,-1,-1,0]@5"));
    let mut broken: Value = serde_json::from_slice(&out.stdout).unwrap();
    broken["d"][0][1] = Value::String("u'".into());
    std::fs::write(&path, serde_json::to_string(&broken).unwrap()).unwrap();
    let bad = lgcy(&["mf", "qdim", "--in", path.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn ginzburg_example() {
    let v = json(&["quiver", "ginzburg", "A2", "--n", "3", "--check"]);
    assert_eq!(v["check"].as_str(), Some("pass"));
    assert_eq!(v["differentials"]["d t1"].as_str(), Some("-a*a"));
    let d = json(&["quiver", "dims", "A2", "--n", "3", "--degree", "0"]);
    assert_eq!(d["dim"].as_u64(), Some(3));
}

#[test]
fn compare_example() {
    let v = json(&["quiver", "compare", "A2", "--n", "3", "--cap", "3"]);
    assert_eq!(v["all_certified_agree"], Value::Bool(true));
    assert!(v["rows"].as_array().unwrap().iter().any(|r| r["certified"] == Value::Bool(true)));
}

#[test]
fn quiver_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.json");
    std::fs::write(&path, r#"{"schema":"quiver.v1","vertices":["1","2","3"],"arrows":[{"name":"a","tail":"1","head":"2"},{"name":"b","tail":"3","head":"2"}]}"#).unwrap();
    let d = json(&["quiver", "dims", path.to_str().unwrap(), "--n", "3", "--degree", "0"]);
    assert_eq!(d["dim"].as_u64(), Some(5));
    std::fs::write(&path, r#"{"schema":"quiver.v1","vertices":["1"],"arrows":[{"name":"a","tail":"1","head":"1"}]}"#).unwrap();
    assert_eq!(lgcy(&["quiver", "compare", path.to_str().unwrap(), "--n", "3"]).status.code(), Some(2));
}

#[test]
fn verify_spectra_counts() {
    let v = json(&["verify", "spectra"]);
    let checks = v["checks"].as_array().unwrap();
    let detail = |name: &str| checks.iter().find(|c| c["name"] == name).unwrap()["detail"].as_str().unwrap().to_string();
    assert_eq!([detail("nonzero-eigenvalues A11"), detail("nonzero-eigenvalues A17"), detail("nonzero-eigenvalues A29")], ["6", "7", "8"]);
    assert!(checks.iter().any(|c| c["status"] == "skipped"));
}

#[test]
fn verify_reports_are_stable() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("wall_time_ms");
        v
    };
    let a = strip(json(&["verify", "residues", "--seed", "5"]));
    let b = strip(json(&["verify", "residues", "--seed", "5"]));
    assert_eq!(a, b);
    assert!(a["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn config_file_and_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lgcy.conf");
    std::fs::write(&path, "cy_level = 2\nquiver_cap = 2\nseed = 3\n").unwrap();
    let v = json(&["--config", path.to_str().unwrap(), "quiver", "compare", "A2", "--n", "3"]);
    assert_eq!(v["cap"].as_u64(), Some(2));
    std::fs::write(&path, "cy_level = 0\n").unwrap();
    assert_eq!(lgcy(&["--config", path.to_str().unwrap(), "verify", "residues"]).status.code(), Some(2));
    assert_eq!(lgcy(&["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn verify_lift_passes_at_level_two() {
    let out = lgcy(&["verify", "lift", "--level", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).contains("lift A3 flip+flip level=2"));
}
