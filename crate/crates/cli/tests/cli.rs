use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_topovertex")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn trivial_vertex_is_one() {
    let out = run(&["vertex", "--alpha", "[]", "--beta", "[]", "--gamma", "[]"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["value"]["num"], v["value"]["den"]);
}

#[test]
fn mirror_of_conifold_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("conifold.json");
    std::fs::write(&path, r#"{"sigma": [1, -1], "Q": ["Q"]}"#).unwrap();
    let out = run(&["--format", "text", "mirror", "--strip", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("x = (1 - y^-1)/(1 - Q*y^-1)"), "{text}");
}

#[test]
fn cyclic_suite_passes() {
    let out = run(&["verify", "cyclic", "--weight-max", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], Value::Bool(true));
}

#[test]
fn malformed_partition_exits_2() {
    let out = run(&["schur", "--lambda", "[2,1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["schur", "--lambda", "[1,2]"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_strip_exits_2() {
    let out = run(&["zclosed", "--strip", r#"{"sigma": [1, 0]}"#]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn size_guard_exits_3() {
    let out = Command::new(env!("CARGO_BIN_EXE_topovertex"))
        .args(["zclosed", "--qdeg", "3"])
        .env("TOPOVERTEX_MAX_QDEG", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn glued_matches_closed_on_conifold() {
    let closed = json(&run(&["zclosed", "--qdeg", "3"]));
    let glued = json(&run(&["zglue", "--qdeg", "3"]));
    assert_eq!(closed["series"], glued["series"]);
}

#[test]
fn seeded_runs_are_deterministic() {
    let args = ["--seed", "11", "verify", "strip-oracle", "--vertices", "2", "--qdeg", "2"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn wave_output_has_requested_length() {
    let out = run(&["wave", "--kind", "psi", "--K", "3"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["coefficients"].as_array().unwrap().len(), 4);
}
