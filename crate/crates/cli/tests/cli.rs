use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

const CHAPOTON: &str = r#"{"vertices":["1","2","3"],
  "arrows":[{"id":"al","src":"1","tgt":"2"},{"id":"be","src":"2","tgt":"3"}],
  "relations":[["al","be"]]}"#;

const KRONECKER: &str = r#"{"vertices":["1","2"],
  "arrows":[{"id":"a","src":"1","tgt":"2"},{"id":"b","src":"1","tgt":"2"}]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_accordion-tau"))
        .args(args)
        .env_remove("ACCORDION_TAU_MAX_M")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn counts(v: &Value) -> (usize, usize) {
    let c = &v["complex"];
    (
        c["vertices"].as_array().unwrap().len(),
        c["facets"].as_array().unwrap().len(),
    )
}

fn write_temp(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn hexagon_fan_dot_has_14_nodes_and_21_edges() {
    let out = run(&[
        "accordion",
        "--m",
        "6",
        "--diagonals",
        "0-2,0-3,0-4",
        "--format",
        "dot",
    ]);
    assert!(out.status.success());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert_eq!(dot.matches("[label=").count(), 14);
    assert_eq!(dot.matches(" -- ").count(), 21);
}

#[test]
fn heptagon_accordion_json() {
    let v = json(&run(&[
        "accordion",
        "--m",
        "7",
        "--diagonals",
        "0-2,2-4,4-6",
    ]));
    assert_eq!(counts(&v), (8, 12));
    assert_eq!(v["exchange_graph"]["edges"].as_array().unwrap().len(), 18);
}

#[test]
fn crossing_input_is_an_input_error() {
    let out = run(&["accordion", "--m", "6", "--diagonals", "0-3,1-4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cross"));
}

#[test]
fn silting_from_quiver_file_and_from_dissection() {
    let dir = tempfile::tempdir().unwrap();
    let q = write_temp(&dir, "q.json", CHAPOTON);
    assert_eq!(counts(&json(&run(&["silting", "--quiver", &q]))), (8, 12));
    let v = json(&run(&[
        "silting",
        "--m",
        "6",
        "--diagonals",
        "0-2,0-3,0-4",
        "--from-dissection",
    ]));
    assert_eq!(counts(&v), (9, 14));
}

#[test]
fn band_quiver_is_unsupported() {
    let dir = tempfile::tempdir().unwrap();
    let q = write_temp(&dir, "k.json", KRONECKER);
    let out = run(&["silting", "--quiver", &q]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("band"));
}

#[test]
fn verify_main_on_hexagon_fan() {
    let v = json(&run(&[
        "verify",
        "--theorem",
        "main",
        "--m",
        "6",
        "--diagonals",
        "0-2,0-3,0-4",
    ]));
    assert_eq!(v["pass"], true);
    assert_eq!(v["summary"]["checks"], 1);
}

#[test]
fn verify_exhaustive_pentagon_with_spot_checks() {
    let v = json(&run(&[
        "verify",
        "--theorem",
        "all",
        "--exhaustive",
        "5",
        "--seed",
        "11",
    ]));
    assert_eq!(v["pass"], true);
    assert_eq!(v["summary"]["instances"], 10);
    assert_eq!(v["spot_checks"]["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn empty_subset_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let q = write_temp(&dir, "q.json", CHAPOTON);
    let out = run(&[
        "verify",
        "--theorem",
        "idempotent",
        "--quiver",
        &q,
        "--subset",
        "",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&run(&[
        "verify",
        "--theorem",
        "idempotent",
        "--quiver",
        &q,
        "--subset",
        "1,3",
    ]));
    assert_eq!(v["pass"], true);
}

#[test]
fn two_input_sources_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let d = write_temp(&dir, "d.json", r#"{"m": 6, "diagonals": [[0, 2]]}"#);
    let out = run(&["accordion", "--m", "6", "--diagonals", "0-2", "--input", &d]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(counts(&json(&run(&["accordion", "--input", &d]))), (2, 2));
}

#[test]
fn size_cap_and_override() {
    let out = run(&["accordion", "--m", "10", "--diagonals", "0-2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_accordion-tau"))
        .args([
            "accordion",
            "--m",
            "10",
            "--diagonals",
            "0-2",
            "--format",
            "text",
        ])
        .env("ACCORDION_TAU_MAX_M", "10")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn output_is_deterministic_and_out_flag_matches_stdout() {
    let args = [
        "silting",
        "--m",
        "7",
        "--diagonals",
        "0-2,2-4,4-6",
        "--from-dissection",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    assert!(run(&with_out).status.success());
    assert_eq!(fs::read(&path).unwrap(), a.stdout);
}
