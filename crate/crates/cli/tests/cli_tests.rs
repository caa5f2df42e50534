use std::process::Command;

use serde_json::Value;
use weddle_cli::{execute, EXIT_ERROR};

fn json(args: &[&str]) -> Value {
    let out = execute(args.iter().copied());
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

#[test]
fn weddle_of_squares() {
    let out = execute(["weddle", "weddle", "--fixture", "ex-bpf-conics"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("x0*x1*x2"), "{}", out.stdout);
    assert!(out.stdout.ends_with("certified: yes\n"));
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let args = ["weddle", "--json", "--seed", "3", "singular", "--fixture", "rank5-M"];
    let a = json(&args);
    let b = json(&args);
    assert!(a["timing_ms"].is_number());
    assert_eq!(without_timing(a.clone()), without_timing(b));
    assert_eq!(a["seed"], 3);
    assert_eq!(a["certified"], true);
    assert_eq!(a["input_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn digest_follows_the_input_not_the_seed() {
    let a = json(&["weddle", "--json", "--seed", "1", "weddle", "--fixture", "witness-C1"]);
    let b = json(&["weddle", "--json", "--seed", "2", "weddle", "--fixture", "witness-C1"]);
    let c = json(&["weddle", "--json", "weddle", "--fixture", "witness-C2"]);
    assert_eq!(a["input_digest"], b["input_digest"]);
    assert_ne!(a["input_digest"], c["input_digest"]);
}

#[test]
fn certify_prints_the_bound() {
    let out = execute(["weddle", "certify", "--fixture", "rank5-M"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("inconclusive"), "{}", out.stdout);
}

#[test]
fn j_invariant_of_a_witness_cubic() {
    let v = json(&["weddle", "--json", "jinv", "--fixture", "witness-C2"]);
    assert!(v["outputs"].to_string().contains("4354703137/352512"), "{v}");
}

#[test]
fn input_files_are_read() {
    let dir = std::env::temp_dir().join(format!("weddle-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cubic.json");
    std::fs::write(&path, "{\"nvars\": 3, \"poly\": \"x0*x1*x2\"}").unwrap();
    let out = execute(["weddle", "singular", path.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("singular points: 3\n"), "{}", out.stdout);
    assert!(out.stdout.contains("[1:0:0]"), "{}", out.stdout);
}

#[test]
fn errors_exit_with_one() {
    let out = execute(["weddle", "weddle", "--fixture", "no-such-fixture"]);
    assert_eq!(out.code, EXIT_ERROR);
    assert!(out.stderr.contains("unknown fixture"));

    let out = execute(["weddle", "weddle", "/nonexistent/input.json"]);
    assert_eq!(out.code, EXIT_ERROR);

    let out = execute(["weddle", "jacobsthal-sweep", "--dims", "1..9"]);
    assert_eq!(out.code, EXIT_ERROR);

    let out = execute(["weddle", "jinv", "--fixture", "rank4-canonical"]);
    assert_eq!(out.code, EXIT_ERROR, "{}", out.stdout);
}

#[test]
fn usage_errors_come_from_the_parser() {
    let out = execute(["weddle", "weddle"]);
    assert_eq!(out.code, 2);
    assert!(!out.stderr.is_empty());
}

#[test]
fn binary_honours_environment_overrides() {
    let out = Command::new(env!("CARGO_BIN_EXE_weddle"))
        .args(["weddle", "--fixture", "ex-bpf-conics"])
        .env("WEDDLE_JSON", "true")
        .env("WEDDLE_SEED", "42")
        .env("WEDDLE_RESIDUAL_TOL", "1e-7")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 42);
    assert_eq!(v["config"]["residual_tol"], 1e-7);
}
