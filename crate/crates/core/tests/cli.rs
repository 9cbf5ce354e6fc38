use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_reflekt"))
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).expect("utf-8"))
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    let text = std::fs::read_to_string(&path).expect("schema file");
    let value: Value = serde_json::from_str(&text).expect("schema is JSON");
    jsonschema::validator_for(&value).expect("schema compiles")
}

fn assert_valid(name: &str, body: &str) -> Value {
    let v: Value = serde_json::from_str(body).expect("output is JSON");
    let validator = schema(name);
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}");
    v
}

#[test]
fn roots_json_matches_schema() {
    for (g, count) in [("g4", 4), ("g29", 40), ("g24", 21)] {
        let (code, body) = run(&["roots", g]);
        assert_eq!(code, 0);
        let v = assert_valid("roots", &body);
        assert_eq!(v["projective_count"], count);
    }
}

#[test]
fn weyl_json_matches_schema_and_is_deterministic() {
    let args = ["weyl", "g4", "--trials", "20", "--seed", "5"];
    let (code, a) = run(&args);
    assert_eq!(code, 0);
    let v = assert_valid("weyl", &a);
    assert_eq!(v["trials"], 20);
    assert_eq!(v["diagram_class_counts"].as_array().unwrap().len(), 1);
    let (_, b) = run(&args);
    assert_eq!(a, b);
    let threads = bin().args(args).env("REFLEKT_THREADS", "1").output().unwrap();
    assert_eq!(String::from_utf8(threads.stdout).unwrap(), a);
}

#[test]
fn classify_json_matches_schema() {
    for (rank, classes) in [(1, 1), (3, 3), (5, 4)] {
        let (code, body) = run(&["classify", "--max-rank", &rank.to_string()]);
        assert_eq!(code, 0);
        let v = assert_valid("classify", &body);
        assert_eq!(v["classes"].as_array().unwrap().len(), classes, "rank {rank}");
    }
}

#[test]
fn verify_json_matches_schema() {
    let (code, body) = run(&["verify", "g29", "--trials", "100"]);
    assert_eq!(code, 0);
    let v = assert_valid("verify", &body);
    assert_eq!(v["certification"]["order"], "7680");
    let (code, body) = run(&["verify", "g4", "--trials", "20"]);
    assert_eq!(code, 0);
    assert_valid("verify", &body);
}

#[test]
fn coxeter_json_matches_schema() {
    let (code, body) = run(&["coxeter", "g29", "--trials", "100"]);
    assert_eq!(code, 0);
    let v = assert_valid("coxeter", &body);
    assert_eq!(v["order"], 20);
}

#[test]
fn affine_json_matches_schema() {
    let (code, body) = run(&["affine", "g4", "--trials", "20", "--radius", "3"]);
    assert_eq!(code, 0);
    let v = assert_valid("affine", &body);
    assert_eq!(v["diagram"]["balanced"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["roots", "g7"]).0, 2);
    assert_eq!(run(&["roots", "g4", "--format", "yaml"]).0, 2);
    assert_eq!(run(&["affine", "g5"]).0, 2);
    assert_eq!(run(&["verify", "g8"]).0, 2);
    assert_eq!(run(&["weyl", "g4", "--trials", "4", "--max-iter", "1"]).0, 3);
    assert_eq!(run(&["verify", "g29", "--trials", "100", "--max-cosets", "10"]).0, 4);
}

#[test]
fn formats_and_out_file() {
    let (code, dot) = run(&["weyl", "g4", "--trials", "10", "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(dot.starts_with("digraph"));
    let (code, text) = run(&["classify", "--max-rank", "5", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(text.starts_with("classes up to rank 5: E2E E4E E6E E8E"));
    let dir = std::env::temp_dir().join(format!("reflekt-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("roots.json");
    let (code, stdout) = run(&["roots", "g4", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    assert_valid("roots", &std::fs::read_to_string(&path).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}
