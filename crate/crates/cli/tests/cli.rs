use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path
}

fn symdyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symdyn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

const FIB: &str = r#"{"type": "substitution", "morphism": {"a1": ["a2"], "a2": ["a2", "a1"]}}"#;
const FULL_AB: &str = r#"{"type": "full", "alphabet": ["a", "b"]}"#;
const FULL_A: &str = r#"{"type": "full", "alphabet": ["a"]}"#;
const SIGMA_AA: &str = r#"{"a": ["a", "a"]}"#;
const SIGMA_II: &str = r#"{"source": ["a", "b"], "target": ["a-", "a+", "b-", "b+"], "images": [["a-", "a+"], ["b-", "b+"]]}"#;

#[test]
fn complexity_of_fibonacci() {
    let dir = TempDir::new().unwrap();
    let fib = write(&dir, "fib.json", FIB);
    let out = symdyn(&["complexity", arg(&fib), "-n", "4"]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "n,p\n1,2\n2,3\n3,4\n4,5\n"
    );
}

#[test]
fn image_table_and_json_format() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.json", FULL_AB);
    let s = write(&dir, "s.json", SIGMA_II);
    let out = symdyn(&["image", arg(&x), arg(&s), "-n", "4"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "n,p\n1,4\n2,6\n3,8\n4,12\n"
    );

    let out = symdyn(&["image", arg(&x), arg(&s), "-n", "2", "--format", "json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["values"], serde_json::json!(["4", "6"]));
}

#[test]
fn recognize_counterexample_is_a_verdict() {
    let dir = TempDir::new().unwrap();
    let sigma = write(&dir, "sigma_aa.json", SIGMA_AA);
    let x = write(&dir, "full_a.json", FULL_A);
    let out = symdyn(&["recognize", arg(&sigma), arg(&x)]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "counterexample_found");
    assert_eq!(v["witness"]["kind"], "periodic_point");
    assert_eq!(v["witness"]["period"], serde_json::json!(["a"]));
}

#[test]
fn recognize_sigma_ii_certifies_zero() {
    let dir = TempDir::new().unwrap();
    let sigma = write(&dir, "s.json", SIGMA_II);
    let x = write(&dir, "x.json", FULL_AB);
    let out = symdyn(&[
        "recognize",
        arg(&sigma),
        arg(&x),
        "--r-max",
        "2",
        "--window",
        "8",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        v,
        serde_json::json!({"verdict": "certified_up_to", "r": 0, "window": 8})
    );
}

#[test]
fn entropy_csv_to_file() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.json", FULL_AB);
    let target = dir.path().join("profile.csv");
    let out = symdyn(&["entropy", arg(&x), "-n", "3", "-o", arg(&target)]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let csv = fs::read_to_string(target).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n,p,log_p_over_n");
    assert_eq!(lines[3], "3,8,0.693147180560");
}

#[test]
fn counterexample_report_passes() {
    let out = symdyn(&[
        "counterexample",
        "--alphabet-size",
        "2",
        "-n",
        "12",
        "--format",
        "json",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    for check in v["doubling"]["checks"].as_array().unwrap() {
        assert!(check["violation"].is_null(), "{}", check["name"]);
        assert_eq!(check["checked"].as_array().unwrap().len(), 12);
    }
    // p_Y(3) = 2·p_X(2)
    let text = symdyn(&["counterexample", "--alphabet-size", "2", "-n", "3"]);
    assert!(String::from_utf8(text.stdout)
        .unwrap()
        .contains("doubling-odd"));
}

#[test]
fn basis_change_report() {
    let dir = TempDir::new().unwrap();
    let x = write(
        &dir,
        "x.json",
        r#"{"type": "full", "alphabet": ["a1", "a2"]}"#,
    );
    let phi = write(
        &dir,
        "phi.json",
        r#"{"a1": ["a2", "a1"], "a2": ["a2", "a1", "a2"]}"#,
    );
    let psi = write(
        &dir,
        "psi.json",
        r#"{"a1": ["a2^-1", "a1", "a1"], "a2": ["a1^-1", "a2"]}"#,
    );
    let out = symdyn(&[
        "basis-change",
        arg(&x),
        arg(&phi),
        arg(&psi),
        "-n",
        "5",
        "--format",
        "json",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["constants"]["D"], "10");
    assert_eq!(v["checks"][0]["name"], "basis-change-upper");

    let wrong = write(&dir, "wrong.json", r#"{"a1": ["a1"], "a2": ["a1", "a2"]}"#);
    let out = symdyn(&["basis-change", arg(&x), arg(&phi), arg(&wrong), "-n", "3"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("inverse"));
}

#[test]
fn malformed_input_fails() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"type": "sft", "alphabet": ["a"]}"#);
    let out = symdyn(&["complexity", arg(&bad), "-n", "3"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("forbidden"));

    let junk = write(&dir, "junk.json", "not json");
    assert!(!symdyn(&["complexity", arg(&junk), "-n", "3"])
        .status
        .success());
    assert!(!symdyn(&[
        "complexity",
        arg(&dir.path().join("missing.json")),
        "-n",
        "3"
    ])
    .status
    .success());

    let x = write(&dir, "x.json", FULL_AB);
    assert!(!symdyn(&["complexity", arg(&x), "-n", "0"]).status.success());
    assert!(
        !symdyn(&["complexity", arg(&x), "-n", "2", "--format", "text"])
            .status
            .success()
    );
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.json", FIB);
    let args = ["entropy", arg(&x), "-n", "12", "--format", "json"];
    let first = symdyn(&args).stdout;
    assert!(!first.is_empty());
    assert_eq!(first, symdyn(&args).stdout);
}

#[test]
fn verify_all_small_window() {
    let out = symdyn(&["verify", "all", "-n", "4"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 11);
}
