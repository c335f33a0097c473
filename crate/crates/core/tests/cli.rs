//! Black-box tests of the command line binary: exit codes, JSON shapes,
//! stdin handling, and corpus determinism.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_mixmult");

const FREE_PAIR: &str = r#"{
    "variables": ["x", "y"],
    "j": ["x", "y"],
    "ideals": [["x", "y"]]
}"#;

/// Stabilizes only from offset four onward, so a cap of one starves it.
const SLOW_START: &str = r#"{
    "variables": ["x", "y"],
    "j": ["x", "y"],
    "ideals": [["y"]],
    "module": { "l": ["x^5"] }
}"#;

fn write_instance(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

#[test]
fn compute_reports_the_fit() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_instance(dir.path(), "free.json", FREE_PAIR);
    let out = run(&["compute", &path]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["q"], 2);
    assert_eq!(v["tilde_e"], 2);
    assert_eq!(v["mixed"]["1,0"], 1);
    assert_eq!(v["mixed"]["0,1"], 1);
    assert_eq!(v["rees_via_fiber_identity"], 2);
}

#[test]
fn compute_reads_stdin() {
    let mut child = Command::new(BIN)
        .args(["compute", "-", "--json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(FREE_PAIR.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim().lines().count(), 1, "compact mode is one line");
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["tilde_e"], 2);
}

#[test]
fn verify_exits_zero_on_success() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_instance(dir.path(), "free.json", FREE_PAIR);
    let out = run(&["verify", &path, "scaling", "--u", "2"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "verified");
    assert_eq!(v["theorem_id"], "scaling");

    let out = run(&["verify", &path, "chain", "--chain", "x"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["verdict"], "verified");
}

#[test]
fn verify_uses_the_embedded_request() {
    let dir = tempfile::tempdir().unwrap();
    let embedded = r#"{
        "variables": ["x", "y"],
        "j": ["x", "y"],
        "ideals": [["x", "y"]],
        "verify": { "theorem": "additivity" }
    }"#;
    let path = write_instance(dir.path(), "embedded.json", embedded);
    let out = run(&["verify", &path]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(stdout_json(&out)["theorem_id"], "additivity");
}

#[test]
fn missing_request_and_bad_input_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_instance(dir.path(), "free.json", FREE_PAIR);

    // no theorem anywhere
    let out = run(&["verify", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());

    // malformed JSON
    let bad = write_instance(dir.path(), "bad.json", "{ not json");
    let out = run(&["compute", &bad]);
    assert_eq!(out.status.code(), Some(2));

    // unknown variable in a generator
    let unknown = write_instance(
        dir.path(),
        "unknown.json",
        r#"{ "variables": ["x"], "j": ["x"], "ideals": [["t"]] }"#,
    );
    let out = run(&["compute", &unknown]);
    assert_eq!(out.status.code(), Some(2));

    // nonexistent file
    let out = run(&["compute", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // degenerate system: the scaling ideal acts nilpotently
    let degenerate = write_instance(
        dir.path(),
        "degenerate.json",
        r#"{
            "variables": ["x", "y"],
            "j": ["x", "y"],
            "ideals": [["x"]],
            "module": { "l": ["x^2", "x*y"] }
        }"#,
    );
    let out = run(&["compute", &degenerate]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn starved_fit_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_instance(dir.path(), "slow.json", SLOW_START);
    let out = run(&["compute", &path, "--cap", "1"]);
    assert_eq!(
        out.status.code(),
        Some(3),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );

    // with the default cap the same instance succeeds
    let out = run(&["compute", &path]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["mixed"]["0,0"], 5);
    assert_eq!(v["offset"], 4);

    // an inconclusive verification also exits three
    let out = run(&["verify", &path, "scaling", "--u", "2", "--cap", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stdout_json(&out)["verdict"], "inconclusive");
}

#[test]
fn primes_and_hilbert_views() {
    let dir = tempfile::tempdir().unwrap();
    let cross = write_instance(
        dir.path(),
        "cross.json",
        r#"{
            "variables": ["x", "y"],
            "j": ["x", "y"],
            "ideals": [["x", "y"]],
            "module": { "l": ["x*y"] }
        }"#,
    );
    let out = run(&["primes", &cross]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["module_dimension"], 1);
    let names: Vec<String> = v["minimal_primes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p.to_string())
        .collect();
    assert_eq!(names.len(), 2);

    let out = run(&["hilbert", &cross, "--extent", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let samples = v["samples"].as_array().unwrap();
    assert_eq!(samples.len(), 4, "two axes, extent two");
    for s in samples {
        assert!(s["exponents"].is_array());
        assert!(s["length"].is_number());
    }
}

#[test]
fn corpus_is_deterministic_and_summarized() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.tsv");
    let second = dir.path().join("b.tsv");

    let out = run(&[
        "corpus",
        "--seed",
        "9",
        "--size",
        "8",
        "--out",
        first.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let summary = String::from_utf8_lossy(&out.stderr);
    assert!(
        summary.contains("corpus: 8 rows"),
        "summary missing: {summary}"
    );

    let out = run(&[
        "corpus",
        "--seed",
        "9",
        "--size",
        "8",
        "--out",
        second.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));

    let a = std::fs::read(&first).unwrap();
    let b = std::fs::read(&second).unwrap();
    assert_eq!(a, b, "same seed, same bytes");

    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("# mixmult corpus\n"));
    assert!(text.contains("# seed 9\n"));
    let data_lines = text.lines().filter(|l| !l.starts_with('#')).count();
    assert_eq!(data_lines, 9, "header row plus eight data rows");

    // a different seed changes the bytes
    let out = run(&["corpus", "--seed", "10", "--size", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert_ne!(
        out.stdout,
        text.as_bytes(),
        "stdout TSV for another seed differs"
    );
}
