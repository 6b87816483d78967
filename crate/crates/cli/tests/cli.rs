use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;

fn idemsync(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_idemsync"))
        .args(args)
        .env_remove("IDEMSYNC_MAX_SUBSETS")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn generate(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let out = idemsync(args);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let path = dir.path().join(name);
    fs::write(&path, &out.stdout).unwrap();
    path
}

#[test]
fn gen_flipflop_is_canonical() {
    let out = idemsync(&["gen", "flipflop"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "SAF 1\n2 2\na 0 0\nb 1 1\n");
}

#[test]
fn analyze_cerny() {
    let dir = TempDir::new().unwrap();
    let path = generate(&dir, "c4.saf", &["gen", "cerny", "4"]);
    let out = idemsync(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("synchronizing: true"), "{text}");
    assert!(text.contains("reset threshold: 9"), "{text}");

    let out = idemsync(&["analyze", path.to_str().unwrap(), "--json"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["reset_threshold"], 9);
}

#[test]
fn shortest_word_and_budget() {
    let dir = TempDir::new().unwrap();
    let path = generate(&dir, "c3.saf", &["gen", "cerny", "3"]);
    let out = idemsync(&["shortest-word", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).split_whitespace().count(), 4);

    let out = idemsync(&["shortest-word", path.to_str().unwrap(), "--budget", "2"]);
    assert_eq!(out.status.code(), Some(1));

    let out = Command::new(env!("CARGO_BIN_EXE_idemsync"))
        .args(["shortest-word", path.to_str().unwrap()])
        .env("IDEMSYNC_MAX_SUBSETS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    let out = Command::new(env!("CARGO_BIN_EXE_idemsync"))
        .args(["shortest-word", path.to_str().unwrap()])
        .env("IDEMSYNC_MAX_SUBSETS", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn not_synchronizing_exits_one() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("perm.saf");
    fs::write(&path, "SAF 1\n2 1\nswap 1 0\n").unwrap();
    let out = idemsync(&["shortest-word", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn malformed_input_exits_two() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.saf");
    fs::write(&path, "SAF 1\n2 1\na 0 5\n").unwrap();
    let out = idemsync(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let out = idemsync(&["analyze", dir.path().join("missing.saf").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = idemsync(&["verify", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let out = idemsync(&["gen", "gusev", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn transform_then_analyze_from_stdin() {
    let dir = TempDir::new().unwrap();
    let path = generate(&dir, "c3.saf", &["gen", "cerny", "3"]);
    let h = idemsync(&["transform", "higgins", path.to_str().unwrap()]);
    assert_eq!(h.status.code(), Some(0));
    let mut child = Command::new(env!("CARGO_BIN_EXE_idemsync"))
        .args(["analyze", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&h.stdout).unwrap();
    let out = child.wait_with_output().unwrap();
    let text = stdout(&out);
    assert!(text.contains("states: 6"), "{text}");
    assert!(text.contains("reset threshold: 8"), "{text}");
    assert!(text.contains("proper: true"), "{text}");
}

#[test]
fn verify_json_records() {
    let out = idemsync(&["verify", "cerny", "ladder", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(!text.is_empty());
    for line in text.lines() {
        let record: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(record["pass"], true, "{line}");
    }
}

#[test]
fn failing_claim_exits_one() {
    let out = idemsync(&["verify", "cor3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn chi_round_trip() {
    let dir = TempDir::new().unwrap();
    let path = generate(&dir, "c3.saf", &["gen", "cerny", "3"]);
    let p = path.to_str().unwrap();
    let enc = idemsync(&["chi", "encode", p, "s1", "s2", "s2"]);
    assert_eq!(enc.status.code(), Some(0));
    let encoded = stdout(&enc);
    assert_eq!(encoded.trim(), "b a1 b a2 b a2");
    let words: Vec<&str> = encoded.split_whitespace().collect();
    let mut args = vec!["chi", "decode", p];
    args.extend(&words);
    let dec = idemsync(&args);
    assert_eq!(stdout(&dec).trim(), "s1 s2 s2");

    let dec = idemsync(&["chi", "decode", p, "a1", "b"]);
    assert_eq!(dec.status.code(), Some(1));
}

#[test]
fn synchronize_ladder() {
    let dir = TempDir::new().unwrap();
    let path = generate(&dir, "l5.saf", &["gen", "ladder", "5"]);
    let out = idemsync(&["synchronize", "--idem2", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "b a b a");

    let flip = generate(&dir, "ff.saf", &["gen", "flipflop"]);
    let out = idemsync(&["synchronize", "--idem2", flip.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn export_dot() {
    let dir = TempDir::new().unwrap();
    let path = generate(&dir, "l4.saf", &["gen", "ladder", "4"]);
    let out = idemsync(&["export-dot", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("digraph automaton {"));
    assert!(text.contains("q3 -> q3 [label=\"a,b\"];"), "{text}");
}
