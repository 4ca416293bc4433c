use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sepcolor"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn gen(dir: &Path, prefix: &str, extra: &[&str]) -> (String, String) {
    let mut args = vec!["gen", "--out-prefix", prefix];
    args.extend_from_slice(extra);
    let o = run(&args, dir);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    (format!("{prefix}.graph.json"), format!("{prefix}.lists.json"))
}

#[test]
fn color_then_verify() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let (g, l) = gen(d, "a", &["--kind", "stacked", "--n", "40", "--seed", "3"]);
    let o = run(&["color", "--graph", &g, "--lists", &l, "--out", "f.json", "--trace", "t.json"], d);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = run(&["verify", "--graph", &g, "--lists", &l, "--coloring", "f.json"], d);
    assert_eq!(code(&v), 0);
    let trace: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("t.json")).unwrap()).unwrap();
    assert!(!trace.as_array().unwrap().is_empty());
}

#[test]
fn color_prints_to_stdout_deterministically() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let (g, l) = gen(d, "p", &["--kind", "polygon", "--k", "9", "--m", "20", "--seed", "5"]);
    let a = run(&["color", "--graph", &g, "--lists", &l], d);
    let b = run(&["color", "--graph", &g, "--lists", &l], d);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let f: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(f.as_object().unwrap().len(), 29);
}

#[test]
fn verify_rejects_a_clash() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let g = write(d, "g.json", r#"{"n": 2, "edges": [[0, 1]]}"#);
    let l = write(d, "l.json", r#"{"lists": {"0": [1, 2, 3, 4], "1": [1, 5, 6, 7]}}"#);
    write(d, "f.json", r#"{"0": 1, "1": 1}"#);
    let o = run(&["verify", "--graph", g.to_str().unwrap(), "--lists", l.to_str().unwrap(), "--coloring", "f.json"], d);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("violations"));
}

#[test]
fn check_reports_overlap() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let g = write(d, "g.json", r#"{"n": 3, "edges": [[0, 1], [1, 2], [2, 0]]}"#);
    let same = write(d, "same.json", r#"{"lists": {"0": [1, 2, 3, 4], "1": [1, 2, 3, 4], "2": [5, 6, 7, 8]}}"#);
    let o = run(&["check", "--graph", g.to_str().unwrap(), "--lists", same.to_str().unwrap(), "--s", "2"], d);
    assert_eq!(code(&o), 1);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["separation_violations"].as_array().unwrap().len(), 1);
    let o = run(&["check", "--graph", g.to_str().unwrap(), "--lists", same.to_str().unwrap(), "--s", "4"], d);
    assert_eq!(code(&o), 0);
}

#[test]
fn check_reports_rooted_validity() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let g = write(d, "g.json", r#"{"n": 3, "edges": [[0, 1], [1, 2], [2, 0]]}"#);
    let l = write(d, "l.json", r#"{"lists": {"2": [1, 2, 3]}, "root": [0, 1], "root_pairs": [[1, 2]]}"#);
    let o = run(&["check", "--graph", g.to_str().unwrap(), "--lists", l.to_str().unwrap()], d);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["validity"]["verdict"], "valid-A");
    let o = run(&["color", "--graph", g.to_str().unwrap(), "--lists", l.to_str().unwrap()], d);
    assert_eq!(code(&o), 0);
    let f: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((f["0"].as_i64(), f["1"].as_i64(), f["2"].as_i64()), (Some(1), Some(2), Some(3)));
}

#[test]
fn separation_violation_exits_2() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let (g, l) = gen(d, "s", &["--kind", "stacked", "--n", "12", "--lists", "t-common", "--t", "3"]);
    let o = run(&["color", "--graph", &g, "--lists", &l], d);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
}

#[test]
fn short_list_exits_2() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let g = write(d, "g.json", r#"{"n": 2, "edges": [[0, 1]]}"#);
    let l = write(d, "l.json", r#"{"lists": {"0": [1, 2, 3], "1": [5, 6, 7, 8]}}"#);
    let o = run(&["color", "--graph", g.to_str().unwrap(), "--lists", l.to_str().unwrap()], d);
    assert_eq!(code(&o), 2);
}

#[test]
fn non_planar_exits_2() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let edges: Vec<String> =
        (0..5).flat_map(|a| (a + 1..5).map(move |b| format!("[{a}, {b}]"))).collect();
    let g = write(d, "g.json", &format!(r#"{{"n": 5, "edges": [{}]}}"#, edges.join(", ")));
    let lists: Vec<String> = (0..5).map(|v| format!(r#""{v}": [{}, {}, {}, {}]"#, 4 * v + 1, 4 * v + 2, 4 * v + 3, 4 * v + 4)).collect();
    let l = write(d, "l.json", &format!(r#"{{"lists": {{{}}}}}"#, lists.join(", ")));
    let o = run(&["color", "--graph", g.to_str().unwrap(), "--lists", l.to_str().unwrap()], d);
    assert_eq!(code(&o), 2);
}

#[test]
fn malformed_input_exits_4() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let bad = write(d, "bad.json", r#"{"n": 3, "edges": [[0, 1], "#);
    let l = write(d, "l.json", r#"{"lists": {}}"#);
    let o = run(&["color", "--graph", bad.to_str().unwrap(), "--lists", l.to_str().unwrap()], d);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
    let extra = write(d, "extra.json", r#"{"n": 1, "colour": 3}"#);
    let o = run(&["color", "--graph", extra.to_str().unwrap(), "--lists", l.to_str().unwrap()], d);
    assert_eq!(code(&o), 4);
    let o = run(&["color", "--graph", "missing.json", "--lists", l.to_str().unwrap()], d);
    assert_eq!(code(&o), 4);
    assert_eq!(code(&run(&["color", "--bogus"], d)), 4);
    assert_eq!(code(&run(&["--help"], d)), 0);
}

#[test]
fn oracle_finds_and_refutes() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let g = write(d, "g.json", r#"{"n": 3, "edges": [[0, 1], [1, 2], [2, 0]]}"#);
    let ok = write(d, "ok.json", r#"{"lists": {"0": [1, 2], "1": [1, 2], "2": [1, 3]}}"#);
    let no = write(d, "no.json", r#"{"lists": {"0": [1, 2], "1": [1, 2], "2": [1, 2]}}"#);
    let o = run(&["oracle", "--graph", g.to_str().unwrap(), "--lists", ok.to_str().unwrap()], d);
    assert_eq!(code(&o), 0);
    let o = run(&["oracle", "--graph", g.to_str().unwrap(), "--lists", no.to_str().unwrap()], d);
    assert_eq!(code(&o), 1);
    let o = run(&["oracle", "--graph", g.to_str().unwrap(), "--lists", ok.to_str().unwrap(), "--enumerate"], d);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["colorings"].as_array().unwrap().len(), 2);
}

#[test]
fn fuzz_is_clean_and_reproducible() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let o = run(&["fuzz", "--count", "100", "--seed", "1", "--report", "r1.json"], d);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let out = String::from_utf8_lossy(&o.stdout);
    assert!(out.contains("colored 100 / 100"), "{out}");
    let o = run(&["fuzz", "--count", "100", "--seed", "1", "--report", "r2.json", "--sequential"], d);
    assert_eq!(code(&o), 0);
    assert_eq!(fs::read(d.join("r1.json")).unwrap(), fs::read(d.join("r2.json")).unwrap());
    assert!(!d.join("fuzz-dump").exists());
}

#[test]
fn conjecture_fuzz_runs() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    for mode in ["3-1", "symmetric-4", "t-common"] {
        let o = run(&["fuzz", "--count", "40", "--seed", "2", "--mode", mode], d);
        assert!(code(&o) <= 1, "{mode}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(String::from_utf8_lossy(&o.stdout).contains("colourable"));
    }
}

#[test]
fn gen_rejects_bad_parameters() {
    let tmp = TempDir::new().unwrap();
    let o = run(&["gen", "--kind", "stacked", "--n", "2", "--out-prefix", "x"], tmp.path());
    assert_eq!(code(&o), 4);
}
