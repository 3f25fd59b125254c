use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn dps(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dps")).args(args).output().expect("spawn dps")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

// A long interval with three short ones inside it. From one leaf the others
// are reached through the hub, which must branch.
const STAR: &str = r#"{
  "version": 1,
  "kind": "interval",
  "intervals": [["0", "10"], ["1", "2"], ["3", "4"], ["5", "6"]],
  "source": 1,
  "terminals": [2, 3]
}"#;

fn star(dir: &TempDir) -> String {
    let p = path(dir, "star.json");
    std::fs::write(&p, STAR).unwrap();
    p
}

fn json(p: &str) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(Path::new(p)).unwrap()).unwrap()
}

#[test]
fn decide_answers_against_the_optimum() {
    let dir = TempDir::new().unwrap();
    let input = star(&dir);
    let no = dps(&["solve-sssp", "--input", &input, "--decide", "0"]);
    assert_eq!(no.status.code(), Some(1));
    assert_eq!(stdout(&no).trim(), "no");
    let yes = dps(&["solve-sssp", "--input", &input, "--decide", "1"]);
    assert_eq!(yes.status.code(), Some(0));
    assert_eq!(stdout(&yes).trim(), "yes");
}

#[test]
fn solve_then_verify() {
    let dir = TempDir::new().unwrap();
    let input = star(&dir);
    let out = path(&dir, "tree.json");
    let solved = dps(&["solve-sssp", "--input", &input, "--out", &out, "--oracle-check"]);
    assert!(solved.status.success(), "{}", String::from_utf8_lossy(&solved.stderr));
    let result = json(&out);
    assert_eq!(result["branching"]["out_degree"], 1);
    assert_eq!(result["distances_ok"], true);
    assert_eq!(result["oracle"]["status"], "agrees");

    let checked = dps(&["verify", "--input", &input, "--subgraph", &out]);
    assert!(checked.status.success());
    assert!(stdout(&checked).starts_with("2 of 2 pairs preserved"));
}

#[test]
fn diag_board_through_the_pipeline() {
    let dir = TempDir::new().unwrap();
    let input = path(&dir, "diag.json");
    let out = path(&dir, "diag-result.json");
    assert!(dps(&["gen-diag", "--board", "6", "--out", &input]).status.success());
    let solved = dps(&["solve-bi", "--input", &input, "--out", &out, "--oracle-check"]);
    assert!(solved.status.success(), "{}", String::from_utf8_lossy(&solved.stderr));
    let result = json(&out);
    assert_eq!(result["kind"], "all-pairs");
    assert_eq!(result["distances_ok"], true);
    assert_eq!(result["oracle"]["status"], "agrees");
    assert!(dps(&["verify", "--input", &input, "--subgraph", &out]).status.success());

    let dot = dps(&["export-dot", "--input", &input, "--subgraph", &out]);
    assert!(dot.status.success());
    assert!(stdout(&dot).starts_with("graph"));
}

#[test]
fn generated_files_are_reproducible() {
    let a = dps(&["gen-random", "--n", "30", "--k", "4", "--seed", "9"]);
    let b = dps(&["gen-random", "--n", "30", "--k", "4", "--seed", "9"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let bi = dps(&["gen-random", "--bi", "--nx", "5", "--ny", "7", "--k", "3", "--seed", "2"]);
    assert!(bi.status.success());
    assert!(stdout(&bi).contains("\"bi-interval\""));
}

#[test]
fn tampered_subgraph_fails_verification() {
    let dir = TempDir::new().unwrap();
    let input = star(&dir);
    let out = path(&dir, "tree.json");
    assert!(dps(&["solve-sssp", "--input", &input, "--out", &out]).status.success());
    let mut result = json(&out);
    result["edges"] = serde_json::json!([[1, 0]]);
    std::fs::write(&out, serde_json::to_string(&result).unwrap()).unwrap();
    let checked = dps(&["verify", "--input", &input, "--subgraph", &out]);
    assert_eq!(checked.status.code(), Some(1));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let broken = path(&dir, "broken.json");
    std::fs::write(&broken, "{\n  \"version\": 1,,\n}").unwrap();
    let out = dps(&["solve-sssp", "--input", &broken]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let bad_source = path(&dir, "bad.json");
    std::fs::write(&bad_source, STAR.replace("\"source\": 1", "\"source\": 9")).unwrap();
    let out = dps(&["solve-sssp", "--input", &bad_source]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("source"));

    assert_eq!(dps(&["gen-antiparallel", "--n", "6"]).status.code(), Some(2));
    assert_eq!(dps(&["solve-sssp", "--bogus"]).status.code(), Some(2));
}
