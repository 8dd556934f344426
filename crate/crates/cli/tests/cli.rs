use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use psiset_cli::paving_io::read_paving_csv;
use psiset_cli::problem::ProblemFile;
use psiset_core::{psi_invert, PsiConfig};

fn psiset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_psiset")).args(args).output().unwrap()
}

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems").join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn invert_writes_requested_files() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, stats, svg, json) = (
        dir.path().join("paving.csv"),
        dir.path().join("stats.csv"),
        dir.path().join("paving.svg"),
        dir.path().join("paving.json"),
    );
    let o = psiset(&[
        "invert", "--problem", s(&corpus("f1.json")), "--out", s(&csv), "--stats", s(&stats), "--svg", s(&svg),
        "--json", s(&json), "--resolution", "0.01",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("status,probability,lo_1,hi_1,lo_2,hi_2\n"));
    let rows = text.lines().count() - 1;
    let svg_text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(svg_text.matches("<rect").count(), rows);
    let stats_text = std::fs::read_to_string(&stats).unwrap();
    assert!(stats_text.starts_with(
        "iteration,candidates,accepted,candidate_measure,accepted_measure,ratio_count,ratio_measure\n"
    ));
    let parsed: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(parsed["boxes"].as_array().unwrap().len(), rows);
}

#[test]
fn paving_csv_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("paving.csv");
    let o = psiset(&["invert", "--problem", s(&corpus("f3.json")), "--out", s(&csv), "--resolution", "0.01"]);
    assert!(o.status.success(), "{}", stderr(&o));

    let loaded = ProblemFile::load(&corpus("f3.json")).unwrap().validate().unwrap();
    let mut expected = psi_invert(&loaded.problem, &PsiConfig::new(0.01, loaded.mode)).unwrap();
    expected.stats.clear();
    let read = read_paving_csv(std::fs::File::open(&csv).unwrap()).unwrap();
    assert_eq!(read, expected);
}

#[test]
fn malformed_problem_exits_1_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"vars\": [\"x\"\n  \"f\": []\n}").unwrap();
    let o = psiset(&["invert", "--problem", s(&bad), "--out", s(&dir.path().join("o.csv"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3 column"), "{}", stderr(&o));
    assert!(!dir.path().join("o.csv").exists());
}

#[test]
fn arity_mismatch_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"vars":["x"],"f":["x"],"R":[[0,1],[0,1]],"P":[[0,1]],"epsilon":0.1}"#).unwrap();
    let o = psiset(&["invert", "--problem", s(&bad), "--out", s(&dir.path().join("o.csv"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("R: expected 1"), "{}", stderr(&o));
}

#[test]
fn missing_problem_file_exits_1() {
    let o = psiset(&["invert", "--problem", "/nonexistent/problem.json", "--out", "/tmp/never.csv"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn svg_refuses_other_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("line.json");
    std::fs::write(&p, r#"{"vars":["x"],"f":["x^2"],"R":[[0,2]],"P":[[1,2]],"epsilon":0.01}"#).unwrap();
    let out = dir.path().join("o.csv");
    let o = psiset(&["invert", "--problem", s(&p), "--out", s(&out), "--svg", s(&dir.path().join("o.svg"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("2-dimensional"), "{}", stderr(&o));
    let o = psiset(&["invert", "--problem", s(&p), "--out", s(&out)]);
    assert!(o.status.success());
}

#[test]
fn verify_reports_no_violations() {
    let dir = tempfile::tempdir().unwrap();
    let o = psiset(&[
        "invert", "--problem", s(&corpus("f2.json")), "--out", s(&dir.path().join("o.csv")), "--resolution", "0.01",
        "--verify", "20", "--seed", "3", "--mode", "width",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains(", 0 violations"), "{}", stdout(&o));
}

#[test]
fn eval_examples() {
    let o = psiset(&["eval", "x^2-2*x+1", "--box", "x=[3,4]"]);
    assert_eq!(stdout(&o), "[4, 9]\n");
    let o = psiset(&["eval", "exp(x)", "--box", "x=[0,0]"]);
    assert_eq!(stdout(&o), "[1, 1]\n");
    let o = psiset(&["eval", "x^2-2*x+1", "--box", "x=[3,4]", "--space", "semigroup"]);
    assert_eq!(stdout(&o), "[2, 11]\n");
    let o = psiset(&["eval", "x/y", "--box", "x=[1,2],y=[3,4]", "--space", "semigroup"]);
    assert_eq!(stdout(&o), "[0.25, 0.66666666666666663]\n");
    let o = psiset(&["eval", "1/x", "--box", "x=[-1,1]"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("containing zero"), "{}", stderr(&o));
}

#[test]
fn eval_rejects_bad_input() {
    assert_eq!(psiset(&["eval", "x +", "--box", "x=[0,1]"]).status.code(), Some(1));
    assert_eq!(psiset(&["eval", "x + y", "--box", "x=[0,1]"]).status.code(), Some(1));
    assert_eq!(psiset(&["eval", "x", "--box", "x=[2,1]"]).status.code(), Some(1));
    assert_eq!(psiset(&["eval", "x^0.5", "--box", "x=[0,1]"]).status.code(), Some(1));
}

#[test]
fn table_prints_product_table() {
    let o = psiset(&["table"]);
    let out = stdout(&o);
    assert!(out.contains("e2: e2 e2 e3 e3\n"));
    assert!(out.contains("e4: e4 e3 e2 e1\n"));
    assert!(out.ends_with("symmetric: yes\n"));
}

#[test]
fn stats_from_run_and_from_file_agree() {
    let dir = tempfile::tempdir().unwrap();
    let stats = dir.path().join("stats.csv");
    let o = psiset(&[
        "invert", "--problem", s(&corpus("f4.json")), "--out", s(&dir.path().join("o.csv")), "--stats", s(&stats),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let from_file = stdout(&psiset(&["stats", "--input", s(&stats)]));
    let from_run = stdout(&psiset(&["stats", "--problem", s(&corpus("f4.json"))]));
    assert_eq!(from_file, from_run);
    let corr: f64 = from_file
        .lines()
        .last()
        .unwrap()
        .strip_prefix("correlation: ")
        .unwrap()
        .parse()
        .unwrap();
    assert!(corr > 0.9);
}

#[test]
fn unknown_flags_exit_1() {
    assert_eq!(psiset(&["invert", "--bogus"]).status.code(), Some(1));
    assert_eq!(psiset(&["table", "--help"]).status.code(), Some(0));
}
