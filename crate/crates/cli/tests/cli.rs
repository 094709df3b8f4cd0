use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn dimgap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dimgap")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn info_and_json() {
    let dir = TempDir::new().unwrap();
    let k = write(&dir, "tri.scx", "1 2 3\n");
    let o = dimgap(&["info", s(&k)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dim: 2"));
    let o = dimgap(&["--json", "info", s(&k)]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["f_vector"], serde_json::json!([3, 3, 1]));
}

#[test]
fn generated_dunce_hat_invariants() {
    let dir = TempDir::new().unwrap();
    let o = dimgap(&["gen", "dunce-hat"]);
    assert_eq!(o.status.code(), Some(0));
    let hat = write(&dir, "hat.scx", &stdout(&o));
    assert_eq!(stdout(&dimgap(&["cols", s(&hat)])), "3\n");
    assert_eq!(stdout(&dimgap(&["cdim", s(&hat)])), "3\n");
    assert!(stdout(&dimgap(&["ldim", s(&hat)])).starts_with("ldim: 2"));
    let o = dimgap(&["--json", "betti", s(&hat)]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["betti"].as_object().unwrap().values().all(|b| b == 0));
}

#[test]
fn cdim_reports_undecided_on_tiny_budget() {
    let dir = TempDir::new().unwrap();
    let hat = stdout(&dimgap(&["gen", "dunce-hat"]));
    let k = write(&dir, "hat_and_tetrahedron.scx", &(hat + "11 12 13 14\n"));
    let o = dimgap(&["cdim", "--budget", "1", s(&k)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).starts_with("undecided [1,4]"));
    assert_eq!(stdout(&dimgap(&["cdim", s(&k)])), "3\n");
}

#[test]
fn mes_schedule_round_trips_through_verify_schedule() {
    let dir = TempDir::new().unwrap();
    let fam = write(&dir, "k5.fam", &stdout(&dimgap(&["gen", "skeleton-family", "4", "1"])));
    let o = dimgap(&["mes-schedule", s(&fam), "-d", "2", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("d 2\n"));
    assert!(text.contains("verified d=2"));
    let clps = write(&dir, "k5.clps", &text);
    let nerve = write(&dir, "k5.scx", &stdout(&dimgap(&["nerve", s(&fam)])));
    let o = dimgap(&["verify-schedule", s(&nerve), s(&clps)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let truncated: String = text.lines().take(3).map(|l| format!("{l}\n")).collect();
    let bad = write(&dir, "short.clps", &truncated);
    assert_eq!(dimgap(&["verify-schedule", s(&nerve), s(&bad)]).status.code(), Some(1));
}

#[test]
fn spider_is_not_interval_representable() {
    let dir = TempDir::new().unwrap();
    let spider = write(&dir, "spider.scx", &stdout(&dimgap(&["gen", "spider"])));
    assert_eq!(dimgap(&["rep1", s(&spider)]).status.code(), Some(1));
    let path = write(&dir, "path.scx", "1 2\n2 3\n");
    let o = dimgap(&["rep1", s(&path)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn representation_commands() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "path.scx", "1 2\n2 3\n");
    let good = write(
        &dir,
        "good.vpt",
        r#"{"dim": 1, "polytopes": {"1": [["0"]], "1 2": [["0"], ["1"]], "2": [["1"]], "2 3": [["1"], ["2"]], "3": [["2"]]}}"#,
    );
    assert_eq!(stdout(&dimgap(&["rep-verify", s(&path), s(&good)])), "valid\n");
    let o = dimgap(&["rep-embed", s(&path), s(&good)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1: (0)\n2: (1)\n3: (2)\n");
    let bad = write(
        &dir,
        "bad.vpt",
        r#"{"dim": 1, "polytopes": {"1": [["0"]], "1 2": [["0"], ["1"]], "2": [["1"]], "2 3": [["1"], ["2"]], "3": [["0"]]}}"#,
    );
    assert_eq!(dimgap(&["rep-verify", s(&path), s(&bad)]).status.code(), Some(1));
    assert_eq!(dimgap(&["rep-embed", s(&path), s(&bad)]).status.code(), Some(1));
}

#[test]
fn radon_commands() {
    let dir = TempDir::new().unwrap();
    let pts =
        write(&dir, "pts.vpt", r#"{"dim": 2, "polytopes": {"P": [["0","0"],["2","0"],["0","2"],["1/2","1/2"]]}}"#);
    let o = dimgap(&["radon", s(&pts)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("common point: (1/2, 1/2)"));

    let a = write(&dir, "a.vpt", r#"{"dim": 1, "polytopes": {"A": [["0"],["2"]]}}"#);
    let b = write(&dir, "b.vpt", r#"{"dim": 1, "polytopes": {"B": [["0"],["1/2"],["3/2"]]}}"#);
    let o = dimgap(&["gen-radon", s(&a), s(&b), "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("identity: holds"));
    let o = dimgap(&["--json", "gen-radon", s(&a), s(&b), "1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["witness"]["common_point"].is_array());
}

#[test]
fn theorem_pipelines() {
    let o = dimgap(&["theorem-b", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("ldim=2 cols=3 cdim=3"), "{text}");
    assert!(!text.contains("[FAIL]"));
    let o = dimgap(&["theorem-a", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("[FAIL]"));
}

#[test]
fn kunneth_and_join() {
    let dir = TempDir::new().unwrap();
    let circle = write(&dir, "c.scx", "1 2\n2 3\n1 3\n");
    let o = dimgap(&["kunneth", s(&circle), s(&circle)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("holds\n"));
    let joined = write(&dir, "j.scx", &stdout(&dimgap(&["join", s(&circle), s(&circle)])));
    assert_eq!(stdout(&dimgap(&["betti", s(&joined)])), "k  betti\n3  1\n");
}

#[test]
fn errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let o = dimgap(&["info", "/nonexistent/file.scx"]);
    assert_eq!(o.status.code(), Some(2));
    let broken = write(&dir, "broken.scx", "1 2\nx y\n");
    let o = dimgap(&["--json", "info", s(&broken)]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["error"].as_str().unwrap().contains("line 2"));
    assert_eq!(dimgap(&["gen", "theorem-b", "0"]).status.code(), Some(2));
}
