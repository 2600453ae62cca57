use std::path::Path;
use std::process::{Command, Output};

use loopchord::ChordDiagram;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loopchord"))
        .args(args)
        .env_remove("LOOPCHORD_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn weight_of_crossing_pair() {
    assert_eq!(stdout(&["weight", "1 2 1 2"]), "-1*x^1*y^1 - 1*y^2\n");
}

#[test]
fn weight_of_combo_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p2.json");
    let doc =
        r#"{"degree":2,"terms":[{"coeff":"1","word":"1 2 1 2"},{"coeff":"-1","word":"1 1 2 2"}]}"#;
    std::fs::write(&path, doc).unwrap();
    let arg = format!("@{}", path.display());
    assert_eq!(stdout(&["weight", &arg]), "-1*x^1*y^1 - 1*y^2\n");
}

#[test]
fn dimensions() {
    assert_eq!(stdout(&["dims", "4"]), "3\n");
    assert_eq!(stdout(&["dims", "--degree", "5"]), "4\n");
    assert_eq!(stdout(&["dims", "3", "--no-1t"]), "3\n");
}

#[test]
fn equivalence_follows_graph_class_in_degree_three() {
    for (a, b) in [
        ("1 2 3 1 2 3", "1 2 3 1 3 2"),
        ("1 2 1 3 2 3", "1 2 3 2 1 3"),
        ("1 1 2 3 2 3", "1 2 3 2 3 1"),
    ] {
        let json: serde_json::Value =
            serde_json::from_str(&stdout(&["equiv", a, b, "--format", "json"])).unwrap();
        assert_eq!(json["equivalent"], json["sameGraphClass"], "{a} vs {b}");
    }
}

#[test]
fn enumerated_words_round_trip() {
    let text = stdout(&["enum", "4"]);
    let words: Vec<&str> = text.lines().collect();
    assert_eq!(words.len(), 18);
    for w in words {
        assert_eq!(ChordDiagram::parse(w).unwrap().to_string(), w);
    }
}

#[test]
fn graph_and_primitive_output() {
    let g = stdout(&["graph", "1 2 3 1 2 3"]);
    assert!(g.contains("edges 1-2 1-3 2-3"));
    assert!(g.contains("betti 1 (unicyclic)"));
    let p = stdout(&["primitive", "pnk", "4", "4", "--weight"]);
    assert!(p.ends_with("W(p_{4,4}) = 6*x^3*y^1 + 9*x^2*y^2 + 4*x^1*y^3 + 1*y^4\n"));
}

#[test]
fn reports_and_exit_status() {
    let out = run(&["igc", "5", "--betti-max", "1", "--format", "json"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["checks"][0]["status"], "pass");
    assert!(run(&["kernel", "4"]).status.success());
}

#[test]
fn errors_exit_nonzero() {
    for args in [
        &["frobnicate"][..],
        &["weight", "1 2 1"],
        &["dims", "9"],
        &["enum"],
        &["dims", "4", "--jobs", "0"],
    ] {
        let out = run(args);
        assert!(!out.status.success(), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = run(&["dims", "9"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--override-limits"));
}

fn suite(jobs: &str, cache: &Path) -> Vec<u8> {
    let out = run(&[
        "verify-paper",
        "--jobs",
        jobs,
        "--cache-dir",
        cache.to_str().unwrap(),
        "--no-timing",
        "--format",
        "json",
        "--nmax",
        "7",
        "--degree",
        "5",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    out.stdout
}

#[test]
fn reports_do_not_depend_on_jobs_or_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cold = suite("1", dir.path());
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    for jobs in ["1", "4", "16"] {
        assert_eq!(suite(jobs, dir.path()), cold, "jobs {jobs}, warm cache");
        let fresh = tempfile::tempdir().unwrap();
        assert_eq!(suite(jobs, fresh.path()), cold, "jobs {jobs}, cold cache");
    }
}

#[test]
fn cache_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_loopchord"))
        .args(["dims", "4"])
        .env("LOOPCHORD_CACHE", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}
