use std::path::Path;
use std::process::{Command, Output};

use tempfile::tempdir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tuza-cochain")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_certify_verify_round_trip() {
    let dir = tempdir().unwrap();
    let graph = dir.path().join("g.json");
    let cert = dir.path().join("c.json");
    let o = run(&["gen", "--l-size", "4", "--m-size", "8", "--thresholds", "8,5,4,2", "-o", path(&graph)]);
    assert!(o.status.success());
    let o = run(&["certify", path(&graph), "--oracle", "-o", path(&cert)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("method=saturated/case1/P3\n"));
    assert!(out.contains("tau=20 proven=true\n"));
    assert!(out.contains("nu=16 proven=true\n"));
    assert!(out.contains("ratio_ok=true\n"));
    let o = run(&["verify", path(&graph), path(&cert)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verified=true"));
}

#[test]
fn general_graph_files_are_recognised() {
    let dir = tempdir().unwrap();
    let graph = dir.path().join("g.json");
    let cert = dir.path().join("c.json");
    assert!(run(&["gen", "--profile", "2,3,1,2", "--general", "-o", path(&graph)]).status.success());
    assert!(std::fs::read_to_string(&graph).unwrap().contains("\"edges\""));
    let o = run(&["certify", path(&graph), "-o", path(&cert)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(run(&["verify", path(&graph), path(&cert)]).status.code(), Some(0));
}

#[test]
fn exit_codes() {
    let dir = tempdir().unwrap();
    assert_eq!(run(&["certify", path(&dir.path().join("missing.json"))]).status.code(), Some(1));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(run(&["certify", path(&bad)]).status.code(), Some(2));

    let decreasing = dir.path().join("dec.json");
    std::fs::write(&decreasing, r#"{"l_size": 2, "m_size": 2, "thresholds": [0, 2]}"#).unwrap();
    assert_eq!(run(&["certify", path(&decreasing)]).status.code(), Some(2));

    let odd = dir.path().join("odd.json");
    std::fs::write(&odd, r#"{"l_size": 3, "m_size": 3, "thresholds": [3, 2, 1]}"#).unwrap();
    assert_eq!(run(&["certify", path(&odd)]).status.code(), Some(3));
    assert_eq!(run(&["certify", path(&odd), "--mode", "portfolio"]).status.code(), Some(0));

    let c5 = dir.path().join("c5.json");
    std::fs::write(&c5, r#"{"n": 5, "edges": [[0,1],[1,2],[2,3],[3,4],[0,4]]}"#).unwrap();
    assert_eq!(run(&["certify", path(&c5)]).status.code(), Some(3));

    let big = dir.path().join("big.json");
    assert!(run(&["gen", "--profile", "4,4,6,6", "--dense", "-o", path(&big)]).status.success());
    let o = run(&["certify", path(&big), "--mode", "exact", "--budget", "1"]);
    assert!(matches!(o.status.code(), Some(0) | Some(5)), "{o:?}");
}

#[test]
fn search_and_audit_reports() {
    let o = run(&["search", "--limit", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("tuple=")).count(), 12);
    assert!(out.contains("exceptional=12\nmissing=\nunexpected=\n"));

    let o = run(&["audit", "--max-l", "8", "--max-m", "8", "--realized-max", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("sound=true"));
    assert!(out.lines().any(|l| l.starts_with("chain=case2.1-p10prime-wide ")));
}

#[test]
fn fuzz_is_deterministic() {
    let args = ["fuzz", "--count", "60", "--max", "4", "--seed", "9"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("failures=0"));
}
