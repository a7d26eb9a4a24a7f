use std::process::{Command, Output};

use serde_json::Value;

fn lexmv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lexmv")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

#[test]
fn weak_lexify_offset() {
    let out = lexmv(&["run", "lexify", "gamma(lex(Z,Z),(2,1))", "--kind", "weak", "--samples", "1000", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let j = report(&out);
    assert_eq!(j["verdict"], "pass");
    assert_eq!(j["result"]["b"], "(0,1)");
    assert_eq!(j["config"]["seed"], "7");
}

#[test]
fn two_states_on_the_square() {
    let out = lexmv(&["run", "states", "prod(chain(2),chain(2))"]);
    assert_eq!(out.status.code(), Some(0));
    let j = report(&out);
    let states = j["result"]["states"].as_array().unwrap();
    assert_eq!(states.len(), 2);
    assert_eq!(states[0]["(1,2)"], "1/2");
}

#[test]
fn affine_fiber_is_not_symmetric() {
    let out = lexmv(&["run", "check-axioms", "gamma(lex(Z,Aff),(1,aff(2,0)))", "--samples", "1000"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["facts"]["symmetric"], "false");
}

#[test]
fn violation_exits_one_with_counterexample() {
    let out = lexmv(&["run", "witness", "gamma(lex(Z,Z),(2,1))", "--kind", "strong", "--samples", "50"]);
    assert_eq!(out.status.code(), Some(1));
    let j = report(&out);
    assert_eq!(j["verdict"], "violation");
    let bad: Vec<&Value> = j["checks"].as_array().unwrap().iter().filter(|c| c["passed"] == false).collect();
    assert!(!bad.is_empty());
    assert!(bad.iter().all(|c| c["counterexample"].is_string()));
}

#[test]
fn parse_and_usage_errors_exit_two() {
    for args in [
        &["run", "ideals", "chain(0)"][..],
        &["run", "ideals", "chain(2"],
        &["run", "frobnicate", "chain(2)"],
        &["run", "classify", "chain(2)"],
        &["run", "ideals", "table"],
        &["run", "ideals", "chain(2)", "--samples", "lots"],
    ] {
        let out = lexmv(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    let err = String::from_utf8(lexmv(&["run", "ideals", "prod(chain(1),\n  gamma(Q,1))"]).stderr).unwrap();
    assert!(err.contains("2:3"), "{err}");
}

#[test]
fn table_file_and_json_output() {
    let dir = tempfile::tempdir().unwrap();
    let tbl = dir.path().join("c2.tbl");
    std::fs::write(&tbl, "# chain(2)\nsize 3\noplus\n0 1 2\n1 2 2\n2 2 2\nneg 2 1 0\nzero 0\none 2\n").unwrap();
    let json = dir.path().join("out.json");
    let out = lexmv(&[
        "run",
        "isomorphic",
        "table ; chain(2)",
        "--table",
        tbl.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&json).unwrap();
    assert!(text.ends_with("}\n") && !text.contains('\r'));
    let j: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(j["input"], "table ; chain(2)");

    std::fs::write(&tbl, "size 2\noplus\n0 1\n1 0\nneg 1 0\nzero 0\none 1\n").unwrap();
    let out = lexmv(&["run", "check-axioms", "table", "--table", tbl.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "broken tables are rejected on load");
}

#[test]
fn cap_exceeded_is_reported() {
    let out = lexmv(&["run", "rdp2", "chain(40)"]);
    assert_eq!(out.status.code(), Some(2));
    let j = report(&out);
    assert_eq!(j["verdict"], "cap-exceeded");
    assert!(j["result"]["cap_exceeded"].is_string());
}

#[test]
fn byte_identical_reruns() {
    let args = ["run", "witness", "gamma(lex(Q,Aff),(1,aff(1,0)))", "--samples", "200", "--seed", "11"];
    let a = lexmv(&args);
    let b = lexmv(&args);
    let c = lexmv(&[&args[..], &["--workers", "3"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert!(!String::from_utf8_lossy(&a.stdout).contains("timing_ms"));
    let t = report(&lexmv(&[&args[..], &["--timing"]].concat()));
    assert!(t["timing_ms"].is_string());
}

#[test]
fn sorted_keys() {
    let out = lexmv(&["run", "radical", "prod(chain(3),chain(1))"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let top: Vec<&str> = text.lines().filter(|l| l.starts_with("  \"")).map(|l| l.trim().split('"').nth(1).unwrap()).collect();
    let mut sorted = top.clone();
    sorted.sort();
    assert_eq!(top, sorted);
    assert_eq!(top, ["checks", "command", "config", "facts", "input", "result", "verdict"]);
}
