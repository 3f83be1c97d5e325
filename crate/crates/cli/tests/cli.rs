use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use lkvr::{parse, Agent, Model, ValueToken};

fn lkvr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lkvr"))
        .args(args)
        .output()
        .expect("run lkvr")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn first_line(o: &Output) -> String {
    stdout(o).lines().next().unwrap_or_default().to_string()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn nsvbot_negation_is_unsat() {
    let o = lkvr(&["sat", "~Kv1(F, d)"]);
    assert_eq!(first_line(&o), "UNSAT");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn negated_nabla_model_has_bullet_and_circ() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.json");
    let o = lkvr(&["sat", "~Kv1(T, d)", "--model", path(&m)]);
    assert_eq!(first_line(&o), "SAT");
    assert_eq!(o.status.code(), Some(0));

    let model = Model::from_json(&fs::read_to_string(&m).unwrap()).unwrap();
    let root = model.root_index();
    let succ: Vec<usize> = model.successors(Agent::new(1).unwrap(), root).collect();
    assert_eq!(succ.len(), 2);
    let tokens: Vec<&ValueToken> = succ.iter().map(|&w| model.value("d", w)).collect();
    assert_eq!(tokens, [&ValueToken::Bullet, &ValueToken::Circ]);

    let o = lkvr(&["check", path(&m), model.root(), "~Kv1(T, d)"]);
    assert_eq!(first_line(&o), "true");
    assert_eq!(o.status.code(), Some(0));
    let o = lkvr(&["check", path(&m), model.root(), "Kv1(T, d)"]);
    assert_eq!(first_line(&o), "false");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn named_axiom_negations_are_unsat() {
    for f in [
        "~([1](p -> q) -> (Kv1(q, d) -> Kv1(p, d)))",
        "~(<1>(p & q) & Kv1(p, d) & Kv1(q, d) -> Kv1(p | q, d))",
    ] {
        let o = lkvr(&["sat", f]);
        assert_eq!(first_line(&o), "UNSAT", "{f}");
        assert_eq!(o.status.code(), Some(1));
    }
}

#[test]
fn fuzz_seed_seven() {
    let args = ["fuzz", "--seed", "7", "--count", "100", "--size", "6"];
    let o = lkvr(&args);
    assert_eq!(first_line(&o), "100/100 ok");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), stdout(&lkvr(&args)));
}

#[test]
fn trace_goes_to_stderr() {
    let o = lkvr(&["sat", "<1>p & [1]q", "--trace"]);
    assert_eq!(stdout(&o), "SAT\n");
    let err = String::from_utf8(o.stderr).unwrap();
    let lines: Vec<&str> = err.lines().collect();
    assert!(lines.len() > 3);
    assert!(lines[0].starts_with("rule=a.iii size=1 depth=0"));
    assert!(lines.iter().all(|l| l.starts_with("rule=")));
}

#[test]
fn extracted_models_check_out() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.json");
    let f = "<1>p & <1>~p & Kv1(p, d) & [1]Kv2(q, d2) & <1><2>q";
    let o = lkvr(&["sat", f, "--model", path(&m)]);
    assert_eq!(o.status.code(), Some(0));
    let model = Model::from_json(&fs::read_to_string(&m).unwrap()).unwrap();
    assert!(model.satisfies(&parse(f).unwrap()));
    let o = lkvr(&["check", path(&m), model.root(), f]);
    assert_eq!(first_line(&o), "true");
}

#[test]
fn proofs() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.proof");
    fs::write(
        &good,
        "# K for agent 1\n1. p -> p ; TAUT\n2. [1](p -> p) ; NEC 1 agent=1\n",
    )
    .unwrap();
    let o = lkvr(&["prove", path(&good)]);
    assert_eq!(first_line(&o), "verified");
    assert_eq!(o.status.code(), Some(0));

    let bad = dir.path().join("bad.proof");
    fs::write(&bad, "1. p -> p ; TAUT\n2. [2](p -> p) ; NEC 1 agent=1\n").unwrap();
    let o = lkvr(&["prove", path(&bad)]);
    assert!(first_line(&o).starts_with("line 2:"), "{}", stdout(&o));
    assert_eq!(o.status.code(), Some(1));

    let junk = dir.path().join("junk.proof");
    fs::write(&junk, "1. p -> p\n").unwrap();
    assert_eq!(lkvr(&["prove", path(&junk)]).status.code(), Some(2));
}

#[test]
fn oracle() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.json");
    let f = "<1>p & <1>~p & Kv1(p, d)";
    let o = lkvr(&[
        "oracle",
        f,
        "--max-worlds",
        "3",
        "--max-values",
        "2",
        "--model",
        path(&m),
    ]);
    assert_eq!(first_line(&o), "found");
    assert_eq!(o.status.code(), Some(0));
    let model = Model::from_json(&fs::read_to_string(&m).unwrap()).unwrap();
    assert!(model.satisfies(&parse(f).unwrap()));

    let f = "<1>(p & q) & <1>(p & ~q) & <1>~p";
    let o = lkvr(&["oracle", f, "--max-worlds", "2", "--max-values", "1"]);
    assert_eq!(first_line(&o), "exhausted");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bad_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("m.json");
    fs::write(&junk, "{").unwrap();
    for args in [
        vec!["sat", "p &"],
        vec!["sat"],
        vec!["frobnicate"],
        vec!["sat", "p", "--count", "3"],
        vec!["check", path(&junk), "w0", "p"],
        vec!["check", "/nonexistent/model.json", "w0", "p"],
        vec!["oracle", "p", "--max-worlds", "0", "--max-values", "1"],
        vec!["fuzz", "--size", "0"],
    ] {
        let o = lkvr(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn unknown_world_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.json");
    lkvr(&["sat", "p", "--model", path(&m)]);
    assert_eq!(
        lkvr(&["check", path(&m), "nowhere", "p"]).status.code(),
        Some(2)
    );
}
