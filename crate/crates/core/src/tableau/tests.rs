use super::*;
use crate::formula::parse;

fn set(items: &[&str]) -> FormulaSet {
    items.iter().map(|s| parse(s).unwrap()).collect()
}

fn a1() -> Agent {
    Agent::new(1).unwrap()
}

/// Applies rules (a) and (b) to `x`, always following the first child.
fn expand_first(mut x: FormulaSet) -> FormulaSet {
    loop {
        if let Ok(children) = expand_propositional(&x) {
            x = children.into_iter().next().unwrap();
        } else if let Ok(children) = expand_full(&x) {
            x = children.into_iter().next().unwrap();
        } else {
            return x;
        }
    }
}

#[test]
fn blatant_inconsistency() {
    assert!(is_blatantly_inconsistent(&set(&["p", "~p"])));
    assert!(!is_blatantly_inconsistent(&set(&["p", "q"])));
    assert!(is_blatantly_inconsistent(&set(&["~T"])));
    assert!(is_blatantly_inconsistent(&set(&[
        "Kv1(p, d)",
        "~Kv1(p, d)"
    ])));
}

#[test]
fn propositional_rules() {
    assert_eq!(
        expand_propositional(&set(&["~~p"])).unwrap(),
        [set(&["~~p", "p"])]
    );
    assert_eq!(
        expand_propositional(&set(&["~(p & q)"])).unwrap(),
        [set(&["~(p & q)", "~p"]), set(&["~(p & q)", "~q"])]
    );
    assert_eq!(
        expand_propositional(&set(&["p & q"])).unwrap(),
        [set(&["(p & q)", "p", "q"])]
    );
    assert!(expand_propositional(&set(&["p"])).is_err());
    assert!(expand_propositional(&set(&["p", "~p"])).is_err());
}

#[test]
fn least_violation_first() {
    // "(p & q)" sorts before "~~r".
    let out = expand_propositional(&set(&["~~r", "p & q"])).unwrap();
    assert_eq!(out, [set(&["~~r", "(p & q)", "p", "q"])]);
}

#[test]
fn full_expansion_rule() {
    assert_eq!(
        expand_full(&set(&["[1]p"])).unwrap(),
        [set(&["[1]p", "p"]), set(&["[1]p", "~p"])]
    );
    assert!(expand_full(&set(&["p"])).is_err());
    assert!(expand_full(&set(&["Kv1(p, d)", "~p"])).is_err());
    assert!(expand_full(&set(&["p & q"])).is_err());
}

#[test]
fn states_for_one_guard() {
    let x = set(&["Kv1(p, d)", "p"]);
    let states: Vec<StateInfo> = enumerate_states(&x).unwrap().collect();
    assert_eq!(states.len(), 2);
    let key = (a1(), "d".to_string());
    let never: Vec<FormulaSet> = states.iter().map(|s| s.g[&key].never.clone()).collect();
    assert_eq!(never, [set(&["p"]), set(&[])]);
    assert_eq!(states[0].g[&key].cells, [set(&[])].into_iter().collect());
    assert_eq!(
        states[1].g[&key].cells,
        [set(&[]), set(&["p"])].into_iter().collect()
    );
}

#[test]
fn states_for_two_guards() {
    let x = set(&["Kv1(p, d)", "Kv1(q, d)", "p", "q"]);
    assert_eq!(enumerate_states(&x).unwrap().count(), 5);
}

#[test]
fn states_without_modalities() {
    let x = set(&["p", "~q"]);
    let states: Vec<StateInfo> = enumerate_states(&x).unwrap().collect();
    assert_eq!(states.len(), 1);
    assert!(states[0].g.is_empty() && states[0].h.is_empty() && states[0].ha.is_empty());
    assert!(enumerate_states(&set(&["[1]p"])).is_err());
}

#[test]
fn successor_for_box_negation() {
    let x = set(&["~[1]p", "[1]q", "p"]);
    let x = expand_first(x);
    let s = enumerate_states(&x).unwrap().next().unwrap();
    let succ = labeled_successors(&x, &s).unwrap();
    assert_eq!(succ.len(), 1);
    assert_eq!(succ[0].agent, a1());
    assert_eq!(succ[0].label, set(&["~p", "q"]));
    assert!(succ[0].constraints.is_empty());
}

#[test]
fn successors_for_nabla_negation() {
    let x = set(&["~Kv1(p, d)", "Kv1(q, d)", "p", "q"]);
    let s = enumerate_states(&x)
        .unwrap()
        .find(|s| {
            s.g[&(a1(), "d".to_string())].never.is_empty()
                && s.ha.values().all(|m| m["d"].is_empty())
                && s.hb.values().all(|m| m["d"].is_empty())
        })
        .unwrap();
    let succ = labeled_successors(&x, &s).unwrap();
    assert_eq!(succ.len(), 2);
    for (k, token) in [ValueToken::Bullet, ValueToken::Circ]
        .into_iter()
        .enumerate()
    {
        assert_eq!(succ[k].label, set(&["p", "~q"]));
        assert_eq!(succ[k].constraints["d"], token);
    }
}

#[test]
fn successors_reject_non_states() {
    let x = set(&["~Kv1(p, d)", "Kv1(q, d)", "p", "q"]);
    let mut s = enumerate_states(&x).unwrap().last().unwrap();
    s.g.clear();
    assert!(labeled_successors(&x, &s).is_err());
    // ha(d) = hb(d) = {q} is excluded by the state definition.
    let mut s = enumerate_states(&x).unwrap().nth(1).unwrap();
    let key = (a1(), "p".to_string(), "d".to_string());
    s.ha.get_mut(&key).unwrap().insert("d".into(), set(&["q"]));
    s.hb.get_mut(&key).unwrap().insert("d".into(), set(&["q"]));
    assert!(labeled_successors(&x, &s).is_err());
}

#[test]
fn every_streamed_state_round_trips() {
    let x = expand_first(set(&[
        "~Kv1(p, d)",
        "Kv1(q, d)",
        "Kv1(r, d)",
        "~[1]p",
        "Kv2(p, d2)",
    ]));
    let mut n = 0;
    for s in enumerate_states(&x).unwrap() {
        labeled_successors(&x, &s).unwrap();
        n += 1;
    }
    assert!(n > 1);
}

fn sat(text: &str) -> bool {
    let f = parse(text).unwrap();
    let v = decide(&f, true);
    if let Some(m) = &v.model {
        assert!(
            m.satisfies(&f),
            "extracted model fails {text}:\n{}",
            m.to_json()
        );
    }
    assert_eq!(v.satisfiable, v.model.is_some());
    v.satisfiable
}

#[test]
fn named_instances() {
    assert!(!sat("~Kv1(F, d)"));
    assert!(sat("~Kv1(T, d)"));
    assert!(!sat("[1]p & ~[1]~(~p & ~q)"));
    assert!(!sat("~([1](p -> q) -> (Kv1(q, d) -> Kv1(p, d)))"));
    assert!(!sat(
        "~(<1>(p & q) & Kv1(p, d) & Kv1(q, d) -> Kv1(p | q, d))"
    ));
}

#[test]
fn negated_nabla_model_shape() {
    let v = decide(&parse("~Kv1(T, d)").unwrap(), true);
    let m = v.model.unwrap();
    let root = m.root_index();
    let succ: Vec<usize> = m.successors(a1(), root).collect();
    assert_eq!(succ.len(), 2);
    assert_eq!(m.value("d", succ[0]), &ValueToken::Bullet);
    assert_eq!(m.value("d", succ[1]), &ValueToken::Circ);
}

#[test]
fn simple_verdicts() {
    assert!(sat("p"));
    assert!(!sat("p & ~p"));
    assert!(sat("T"));
    assert!(!sat("F"));
    assert!(sat("[1]F"));
    assert!(!sat("<1>F"));
    assert!(sat("Kv1(p, d) & <1>p & <1>~p"));
    assert!(!sat("[1]p & <1>~p"));
    assert!(sat("~Kv1(p, d) & [1](p -> q)"));
    assert!(!sat("~Kv1(p, d) & [1](p -> q) & Kv1(q, d)"));
    assert!(sat("~Kv1(p, d) & Kv1(q, d) & Kv1(r, d)"));
    assert!(!sat("~Kv1(p | q, d) & Kv1(p, d) & Kv1(q, d) & <1>(p & q)"));
    assert!(sat("~Kv1(p | q, d) & Kv1(p, d) & Kv1(q, d)"));
    assert!(sat("<1><2>~Kv1(p, d) & [1][2]Kv1(q, d2)"));
}

#[test]
fn decide_is_deterministic() {
    let f = parse("~Kv1(p | q, d) & Kv1(p, d) & Kv1(q, d) & <2>r").unwrap();
    let a = decide(&f, true);
    let b = decide(&f, true);
    assert_eq!(a, b);
    assert_eq!(a.model.unwrap().to_json(), b.model.unwrap().to_json());
}

#[test]
fn trace_reports_every_node() {
    let f = parse("<1>p & [1]q").unwrap();
    let mut events = Vec::new();
    let v = decide_with(&f, false, |e| events.push(*e));
    assert_eq!(events.len() as u64, v.stats.nodes);
    assert_eq!(events[0].depth, 0);
    assert!(events.iter().any(|e| e.rule == "d"));
    assert!(events.iter().all(|e| e.depth <= v.stats.max_depth));
}

#[test]
fn bound_is_saturating() {
    assert_eq!(state_count_bound(&set(&["p"])), 1);
    assert_eq!(state_count_bound(&set(&["p", "q"])), 1 << 10);
    assert_eq!(
        state_count_bound(&set(&["p", "q", "r", "s", "t", "u", "v"])),
        u128::MAX
    );
}
