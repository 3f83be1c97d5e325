//! Matching formulas against axiom schemas.
//!
//! A schema is kept as a formula in which every proposition is a formula
//! metavariable, every agent an agent metavariable and every value name a
//! value-name metavariable.

use std::collections::HashMap;

use crate::formula::{Agent, Formula};
use crate::gen::Schema;

#[derive(Default)]
struct Bindings<'f> {
    formulas: HashMap<&'f str, &'f Formula>,
    agents: HashMap<Agent, Agent>,
    names: HashMap<&'f str, &'f str>,
}

fn bind<K: Eq + std::hash::Hash, V: PartialEq + Copy>(map: &mut HashMap<K, V>, k: K, v: V) -> bool {
    *map.entry(k).or_insert(v) == v
}

fn unify<'f>(pat: &'f Formula, f: &'f Formula, b: &mut Bindings<'f>) -> bool {
    match (pat, f) {
        (Formula::Prop(meta), _) => bind(&mut b.formulas, meta.as_str(), f),
        (Formula::Top, Formula::Top) => true,
        (Formula::Not(p), Formula::Not(g)) => unify(p, g, b),
        (Formula::And(p1, p2), Formula::And(g1, g2)) => unify(p1, g1, b) && unify(p2, g2, b),
        (Formula::Box(i, p), Formula::Box(j, g)) => bind(&mut b.agents, *i, *j) && unify(p, g, b),
        (Formula::Nabla(i, p, d), Formula::Nabla(j, g, e)) => {
            bind(&mut b.agents, *i, *j)
                && bind(&mut b.names, d.as_str(), e.as_str())
                && unify(p, g, b)
        }
        _ => false,
    }
}

/// The patterns accepted for a schema. `NSVOR` is accepted with its
/// antecedent conjunction grouped either way.
fn patterns(s: Schema) -> Vec<Formula> {
    let i = Agent::new(1).expect("agent 1");
    let (a, b) = (Formula::prop("a"), Formula::prop("b"));
    let mut out = vec![s.instantiate(i, a.clone(), b.clone(), "d")];
    if s == Schema::NsvOr {
        out.push(Formula::implies(
            Formula::and(
                Formula::diamond(i, Formula::and(a.clone(), b.clone())),
                Formula::and(
                    Formula::nabla(i, a.clone(), "d"),
                    Formula::nabla(i, b.clone(), "d"),
                ),
            ),
            Formula::nabla(i, Formula::or(a, b), "d"),
        ));
    }
    out
}

/// Whether `f` is an instance of the schema.
pub fn matches_schema(s: Schema, f: &Formula) -> bool {
    patterns(s)
        .iter()
        .any(|p| unify(p, f, &mut Bindings::default()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn m(s: Schema, text: &str) -> bool {
        matches_schema(s, &parse(text).unwrap())
    }

    #[test]
    fn instances() {
        assert!(m(
            Schema::K,
            "[2](p & q -> [1]r) -> ([2](p & q) -> [2][1]r)"
        ));
        assert!(!m(Schema::K, "[2](p -> q) -> ([1]p -> [1]q)"));
        assert!(!m(Schema::K, "[1](p -> q) -> ([1]q -> [1]p)"));
        assert!(m(
            Schema::DistNsv,
            "[1](p -> q) -> (Kv1(q, d) -> Kv1(p, d))"
        ));
        assert!(!m(
            Schema::DistNsv,
            "[1](p -> q) -> (Kv1(q, d) -> Kv1(p, d2))"
        ));
        assert!(m(Schema::NsvBot, "Kv3(F, d7)"));
        assert!(m(Schema::NsvBot, "Kv3(~T, d7)"));
        assert!(!m(Schema::NsvBot, "Kv3(T, d7)"));
        assert!(m(
            Schema::NsvOr,
            "<1>(p & q) & Kv1(p, d) & Kv1(q, d) -> Kv1(p | q, d)"
        ));
        assert!(m(
            Schema::NsvOr,
            "<1>(p & q) & (Kv1(p, d) & Kv1(q, d)) -> Kv1(p | q, d)"
        ));
        assert!(!m(
            Schema::NsvOr,
            "<1>(p & q) & Kv1(p, d) & Kv1(q, d) -> Kv1(q | p, d)"
        ));
        assert!(!m(
            Schema::NsvOr,
            "<2>(p & q) & Kv1(p, d) & Kv1(q, d) -> Kv1(p | q, d)"
        ));
    }

    #[test]
    fn metavariables_are_not_confused_with_instance_atoms() {
        // The pattern's own atom names must not leak into the instance.
        assert!(m(Schema::K, "[1](b -> a) -> ([1]b -> [1]a)"));
        assert!(m(Schema::NsvBot, "Kv1(F, d)"));
    }
}
