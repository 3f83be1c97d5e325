use lkvr::gen::Schema;
use lkvr::semantics::oracle_sat;
use lkvr::{decide, parse, Agent, Formula, FormulaSet, Model, ValueToken};
use proptest::prelude::*;

fn agent() -> impl Strategy<Value = Agent> {
    (1u32..=2).prop_map(|i| Agent::new(i).unwrap())
}

fn name() -> impl Strategy<Value = String> {
    prop_oneof![Just("d1".to_string()), Just("d2".to_string())]
}

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::top()),
        prop_oneof![Just("p"), Just("q"), Just("r")].prop_map(Formula::prop),
    ];
    leaf.prop_recursive(4, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (agent(), inner.clone()).prop_map(|(i, a)| Formula::boxed(i, a)),
            (agent(), inner, name()).prop_map(|(i, a, d)| Formula::nabla(i, a, d)),
        ]
    })
}

/// A model over at most four worlds with values drawn from two defaults and
/// the two distinguished tokens.
fn model() -> impl Strategy<Value = Model> {
    (1usize..=4).prop_flat_map(|n| {
        let edges = proptest::collection::vec((agent(), 0..n, 0..n), 0..=2 * n * n);
        let props = proptest::collection::vec((0..n, prop_oneof![Just("p"), Just("q")]), 0..=2 * n);
        let token = prop_oneof![
            (0i64..2).prop_map(ValueToken::Default),
            Just(ValueToken::Bullet),
            Just(ValueToken::Circ),
        ];
        let values = proptest::collection::vec((0..n, name(), token), 0..=2 * n);
        (Just(n), edges, props, values).prop_map(|(n, edges, props, values)| {
            let w = |k: usize| format!("w{k}");
            let mut m = Model::new((0..n).map(w)).unwrap();
            for (i, s, t) in edges {
                m.add_edge(i, &w(s), &w(t)).unwrap();
            }
            for (s, p) in props {
                m.set_true(&w(s), p).unwrap();
            }
            for (s, d, v) in values {
                m.set_value(&w(s), d, v).unwrap();
            }
            m
        })
    })
}

fn schema() -> impl Strategy<Value = Schema> {
    prop_oneof![
        Just(Schema::K),
        Just(Schema::DistNsv),
        Just(Schema::NsvBot),
        Just(Schema::NsvOr)
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_parse_round_trip(f in formula()) {
        let text = f.print();
        prop_assert_eq!(parse(&text).unwrap(), f.clone());
        prop_assert_eq!(parse(&text).unwrap().print(), text);
    }

    #[test]
    fn sub_plus_is_closed_and_linear(f in formula()) {
        let sp = f.sub_plus();
        prop_assert!(sp.len() <= 2 * f.size());
        prop_assert!(f.sub().is_subset(&sp));
        prop_assert!(sp.contains(&f));
        let sub = f.sub();
        for g in sp.iter() {
            prop_assert!(sub.contains(g) || g.negated_inner().is_some_and(|h| sub.contains(h)));
        }
        for g in sub.iter() {
            prop_assert!(sp.contains(&Formula::not(g.clone())));
        }
    }

    #[test]
    fn axioms_hold_everywhere(m in model(), s in schema(), i in agent(), a in formula(), b in formula(), d in name()) {
        let f = s.instantiate(i, a, b, &d);
        for w in m.worlds().to_vec() {
            prop_assert!(m.eval(&w, &f).unwrap(), "{} fails at {}", f, w);
        }
    }

    #[test]
    fn model_files_round_trip(m in model(), f in formula()) {
        let back = Model::from_json(&m.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), m.to_json());
        for w in m.worlds().to_vec() {
            prop_assert_eq!(back.eval(&w, &f).unwrap(), m.eval(&w, &f).unwrap());
        }
    }

    #[test]
    fn decide_agrees_with_models_and_oracle(f in formula()) {
        let v = decide(&f, true);
        prop_assert_eq!(v.satisfiable, v.model.is_some());
        if let Some(m) = &v.model {
            prop_assert!(m.satisfies(&f), "{}\n{}", f, m.to_json());
        }
        let n = f.size();
        prop_assert!(v.stats.max_depth <= 2 * n * n);
        prop_assert!(v.stats.max_chain <= 2 * n + 1);
        if let Some(m) = oracle_sat(&f, 2, 2) {
            prop_assert!(m.satisfies(&f));
            prop_assert!(v.satisfiable, "oracle model for {}", f);
        }
    }

    #[test]
    fn true_somewhere_means_sat(m in model(), f in formula()) {
        let nf = Formula::not(f.clone());
        if m.worlds().iter().any(|w| !m.eval(w, &f).unwrap()) {
            prop_assert!(decide(&nf, false).satisfiable);
        }
        if m.worlds().iter().any(|w| m.eval(w, &f).unwrap()) {
            prop_assert!(decide(&f, false).satisfiable);
        }
    }

    #[test]
    fn formula_sets_are_ordered_by_print(fs in proptest::collection::vec(formula(), 0..6)) {
        let set: FormulaSet = fs.iter().cloned().collect();
        let keys: Vec<&str> = set.keys().collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        sorted.dedup();
        prop_assert_eq!(keys, sorted);
    }
}
