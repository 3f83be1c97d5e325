//! `Sub+` of the input, indexed in canonical order so that "canonically
//! least" is "smallest index".

use std::collections::HashMap;

use super::bitset::Label;
use crate::formula::{Agent, Formula, FormulaSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Kind {
    Top,
    Prop,
    Not(u32),
    And(u32, u32),
    Box(Agent, u32),
    /// Agent, guard, value-name index.
    Nabla(Agent, u32, u16),
}

pub(crate) struct Closure {
    pub formulas: Vec<Formula>,
    pub prints: Vec<String>,
    pub kinds: Vec<Kind>,
    /// Index of `~f`, when it is in the closure.
    pub neg: Vec<Option<u32>>,
    /// `Sub(f)` for every member.
    pub subs: Vec<Label>,
    /// Value names, sorted.
    pub names: Vec<String>,
    index: HashMap<String, u32>,
}

impl Closure {
    /// The closure `Sub+(seed)`.
    pub fn new(seed: &FormulaSet) -> Closure {
        let all = seed.sub_plus();
        let formulas: Vec<Formula> = all.iter().cloned().collect();
        let prints: Vec<String> = all.keys().map(str::to_string).collect();
        let index: HashMap<String, u32> = prints
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let names: Vec<String> = all.value_names().into_iter().collect();
        let lookup = |f: &Formula| index[&f.print()];
        let kinds: Vec<Kind> = formulas
            .iter()
            .map(|f| match f {
                Formula::Top => Kind::Top,
                Formula::Prop(_) => Kind::Prop,
                Formula::Not(c) => Kind::Not(lookup(c)),
                Formula::And(a, b) => Kind::And(lookup(a), lookup(b)),
                Formula::Box(i, c) => Kind::Box(*i, lookup(c)),
                Formula::Nabla(i, c, d) => Kind::Nabla(
                    *i,
                    lookup(c),
                    names.binary_search(d).expect("value name collected") as u16,
                ),
            })
            .collect();
        let n = formulas.len();
        let mut neg = vec![None; n];
        for (i, k) in kinds.iter().enumerate() {
            if let Kind::Not(c) = *k {
                neg[c as usize] = Some(i as u32);
            }
        }
        // Canonical order is not a topological order, so Sub is memoised.
        let mut subs: Vec<Option<Label>> = vec![None; n];
        for i in 0..n {
            Self::fill_sub(i as u32, &kinds, &mut subs, n);
        }
        Closure {
            formulas,
            prints,
            kinds,
            neg,
            subs: subs.into_iter().map(Option::unwrap).collect(),
            names,
            index,
        }
    }

    fn fill_sub(i: u32, kinds: &[Kind], subs: &mut [Option<Label>], n: usize) {
        if subs[i as usize].is_some() {
            return;
        }
        let mut set = Label::empty(n);
        set.insert(i);
        let children: &[u32] = match &kinds[i as usize] {
            Kind::Top | Kind::Prop => &[],
            Kind::Not(c) | Kind::Box(_, c) | Kind::Nabla(_, c, _) => std::slice::from_ref(c),
            Kind::And(a, b) => &[*a, *b],
        };
        for &c in children {
            Self::fill_sub(c, kinds, subs, n);
            set.union_with(subs[c as usize].as_ref().unwrap());
        }
        subs[i as usize] = Some(set);
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn index_of(&self, f: &Formula) -> Option<u32> {
        self.index.get(&f.print()).copied()
    }

    pub fn label_of(&self, set: &FormulaSet) -> Option<Label> {
        let mut label = Label::empty(self.len());
        for f in set {
            label.insert(self.index_of(f)?);
        }
        Some(label)
    }

    pub fn to_set(&self, label: &Label) -> FormulaSet {
        label
            .iter()
            .map(|i| self.formulas[i as usize].clone())
            .collect()
    }

    pub fn kind(&self, i: u32) -> Kind {
        self.kinds[i as usize]
    }

    /// `~f` for a formula whose negation must be in the closure, i.e. any
    /// member of `Sub` of the seed.
    pub fn negation(&self, i: u32) -> u32 {
        self.neg[i as usize].unwrap_or_else(|| {
            panic!(
                "negation of {} is outside the closure",
                self.prints[i as usize]
            )
        })
    }
}
