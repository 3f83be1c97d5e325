//! Tableau decision procedure.
//!
//! Nodes carry a label (a subset of `Sub+` of the input), and state nodes
//! additionally the extra information `(g, h, ha, hb)` and a partial map `C`
//! from value names to constraints. The tree is built depth first:
//!
//! * (a) propositional decomposition of `~~f`, `~(a & b)` and `a & b`;
//! * (b) splitting on an undetermined subformula until fully expanded;
//! * (c) one unlabelled child per state over the fully expanded label;
//! * (d) labelled successors for every `~[i]f` and `~Kv_i(f, d)`;
//! * (e) marking: unlabelled children are alternatives, labelled children
//!   are all required, leaves are satisfiable iff not blatantly
//!   inconsistent.
//!
//! A satisfiable root yields a model built from one satisfiable state per
//! branch.

mod bitset;
mod closure;
mod rules;
mod search;
mod state;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::formula::{Agent, Formula, FormulaSet};
use crate::semantics::{Model, ValueToken};
use bitset::Label;
use closure::Closure;
use rules::Tok;
use state::{Shape, StateIter};

pub use search::{Stats, TraceEvent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("contract violation: {0}")]
    ContractViolation(String),
}

fn violation(msg: impl Into<String>) -> TableauError {
    TableauError::ContractViolation(msg.into())
}

/// The result of [`decide`].
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub satisfiable: bool,
    /// Present iff satisfiable and a model was requested.
    pub model: Option<Model>,
    pub stats: Stats,
}

/// Decides satisfiability of `f`, extracting a model when `want_model`.
pub fn decide(f: &Formula, want_model: bool) -> Verdict {
    decide_with(f, want_model, |_| {})
}

/// [`decide`] with a hook called once per tableau node.
pub fn decide_with(f: &Formula, want_model: bool, trace: impl FnMut(&TraceEvent)) -> Verdict {
    let seed: FormulaSet = std::iter::once(f.clone()).collect();
    let cl = Closure::new(&seed);
    let label = cl.label_of(&seed).expect("seed in closure");
    let mut search = search::Search::new(&cl, want_model, trace);
    let outcome = search.run(label, vec![None; cl.names.len()]);
    Verdict {
        satisfiable: outcome.is_some(),
        model: outcome.flatten().map(|w| search::build_model(&cl, &w)),
        stats: search.stats,
    }
}

/// Contains some `f` together with `~f`, or contains `~T`.
pub fn is_blatantly_inconsistent(x: &FormulaSet) -> bool {
    let cl = Closure::new(x);
    rules::blatantly_inconsistent(&cl, &cl.label_of(x).expect("x in its closure"))
}

fn closure_and_label(x: &FormulaSet) -> (Closure, Label) {
    let cl = Closure::new(x);
    let label = cl.label_of(x).expect("x in its closure");
    (cl, label)
}

/// Rule (a) on the canonically least violating member of `x`.
pub fn expand_propositional(x: &FormulaSet) -> Result<Vec<FormulaSet>, TableauError> {
    let (cl, label) = closure_and_label(x);
    if rules::blatantly_inconsistent(&cl, &label) {
        return Err(violation("label is blatantly inconsistent"));
    }
    let exp = rules::propositional_step(&cl, &label)
        .ok_or_else(|| violation("label is already a propositional tableau"))?;
    Ok(children(&cl, &label, exp))
}

/// Rule (b): splits on the canonically least member of `Sub(x)` of which
/// neither polarity is in `x`.
pub fn expand_full(x: &FormulaSet) -> Result<Vec<FormulaSet>, TableauError> {
    let (cl, label) = closure_and_label(x);
    if rules::blatantly_inconsistent(&cl, &label) {
        return Err(violation("label is blatantly inconsistent"));
    }
    if rules::propositional_step(&cl, &label).is_some() {
        return Err(violation("label is not a propositional tableau"));
    }
    let exp = rules::full_step(&cl, &label)
        .ok_or_else(|| violation("label is already fully expanded"))?;
    Ok(children(&cl, &label, exp))
}

fn children(cl: &Closure, label: &Label, exp: rules::Expansion) -> Vec<FormulaSet> {
    (0..exp.arity())
        .map(|k| cl.to_set(&exp.child(label, k)))
        .collect()
}

fn fully_expanded(x: &FormulaSet) -> Result<(Closure, Label), TableauError> {
    let (cl, label) = closure_and_label(x);
    if rules::blatantly_inconsistent(&cl, &label) {
        return Err(violation("label is blatantly inconsistent"));
    }
    if rules::propositional_step(&cl, &label).is_some() || rules::full_step(&cl, &label).is_some() {
        return Err(violation("label is not fully expanded"));
    }
    Ok((cl, label))
}

/// `g(i, d)`: the guards never realised and the cells of guards sharing a
/// value. `cells` always contains the empty set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Partition {
    pub never: FormulaSet,
    pub cells: BTreeSet<FormulaSet>,
}

/// The extra information `(g, h, ha, hb)` of a state. Formulas in keys are
/// given by their canonical print.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct StateInfo {
    /// Keyed by `(i, d)`.
    pub g: BTreeMap<(Agent, String), Partition>,
    /// Keyed by `(i, f)` for `~[i]f`; maps `d` to a cell of `g(i, d)`.
    pub h: BTreeMap<(Agent, String), BTreeMap<String, FormulaSet>>,
    /// Keyed by `(i, f, d0)` for `~Kv_i(f, d0)`.
    pub ha: BTreeMap<(Agent, String, String), BTreeMap<String, FormulaSet>>,
    pub hb: BTreeMap<(Agent, String, String), BTreeMap<String, FormulaSet>>,
}

fn cell_set(cl: &Closure, shape: &Shape, digits: &[u8], group: usize, cell: u8) -> FormulaSet {
    if cell == 0 {
        return FormulaSet::new();
    }
    let g = &shape.groups[group];
    g.guards
        .iter()
        .zip(shape.rgs(digits, group))
        .filter(|&(_, &b)| b == cell)
        .map(|(&f, _)| cl.formulas[f as usize].clone())
        .collect()
}

fn state_info(cl: &Closure, shape: &Shape, digits: &[u8]) -> StateInfo {
    let name = |d: u16| cl.names[d as usize].clone();
    let print = |f: u32| cl.prints[f as usize].clone();
    let mut g = BTreeMap::new();
    for (k, grp) in shape.groups.iter().enumerate() {
        let rgs = shape.rgs(digits, k);
        let never = grp
            .guards
            .iter()
            .zip(rgs)
            .filter(|&(_, &b)| b == 0)
            .map(|(&f, _)| cl.formulas[f as usize].clone())
            .collect();
        let cells = (0..=shape.blocks(digits, k))
            .map(|c| cell_set(cl, shape, digits, k, c))
            .collect();
        g.insert((grp.agent, name(grp.name)), Partition { never, cells });
    }
    let cells_map = |pairs: Vec<(usize, u8)>| -> BTreeMap<String, FormulaSet> {
        pairs
            .into_iter()
            .map(|(k, c)| {
                (
                    name(shape.groups[k].name),
                    cell_set(cl, shape, digits, k, c),
                )
            })
            .collect()
    };
    let mut h = BTreeMap::new();
    for (j, &(agent, f)) in shape.box_negs.iter().enumerate() {
        h.insert((agent, print(f)), cells_map(shape.h_cells(digits, j)));
    }
    let (mut ha, mut hb) = (BTreeMap::new(), BTreeMap::new());
    for (j, &(agent, f, d0)) in shape.nabla_negs.iter().enumerate() {
        let key = (agent, print(f), name(d0));
        for (second, out) in [(false, &mut ha), (true, &mut hb)] {
            let mut map = cells_map(shape.hx_cells(digits, j, second));
            map.entry(name(d0)).or_default();
            out.insert(key.clone(), map);
        }
    }
    StateInfo { g, h, ha, hb }
}

/// Encodes `s` as a digit vector of `shape`; the caller checks the round trip.
fn digits_of(cl: &Closure, shape: &Shape, s: &StateInfo) -> Option<Vec<u8>> {
    let mut digits = vec![0u8; shape.width()];
    let mut blocks: Vec<Vec<FormulaSet>> = Vec::new();
    let mut pos = 0;
    for grp in &shape.groups {
        let part = s.g.get(&(grp.agent, cl.names[grp.name as usize].clone()))?;
        let mut seen: Vec<FormulaSet> = Vec::new();
        for &f in &grp.guards {
            let f = &cl.formulas[f as usize];
            if !part.never.contains(f) {
                let cell = part.cells.iter().find(|c| c.contains(f))?;
                let k = match seen.iter().position(|c| c == cell) {
                    Some(k) => k,
                    None => {
                        seen.push(cell.clone());
                        seen.len() - 1
                    }
                };
                digits[pos] = k as u8 + 1;
            }
            pos += 1;
        }
        blocks.push(seen);
    }
    let cell_index = |group: usize, set: &FormulaSet| -> Option<u8> {
        if set.is_empty() {
            return Some(0);
        }
        blocks[group]
            .iter()
            .position(|c| c == set)
            .map(|k| k as u8 + 1)
    };
    for (j, &(agent, f)) in shape.box_negs.iter().enumerate() {
        let map = s.h.get(&(agent, cl.prints[f as usize].clone()))?;
        for (group, _) in shape.h_cells(&digits, j) {
            let set = map.get(&cl.names[shape.groups[group].name as usize])?;
            digits[pos] = cell_index(group, set)?;
            pos += 1;
        }
    }
    for (j, &(agent, f, d0)) in shape.nabla_negs.iter().enumerate() {
        let key = (
            agent,
            cl.prints[f as usize].clone(),
            cl.names[d0 as usize].clone(),
        );
        for (second, table) in [(false, &s.ha), (true, &s.hb)] {
            let map = table.get(&key)?;
            for (group, _) in shape.hx_cells(&digits, j, second) {
                let set = map.get(&cl.names[shape.groups[group].name as usize])?;
                digits[pos] = cell_index(group, set)?;
                pos += 1;
            }
        }
    }
    Some(digits)
}

/// A lazy, deterministic stream of all states over a fully expanded label.
pub struct StateStream {
    cl: Closure,
    shape: Shape,
    iter: StateIter,
}

impl Iterator for StateStream {
    type Item = StateInfo;

    fn next(&mut self) -> Option<StateInfo> {
        let digits = self.iter.next(&self.shape)?;
        Some(state_info(&self.cl, &self.shape, digits))
    }
}

/// Rule (c): every `(g, h, ha, hb)` making `x` a state, in lexicographic
/// order of their encoding.
pub fn enumerate_states(x: &FormulaSet) -> Result<StateStream, TableauError> {
    let (cl, label) = fully_expanded(x)?;
    let shape = Shape::new(&cl, &label);
    let iter = StateIter::new(&shape);
    Ok(StateStream { cl, shape, iter })
}

/// A successor produced by rule (d).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledSuccessor {
    pub agent: Agent,
    pub label: FormulaSet,
    pub constraints: BTreeMap<String, ValueToken>,
}

/// Rule (d): one successor per `~[i]f` in `x`, then two per `~Kv_i(f, d)`,
/// each in canonical order of the member.
pub fn labeled_successors(
    x: &FormulaSet,
    s: &StateInfo,
) -> Result<Vec<LabeledSuccessor>, TableauError> {
    let (cl, label) = fully_expanded(x)?;
    let shape = Shape::new(&cl, &label);
    let digits = digits_of(&cl, &shape, s)
        .filter(|d| state_info(&cl, &shape, d) == *s)
        .ok_or_else(|| violation("not a state of this label"))?;
    if !shape.is_state(&digits) {
        return Err(violation("not a state of this label"));
    }
    Ok((0..shape.successor_count())
        .map(|k| {
            let succ = rules::successor(&cl, &label, &shape, &digits, k);
            let constraints = succ
                .constraints
                .iter()
                .enumerate()
                .filter_map(|(d, tok)| {
                    let token = match tok.as_ref()? {
                        Tok::Bullet => ValueToken::Bullet,
                        Tok::Circ => ValueToken::Circ,
                        Tok::Cell(m) => ValueToken::Cell(
                            m.iter().map(|&f| cl.prints[f as usize].clone()).collect(),
                        ),
                    };
                    Some((cl.names[d].clone(), token))
                })
                .collect();
            LabeledSuccessor {
                agent: succ.agent,
                label: cl.to_set(&succ.label),
                constraints,
            }
        })
        .collect())
}

/// `|X|^(|X|^2 + 3|X|)`, saturating.
pub fn state_count_bound(x: &FormulaSet) -> u128 {
    let n = x.len() as u128;
    let e = n * n + 3 * n;
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.saturating_mul(n);
        if acc == u128::MAX || acc == 0 {
            break;
        }
    }
    acc
}

#[cfg(test)]
mod tests;
