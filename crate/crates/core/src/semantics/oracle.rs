//! Brute-force bounded satisfiability, independent of the tableau.
//!
//! Pointed models are enumerated with the root fixed at world 0 and only
//! those whose worlds are all reachable from the root are evaluated; every
//! other model has a generated submodel with fewer worlds, which is visited
//! at a smaller size. Relations, valuations and value assignments are
//! enumerated in increasing bit order and the first hit is returned.

use std::collections::HashMap;

use super::{Model, ValueToken};
use crate::formula::{Agent, Formula};

/// Upper bound on `max_worlds`: one relation must fit in a `u64` bit mask
/// with room for the odometer to carry.
pub const ORACLE_MAX_WORLDS: usize = 7;

#[derive(Clone, Copy)]
enum Op {
    Top,
    Prop(usize),
    Not(usize),
    And(usize, usize),
    Box(usize, usize),
    Nabla(usize, usize, usize),
}

struct Program {
    ops: Vec<Op>,
    agents: Vec<Agent>,
    props: Vec<String>,
    names: Vec<String>,
}

impl Program {
    fn compile(f: &Formula) -> Program {
        let agents: Vec<Agent> = f.agents().into_iter().collect();
        let props: Vec<String> = f.props().into_iter().collect();
        let names: Vec<String> = f.value_names().into_iter().collect();
        let mut p = Program {
            ops: Vec::new(),
            agents,
            props,
            names,
        };
        let mut memo = HashMap::new();
        p.emit(f, &mut memo);
        p
    }

    fn emit(&mut self, f: &Formula, memo: &mut HashMap<Formula, usize>) -> usize {
        if let Some(&i) = memo.get(f) {
            return i;
        }
        let agent_ix = |a: &Agent, agents: &[Agent]| agents.binary_search(a).unwrap();
        let op = match f {
            Formula::Top => Op::Top,
            Formula::Prop(p) => Op::Prop(self.props.binary_search(p).unwrap()),
            Formula::Not(c) => Op::Not(self.emit(c, memo)),
            Formula::And(a, b) => {
                let a = self.emit(a, memo);
                Op::And(a, self.emit(b, memo))
            }
            Formula::Box(i, c) => Op::Box(agent_ix(i, &self.agents), self.emit(c, memo)),
            Formula::Nabla(i, c, d) => Op::Nabla(
                agent_ix(i, &self.agents),
                self.emit(c, memo),
                self.names.binary_search(d).unwrap(),
            ),
        };
        self.ops.push(op);
        memo.insert(f.clone(), self.ops.len() - 1);
        self.ops.len() - 1
    }
}

/// Searches every pointed model with at most `max_worlds` worlds over the
/// agents, propositions and value names of `f`, assigning values from
/// `DefaultToken(0..max_values)`. `None` means no model within the bounds,
/// not unsatisfiability.
pub fn oracle_sat(f: &Formula, max_worlds: usize, max_values: usize) -> Option<Model> {
    assert!(
        max_worlds >= 1 && max_values >= 1,
        "bounds must be positive"
    );
    assert!(
        max_worlds <= ORACLE_MAX_WORLDS,
        "at most {ORACLE_MAX_WORLDS} worlds are supported"
    );
    let prog = Program::compile(f);
    (1..=max_worlds).find_map(|n| search(&prog, n, max_values))
}

struct Frame<'a> {
    prog: &'a Program,
    n: usize,
    /// succ[agent][world] as a bit mask of worlds.
    succ: Vec<Vec<u64>>,
    /// props[prop] as a bit mask of worlds.
    props: Vec<u64>,
    /// values[name * n + world].
    values: Vec<usize>,
    truth: Vec<u64>,
}

impl Frame<'_> {
    fn eval_root(&mut self) -> bool {
        let all = (1u64 << self.n) - 1;
        for k in 0..self.prog.ops.len() {
            let mask = match self.prog.ops[k] {
                Op::Top => all,
                Op::Prop(p) => self.props[p],
                Op::Not(c) => !self.truth[c] & all,
                Op::And(a, b) => self.truth[a] & self.truth[b],
                Op::Box(i, c) => {
                    let sat = self.truth[c];
                    (0..self.n)
                        .filter(|&w| self.succ[i][w] & !sat == 0)
                        .fold(0, |m, w| m | 1 << w)
                }
                Op::Nabla(i, c, d) => {
                    let sat = self.truth[c];
                    let vals = &self.values[d * self.n..(d + 1) * self.n];
                    (0..self.n)
                        .filter(|&w| {
                            let live = self.succ[i][w] & sat;
                            let mut seen = None;
                            (0..self.n).filter(|&t| live >> t & 1 == 1).all(|t| {
                                let v = vals[t];
                                *seen.get_or_insert(v) == v
                            })
                        })
                        .fold(0, |m, w| m | 1 << w)
                }
            };
            self.truth[k] = mask;
        }
        self.truth.last().is_some_and(|m| m & 1 == 1)
    }
}

fn all_reachable(succ: &[Vec<u64>], n: usize) -> bool {
    let full = (1u64 << n) - 1;
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let mut next = 0;
        for w in (0..n).filter(|&w| frontier >> w & 1 == 1) {
            for rel in succ {
                next |= rel[w];
            }
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen & full == full
}

/// Advances a little-endian odometer; returns false after wrapping.
fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn search(prog: &Program, n: usize, max_values: usize) -> Option<Model> {
    let edge_bits = n * n;
    let agents = prog.agents.len();
    if agents == 0 && n > 1 {
        return None;
    }
    let relation_count = 1u64 << edge_bits;
    let mut rel = vec![0u64; agents];
    let mut frame = Frame {
        prog,
        n,
        succ: vec![vec![0; n]; agents],
        props: vec![0; prog.props.len()],
        values: vec![0; prog.names.len() * n],
        truth: vec![0; prog.ops.len()],
    };
    loop {
        for (a, &mask) in rel.iter().enumerate() {
            for w in 0..n {
                frame.succ[a][w] = (mask >> (w * n)) & ((1u64 << n) - 1);
            }
        }
        if all_reachable(&frame.succ, n) {
            let mut val = vec![0usize; prog.props.len() * n];
            loop {
                for (p, mask) in frame.props.iter_mut().enumerate() {
                    *mask = (0..n)
                        .filter(|&w| val[p * n + w] == 1)
                        .fold(0, |m, w| m | 1 << w);
                }
                frame.values.iter_mut().for_each(|v| *v = 0);
                loop {
                    if frame.eval_root() {
                        return Some(build(&frame));
                    }
                    if !advance(&mut frame.values, max_values) {
                        break;
                    }
                }
                if !advance(&mut val, 2) {
                    break;
                }
            }
        }
        // Next relation tuple.
        let mut carried = true;
        for r in rel.iter_mut() {
            *r += 1;
            if *r < relation_count {
                carried = false;
                break;
            }
            *r = 0;
        }
        if carried {
            return None;
        }
    }
}

fn build(frame: &Frame<'_>) -> Model {
    let n = frame.n;
    let mut m = Model::new((0..n).map(|w| format!("w{w}"))).expect("nonempty");
    for (a, agent) in frame.prog.agents.iter().enumerate() {
        for s in 0..n {
            for t in (0..n).filter(|&t| frame.succ[a][s] >> t & 1 == 1) {
                m.add_edge_at(*agent, s, t);
            }
        }
    }
    for (p, name) in frame.prog.props.iter().enumerate() {
        for w in (0..n).filter(|&w| frame.props[p] >> w & 1 == 1) {
            m.set_true_at(w, name.clone());
        }
    }
    for (d, name) in frame.prog.names.iter().enumerate() {
        for w in 0..n {
            let v = frame.values[d * n + w] as i64;
            m.set_value_at(w, name.clone(), ValueToken::Default(v));
        }
    }
    m
}
