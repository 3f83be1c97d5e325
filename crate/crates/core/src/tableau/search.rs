//! Depth-first construction and marking of the tableau with an explicit
//! stack. Children are regenerated from `(label, rule, child index)` and
//! only the current branch is held in memory, plus a bounded memo.
//!
//! The mark of a node depends on its label alone, so finished unlabelled
//! nodes are remembered by label. A hit reuses the witness with the
//! constraints of the node at hand.
//!
//! Rule (c) and (d) are interleaved: for each guard partition the cell
//! choices of the units are settled one unit at a time. A state is marked
//! satisfiable iff all its successors are, and a unit's successors read only
//! the partition and the unit's digits, so this marks the rule-(c) node
//! exactly as the state-by-state order would and finds the same least
//! satisfiable state.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use super::bitset::Label;
use super::closure::{Closure, Kind};
use super::rules::{self, Constraints, Expansion, Tok};
use super::state::Shape;
use crate::formula::Agent;
use crate::semantics::{Model, ValueToken};

/// Counters recorded while deciding one formula.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    /// Largest number of edges from the root to a visited node.
    pub max_depth: usize,
    /// Longest run of unlabelled edges on a visited branch.
    pub max_chain: usize,
    /// Largest number of simultaneously open frames.
    pub max_stack: usize,
    pub nodes: u64,
    pub states: u64,
}

/// One visited node, as reported by the trace hook.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceEvent {
    /// `a.i`, `a.ii`, `a.iii`, `b`, `c`, `d`, `closed`, `open` or `memo`.
    pub rule: &'static str,
    /// Number of formulas in the node's label.
    pub size: usize,
    /// Edges from the root.
    pub depth: usize,
    /// Unlabelled edges since the last labelled one.
    pub chain: usize,
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rule={} size={} depth={} chain={}",
            self.rule, self.size, self.depth, self.chain
        )
    }
}

/// A satisfiable state node with the witness states of its labelled
/// successors.
#[derive(Clone)]
pub(crate) struct World {
    label: Label,
    constraints: Rc<Constraints>,
    succ: Rc<Vec<(Agent, World)>>,
}

#[derive(Clone)]
enum Outcome {
    Sat(Option<World>),
    Unsat,
}

struct Node {
    label: Label,
    constraints: Rc<Constraints>,
    depth: usize,
    chain: usize,
}

enum Work {
    /// Rules (a) and (b): satisfiable iff some child is.
    Unlabelled { exp: Expansion, next: usize },
    /// Rule (c), one growth prefix at a time: satisfiable iff some prefix
    /// completes to a state whose successors are all satisfiable.
    States {
        shape: Rc<Shape>,
        digits: Vec<u8>,
        started: bool,
    },
    /// Rule (d) for a fixed prefix. Units are settled in order, each on its
    /// least cell choice whose successors are all satisfiable, which yields
    /// the least satisfiable state with this prefix.
    Labelled {
        shape: Rc<Shape>,
        digits: Vec<u8>,
        unit: usize,
        /// Position within the current unit's successors.
        next: usize,
        pending_witnesses: Vec<(Agent, World)>,
        witnesses: Vec<(Agent, World)>,
    },
}

struct Frame {
    node: Node,
    work: Work,
}

/// Entries kept in the memo before it is flushed.
const MEMO_LIMIT: usize = 1 << 18;

pub(crate) struct Search<'a, T: FnMut(&TraceEvent)> {
    cl: &'a Closure,
    want_model: bool,
    trace: T,
    /// Marks of finished unlabelled nodes, keyed by label.
    memo: HashMap<Label, Outcome>,
    pub stats: Stats,
}

impl<'a, T: FnMut(&TraceEvent)> Search<'a, T> {
    pub fn new(cl: &'a Closure, want_model: bool, trace: T) -> Self {
        Search {
            cl,
            want_model,
            trace,
            memo: HashMap::new(),
            stats: Stats::default(),
        }
    }

    /// Records the mark of a finished unlabelled node.
    fn finish(&mut self, node: Node, outcome: Outcome) -> Option<Outcome> {
        if self.memo.len() >= MEMO_LIMIT {
            self.memo.clear();
        }
        self.memo.insert(node.label, outcome.clone());
        Some(outcome)
    }

    fn visit(&mut self, node: &Node, rule: &'static str) {
        self.stats.nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(node.depth);
        self.stats.max_chain = self.stats.max_chain.max(node.chain);
        (self.trace)(&TraceEvent {
            rule,
            size: node.label.len(),
            depth: node.depth,
            chain: node.chain,
        });
    }

    /// Classifies a fresh node; leaves are answered at once, anything else
    /// becomes a frame.
    fn enter(&mut self, node: Node, stack: &mut Vec<Frame>) -> Option<Outcome> {
        if let Some(known) = self.memo.get(&node.label) {
            let outcome = match known {
                Outcome::Sat(Some(w)) => Outcome::Sat(Some(World {
                    constraints: Rc::clone(&node.constraints),
                    ..w.clone()
                })),
                other => other.clone(),
            };
            self.visit(&node, "memo");
            return Some(outcome);
        }
        if rules::blatantly_inconsistent(self.cl, &node.label) {
            self.visit(&node, "closed");
            return Some(Outcome::Unsat);
        }
        let step = rules::propositional_step(self.cl, &node.label)
            .or_else(|| rules::full_step(self.cl, &node.label));
        let work = match step {
            Some(exp) => {
                self.visit(&node, exp.rule());
                Work::Unlabelled { exp, next: 0 }
            }
            None => {
                self.visit(&node, "c");
                let shape = Rc::new(Shape::new(self.cl, &node.label));
                let digits = vec![0; shape.width()];
                Work::States {
                    shape,
                    digits,
                    started: false,
                }
            }
        };
        stack.push(Frame { node, work });
        self.stats.max_stack = self.stats.max_stack.max(stack.len());
        None
    }

    /// Decides the node `(label, constraints)` at the root.
    pub fn run(&mut self, label: Label, constraints: Constraints) -> Option<Option<World>> {
        let mut stack: Vec<Frame> = Vec::new();
        let root = Node {
            label,
            constraints: Rc::new(constraints),
            depth: 0,
            chain: 0,
        };
        let mut pending = self.enter(root, &mut stack);
        loop {
            let Some(frame) = stack.last_mut() else {
                return match pending.expect("root outcome") {
                    Outcome::Sat(w) => Some(w),
                    Outcome::Unsat => None,
                };
            };
            let node = &frame.node;
            let child = match &mut frame.work {
                Work::Unlabelled { exp, next } => {
                    if let Some(Outcome::Sat(w)) = pending.take() {
                        let frame = stack.pop().expect("frame");
                        pending = self.finish(frame.node, Outcome::Sat(w));
                        continue;
                    }
                    if *next == exp.arity() {
                        let frame = stack.pop().expect("frame");
                        pending = self.finish(frame.node, Outcome::Unsat);
                        continue;
                    }
                    let label = exp.child(&node.label, *next);
                    *next += 1;
                    Node {
                        label,
                        constraints: Rc::clone(&node.constraints),
                        depth: node.depth + 1,
                        chain: node.chain + 1,
                    }
                }
                Work::States {
                    shape,
                    digits,
                    started,
                } => {
                    if let Some(Outcome::Sat(w)) = pending.take() {
                        let frame = stack.pop().expect("frame");
                        pending = self.finish(frame.node, Outcome::Sat(w));
                        continue;
                    }
                    if *started && !shape.advance_range(digits, 0, shape.prefix) {
                        let frame = stack.pop().expect("frame");
                        pending = self.finish(frame.node, Outcome::Unsat);
                        continue;
                    }
                    *started = true;
                    let state = Node {
                        label: node.label.clone(),
                        constraints: Rc::clone(&node.constraints),
                        depth: node.depth + 1,
                        chain: node.chain + 1,
                    };
                    let digits = digits.clone();
                    let shape = Rc::clone(shape);
                    self.stats.states += 1;
                    if shape.successor_count() == 0 {
                        self.visit(&state, "open");
                        pending = Some(Outcome::Sat(self.want_model.then(|| World {
                            label: state.label,
                            constraints: state.constraints,
                            succ: Rc::new(Vec::new()),
                        })));
                    } else {
                        self.visit(&state, "d");
                        stack.push(Frame {
                            node: state,
                            work: Work::Labelled {
                                shape,
                                digits,
                                unit: 0,
                                next: 0,
                                pending_witnesses: Vec::new(),
                                witnesses: Vec::new(),
                            },
                        });
                        self.stats.max_stack = self.stats.max_stack.max(stack.len());
                    }
                    continue;
                }
                Work::Labelled {
                    shape,
                    digits,
                    unit,
                    next,
                    pending_witnesses,
                    witnesses,
                } => {
                    let u = &shape.units[*unit];
                    match pending.take() {
                        Some(Outcome::Unsat) => {
                            // Try the next cell choice of this unit.
                            pending_witnesses.clear();
                            *next = 0;
                            let mut more = shape.advance_range(digits, u.lo, u.hi);
                            while more && !shape.unit_ok(digits, u) {
                                more = shape.advance_range(digits, u.lo, u.hi);
                            }
                            if !more {
                                stack.pop();
                                pending = Some(Outcome::Unsat);
                                continue;
                            }
                        }
                        Some(Outcome::Sat(w)) => {
                            if let Some(w) = w {
                                pending_witnesses
                                    .push((successor_agent(shape, u.successors.start + *next), w));
                            }
                            *next += 1;
                            if *next == u.successors.len() {
                                witnesses.append(pending_witnesses);
                                *unit += 1;
                                *next = 0;
                            }
                        }
                        None => {}
                    }
                    if *unit == shape.units.len() {
                        let witnesses = std::mem::take(witnesses);
                        let frame = stack.pop().expect("frame");
                        pending = Some(Outcome::Sat(self.want_model.then(|| World {
                            label: frame.node.label,
                            constraints: frame.node.constraints,
                            succ: Rc::new(witnesses),
                        })));
                        continue;
                    }
                    let k = shape.units[*unit].successors.start + *next;
                    let succ = rules::successor(self.cl, &node.label, shape, digits, k);
                    Node {
                        label: succ.label,
                        constraints: Rc::new(succ.constraints),
                        depth: node.depth + 1,
                        chain: 0,
                    }
                }
            };
            pending = self.enter(child, &mut stack);
        }
    }
}

fn successor_agent(shape: &Shape, k: usize) -> Agent {
    let nb = shape.box_negs.len();
    if k < nb {
        shape.box_negs[k].0
    } else {
        shape.nabla_negs[(k - nb) / 2].0
    }
}

/// Turns a witness tree into a model; worlds are numbered in preorder.
pub(crate) fn build_model(cl: &Closure, root: &World) -> Model {
    let mut order: Vec<&World> = Vec::new();
    let mut edges: Vec<(Agent, usize, usize)> = Vec::new();
    let mut todo = vec![(root, None::<(Agent, usize)>)];
    while let Some((w, parent)) = todo.pop() {
        let id = order.len();
        order.push(w);
        if let Some((agent, p)) = parent {
            edges.push((agent, p, id));
        }
        for (agent, child) in w.succ.iter().rev() {
            todo.push((child, Some((*agent, id))));
        }
    }
    let mut m = Model::new((0..order.len()).map(|k| format!("w{k}"))).expect("nonempty");
    for (agent, s, t) in edges {
        m.add_edge_at(agent, s, t);
    }
    for (id, w) in order.iter().enumerate() {
        for i in w.label.iter() {
            if cl.kind(i) == Kind::Prop {
                m.set_true_at(id, cl.prints[i as usize].clone());
            }
        }
        for (d, name) in cl.names.iter().enumerate() {
            let token = match &w.constraints[d] {
                None => ValueToken::Default(0),
                Some(Tok::Bullet) => ValueToken::Bullet,
                Some(Tok::Circ) => ValueToken::Circ,
                Some(Tok::Cell(members)) => ValueToken::Cell(
                    members
                        .iter()
                        .map(|&g| cl.prints[g as usize].clone())
                        .collect(),
                ),
            };
            m.set_value_at(id, name.clone(), token);
        }
    }
    m
}
