//! The expansion rules on index labels: blatant inconsistency, propositional
//! decomposition, full expansion and labelled successors.

use super::bitset::Label;
use super::closure::{Closure, Kind};
use super::state::Shape;
use crate::formula::Agent;

/// Internal value constraint attached to a node.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Tok {
    /// Sorted closure indices of the guards in a partition cell.
    Cell(Vec<u32>),
    Bullet,
    Circ,
}

/// `C(s)`, indexed by value-name index.
pub(crate) type Constraints = Vec<Option<Tok>>;

/// Contains some `f` together with `~f`, or contains `~T`.
pub(crate) fn blatantly_inconsistent(cl: &Closure, label: &Label) -> bool {
    label.iter().any(|i| match cl.kind(i) {
        Kind::Not(c) => label.contains(c) || cl.kind(c) == Kind::Top,
        _ => false,
    })
}

/// One unlabelled expansion step, with its children produced on demand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Expansion {
    /// `~~f` in the label: add `f`.
    DoubleNeg { add: u32 },
    /// `~(a & b)`: branch on `~a` and `~b`.
    NegAnd { left: u32, right: u32 },
    /// `a & b`: add both.
    And { left: u32, right: u32 },
    /// `f` in `Sub(L)` with neither polarity in `L`: branch on `f` and `~f`.
    Split { pos: u32, neg: u32 },
}

impl Expansion {
    pub fn arity(self) -> usize {
        match self {
            Expansion::DoubleNeg { .. } | Expansion::And { .. } => 1,
            Expansion::NegAnd { .. } | Expansion::Split { .. } => 2,
        }
    }

    pub fn child(self, label: &Label, k: usize) -> Label {
        match (self, k) {
            (Expansion::DoubleNeg { add }, 0) => label.with(&[add]),
            (Expansion::And { left, right }, 0) => label.with(&[left, right]),
            (Expansion::NegAnd { left, .. }, 0) => label.with(&[left]),
            (Expansion::NegAnd { right, .. }, 1) => label.with(&[right]),
            (Expansion::Split { pos, .. }, 0) => label.with(&[pos]),
            (Expansion::Split { neg, .. }, 1) => label.with(&[neg]),
            _ => panic!("child {k} out of range for {self:?}"),
        }
    }

    pub fn rule(self) -> &'static str {
        match self {
            Expansion::DoubleNeg { .. } => "a.i",
            Expansion::NegAnd { .. } => "a.ii",
            Expansion::And { .. } => "a.iii",
            Expansion::Split { .. } => "b",
        }
    }
}

/// The propositional-tableau step for the canonically least violating
/// member, if any.
pub(crate) fn propositional_step(cl: &Closure, label: &Label) -> Option<Expansion> {
    label.iter().find_map(|i| match cl.kind(i) {
        Kind::Not(c) => match cl.kind(c) {
            Kind::Not(inner) if !label.contains(inner) => Some(Expansion::DoubleNeg { add: inner }),
            Kind::And(a, b) => {
                let (na, nb) = (cl.negation(a), cl.negation(b));
                (!label.contains(na) && !label.contains(nb)).then_some(Expansion::NegAnd {
                    left: na,
                    right: nb,
                })
            }
            _ => None,
        },
        Kind::And(a, b) if !label.contains(a) || !label.contains(b) => {
            Some(Expansion::And { left: a, right: b })
        }
        _ => None,
    })
}

/// The full-expansion step: the least `f` in `Sub(L)` with neither `f` nor
/// `~f` in `L`.
pub(crate) fn full_step(cl: &Closure, label: &Label) -> Option<Expansion> {
    let mut sub = Label::empty(cl.len());
    for i in label.iter() {
        sub.union_with(&cl.subs[i as usize]);
    }
    let step = sub.iter().find_map(|f| {
        if label.contains(f) {
            return None;
        }
        // Members of Sub(L) outside Sub(seed) are themselves in L.
        let neg = cl.negation(f);
        (!label.contains(neg)).then_some(Expansion::Split { pos: f, neg })
    });
    step
}

/// `X \ [i]` as indices.
fn unbox<'a>(cl: &'a Closure, label: &'a Label, agent: Agent) -> impl Iterator<Item = u32> + 'a {
    label.iter().filter_map(move |i| match cl.kind(i) {
        Kind::Box(j, c) if j == agent => Some(c),
        _ => None,
    })
}

/// A labelled successor: the edge agent, its label and its constraints.
pub(crate) struct Successor {
    pub agent: Agent,
    pub label: Label,
    pub constraints: Constraints,
}

/// The `k`-th labelled successor of the state `(label, digits)`: first one
/// per `~[i]f` member, then two per `~Kv_i(f, d)` member.
pub(crate) fn successor(
    cl: &Closure,
    label: &Label,
    shape: &Shape,
    digits: &[u8],
    k: usize,
) -> Successor {
    let mut next = Label::empty(cl.len());
    let mut constraints: Constraints = vec![None; cl.names.len()];
    let nb = shape.box_negs.len();
    let (agent, cells) = if k < nb {
        let (agent, phi) = shape.box_negs[k];
        next.insert(cl.negation(phi));
        (agent, shape.h_cells(digits, k))
    } else {
        let j = (k - nb) / 2;
        let second = (k - nb) % 2 == 1;
        let (agent, phi, _) = shape.nabla_negs[j];
        next.insert(phi);
        (agent, shape.hx_cells(digits, j, second))
    };
    for f in unbox(cl, label, agent) {
        next.insert(f);
    }
    for (group, cell) in cells {
        let g = &shape.groups[group];
        let rgs = shape.rgs(digits, group);
        let mut members = Vec::new();
        for (&guard, &block) in g.guards.iter().zip(rgs) {
            if cell != 0 && block == cell {
                members.push(guard);
            } else {
                next.insert(cl.negation(guard));
            }
        }
        constraints[g.name as usize] = Some(Tok::Cell(members));
    }
    if k >= nb {
        let j = (k - nb) / 2;
        let (_, _, d0) = shape.nabla_negs[j];
        if shape.hx_equal_at_target(digits, j) {
            constraints[d0 as usize] = Some(if (k - nb) % 2 == 1 {
                Tok::Circ
            } else {
                Tok::Bullet
            });
        }
    }
    Successor {
        agent,
        label: next,
        constraints,
    }
}
