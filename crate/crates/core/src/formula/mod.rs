//! Formulas of multi-agent modal logic K extended with the conditional
//! knowing-what operator `Kv_i(phi, d)`.
//!
//! The abstract syntax only has the primitives `T`, propositions, `~`, `&`,
//! `[i]` and `Kv_i(.,.)`. The derived connectives (`F`, `|`, `->`, `<->`,
//! `<i>`) are available as smart constructors and in the concrete syntax, but
//! they are always rewritten into primitives.

mod parser;
mod set;

use std::collections::BTreeSet;
use std::fmt;

pub use parser::{parse, ParseError, ParseErrorKind};
pub use set::FormulaSet;

/// An agent name. Agents are positive integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Agent(u32);

impl Agent {
    /// Returns `None` for 0.
    pub fn new(id: u32) -> Option<Agent> {
        (id > 0).then_some(Agent(id))
    }

    pub fn id(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Agent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Top,
    Prop(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Box(Agent, Box<Formula>),
    /// `Kv_i(phi, d)`: among the `i`-successors satisfying `phi`, the value
    /// name `d` is assigned one value.
    Nabla(Agent, Box<Formula>, String),
}

impl Formula {
    pub fn top() -> Formula {
        Formula::Top
    }

    pub fn bot() -> Formula {
        Formula::not(Formula::Top)
    }

    pub fn prop(name: impl Into<String>) -> Formula {
        Formula::Prop(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    /// `a | b`, i.e. `~(~a & ~b)`.
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::not(Formula::and(Formula::not(a), Formula::not(b)))
    }

    /// `a -> b`, i.e. `~(a & ~b)`.
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::not(Formula::and(a, Formula::not(b)))
    }

    /// `a <-> b`, i.e. `(a -> b) & (b -> a)`.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(
            Formula::implies(a.clone(), b.clone()),
            Formula::implies(b, a),
        )
    }

    pub fn boxed(agent: Agent, f: Formula) -> Formula {
        Formula::Box(agent, Box::new(f))
    }

    /// `<i>f`, i.e. `~[i]~f`.
    pub fn diamond(agent: Agent, f: Formula) -> Formula {
        Formula::not(Formula::boxed(agent, Formula::not(f)))
    }

    pub fn nabla(agent: Agent, f: Formula, value: impl Into<String>) -> Formula {
        Formula::Nabla(agent, Box::new(f), value.into())
    }

    /// Number of nodes in the abstract syntax tree. This is the size measure
    /// used by every complexity bound in the crate.
    pub fn size(&self) -> usize {
        match self {
            Formula::Top | Formula::Prop(_) => 1,
            Formula::Not(f) | Formula::Box(_, f) | Formula::Nabla(_, f, _) => 1 + f.size(),
            Formula::And(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Modal depth: `[i]` and `Kv_i` add one, everything else adds nothing.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Top | Formula::Prop(_) => 0,
            Formula::Not(f) => f.depth(),
            Formula::And(a, b) => a.depth().max(b.depth()),
            Formula::Box(_, f) | Formula::Nabla(_, f, _) => f.depth() + 1,
        }
    }

    /// The value names occurring in the formula.
    pub fn value_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Nabla(_, _, d) = f {
                out.insert(d.clone());
            }
        });
        out
    }

    pub fn props(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Prop(p) = f {
                out.insert(p.clone());
            }
        });
        out
    }

    pub fn agents(&self) -> BTreeSet<Agent> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Box(i, _) | Formula::Nabla(i, _, _) => {
                out.insert(*i);
            }
            _ => {}
        });
        out
    }

    /// Pre-order traversal over every node (with repetitions).
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        match self {
            Formula::Top | Formula::Prop(_) => {}
            Formula::Not(c) | Formula::Box(_, c) | Formula::Nabla(_, c, _) => c.visit(f),
            Formula::And(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }

    /// The set of subformulas. A `Kv` node contributes itself plus the
    /// subformulas of its guard; the value name is not a formula.
    pub fn sub(&self) -> FormulaSet {
        let mut out = FormulaSet::new();
        self.visit(&mut |f| {
            out.insert(f.clone());
        });
        out
    }

    /// `Sub(f)` together with the negation of every member.
    pub fn sub_plus(&self) -> FormulaSet {
        self.sub().sub_plus()
    }

    /// Strips one leading negation, if any.
    pub fn negated_inner(&self) -> Option<&Formula> {
        match self {
            Formula::Not(f) => Some(f),
            _ => None,
        }
    }

    /// Canonical fully parenthesised rendering; `parse` inverts it.
    pub fn print(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Top => f.write_str("T"),
            Formula::Prop(p) => f.write_str(p),
            Formula::Not(c) => write!(f, "~{c}"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Box(i, c) => write!(f, "[{i}]{c}"),
            Formula::Nabla(i, c, d) => write!(f, "Kv{i}({c}, {d})"),
        }
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
