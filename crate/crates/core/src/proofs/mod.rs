//! Checker for Hilbert-style derivations.
//!
//! Axioms: propositional tautologies (`TAUT`), `K`, `DISTNSV`, `NSVBOT` and
//! `NSVOR`. Rules: modus ponens, necessitation and replacement of
//! equivalents. Schemas are matched on the primitive syntax, so a line may
//! be written with or without derived connectives.

mod file;
mod replace;
mod schema;
mod taut;

use std::fmt;

use thiserror::Error;

use crate::formula::{Agent, Formula};

pub use file::{parse_proof, ProofFileError};
pub use schema::matches_schema;
pub use taut::{is_tautology, MAX_TAUT_ATOMS};

use crate::gen::Schema;

/// Why a line is accepted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Justification {
    Taut,
    Axiom(Schema),
    /// From `phi` (first) and `phi -> psi` (second).
    Mp(usize, usize),
    /// From `phi` to `[agent]phi`.
    Nec(usize, Agent),
    /// From `psi <-> chi` to `phi <-> phi[psi/chi]`.
    Re(usize),
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Taut => f.write_str("TAUT"),
            Justification::Axiom(s) => f.write_str(s.name()),
            Justification::Mp(i, j) => write!(f, "MP {i} {j}"),
            Justification::Nec(i, a) => write!(f, "NEC {i} agent={a}"),
            Justification::Re(i) => write!(f, "RE {i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofLine {
    pub index: usize,
    pub formula: Formula,
    pub justification: Justification,
}

impl fmt::Display for ProofLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}. {} ; {}",
            self.index, self.formula, self.justification
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Reason {
    #[error("line numbers must increase")]
    Order,
    #[error("line {0} is not an earlier line")]
    BadRef(usize),
    #[error("not a tautology")]
    NotTautology,
    #[error("more than {MAX_TAUT_ATOMS} propositional atoms")]
    TooManyAtoms,
    #[error("not an instance of {0}")]
    NotInstance(&'static str),
    #[error("line {1} is not line {0} -> this line")]
    BadMp(usize, usize),
    #[error("not [{1}] applied to line {0}")]
    BadNec(usize, Agent),
    #[error("line {0} is not an equivalence")]
    NotEquivalence(usize),
    #[error("not a replacement instance of line {0}")]
    BadRe(usize),
}

/// The first line that does not check.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {index}: {reason}")]
pub struct Failure {
    pub index: usize,
    pub reason: Reason,
}

/// `(a, b)` when `f` is `a <-> b` in primitive syntax.
pub(crate) fn as_iff(f: &Formula) -> Option<(&Formula, &Formula)> {
    let Formula::And(l, r) = f else { return None };
    let (a, b) = as_implies(l)?;
    let (b2, a2) = as_implies(r)?;
    (a == a2 && b == b2).then_some((a, b))
}

/// `(a, b)` when `f` is `a -> b` in primitive syntax.
pub(crate) fn as_implies(f: &Formula) -> Option<(&Formula, &Formula)> {
    let Formula::Not(inner) = f else { return None };
    let Formula::And(a, nb) = inner.as_ref() else {
        return None;
    };
    let Formula::Not(b) = nb.as_ref() else {
        return None;
    };
    Some((a, b))
}

/// Checks every line in order and reports the first failure.
pub fn verify(proof: &[ProofLine]) -> Result<(), Failure> {
    let mut seen: Vec<(usize, &Formula)> = Vec::new();
    for line in proof {
        let fail = |reason| Failure {
            index: line.index,
            reason,
        };
        if seen.last().is_some_and(|&(k, _)| k >= line.index) {
            return Err(fail(Reason::Order));
        }
        let earlier = |k: usize| -> Result<&Formula, Failure> {
            seen.iter()
                .find(|&&(i, _)| i == k)
                .map(|&(_, f)| f)
                .ok_or_else(|| fail(Reason::BadRef(k)))
        };
        let f = &line.formula;
        match line.justification {
            Justification::Taut => match is_tautology(f) {
                Some(true) => {}
                Some(false) => return Err(fail(Reason::NotTautology)),
                None => return Err(fail(Reason::TooManyAtoms)),
            },
            Justification::Axiom(s) => {
                if !matches_schema(s, f) {
                    return Err(fail(Reason::NotInstance(s.name())));
                }
            }
            Justification::Mp(i, j) => {
                let (a, imp) = (earlier(i)?, earlier(j)?);
                if as_implies(imp) != Some((a, f)) {
                    return Err(fail(Reason::BadMp(i, j)));
                }
            }
            Justification::Nec(i, agent) => {
                let a = earlier(i)?;
                if *f != Formula::boxed(agent, a.clone()) {
                    return Err(fail(Reason::BadNec(i, agent)));
                }
            }
            Justification::Re(i) => {
                let (psi, chi) =
                    as_iff(earlier(i)?).ok_or_else(|| fail(Reason::NotEquivalence(i)))?;
                let (phi, phi2) = as_iff(f).ok_or_else(|| fail(Reason::BadRe(i)))?;
                if !replace::is_replacement(phi, phi2, psi, chi)
                    && !replace::is_replacement(phi, phi2, chi, psi)
                {
                    return Err(fail(Reason::BadRe(i)));
                }
            }
        }
        seen.push((line.index, f));
    }
    Ok(())
}
