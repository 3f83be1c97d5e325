//! Proof files.
//!
//! ```text
//! # comment
//! 1. p -> p ; TAUT
//! 2. [1](p -> p) ; NEC 1 agent=1
//! 3. [1](p -> p) -> ([1]p -> [1]p) ; K
//! 4. [1]p -> [1]p ; MP 2 3
//! ```
//!
//! Rules: `TAUT`, `K`, `DISTNSV`, `NSVBOT`, `NSVOR`, `MP i j` (line `j` is
//! line `i` implying this one), `NEC i agent=a` and `RE i`.

use thiserror::Error;

use super::{Justification, ProofLine};
use crate::formula::{parse, Agent, ParseError};
use crate::gen::Schema;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("proof file line {line}: {kind}")]
pub struct ProofFileError {
    /// 1-based line of the file.
    pub line: usize,
    pub kind: ProofFileErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofFileErrorKind {
    #[error("expected `<n>. <formula> ; <RULE>`")]
    Shape,
    #[error("bad line number {0:?}")]
    BadIndex(String),
    #[error("unknown rule {0:?}")]
    UnknownRule(String),
    #[error("{rule} expects {expected}")]
    BadArguments {
        rule: &'static str,
        expected: &'static str,
    },
    #[error("formula: {0}")]
    Formula(#[from] ParseError),
}

fn line_ref(s: &str) -> Option<usize> {
    s.parse().ok().filter(|&n| n > 0)
}

fn justification(text: &str) -> Result<Justification, ProofFileErrorKind> {
    let words: Vec<&str> = text.split_whitespace().collect();
    let Some((&rule, args)) = words.split_first() else {
        return Err(ProofFileErrorKind::Shape);
    };
    let bad = |rule, expected| ProofFileErrorKind::BadArguments { rule, expected };
    let axiom = |s: Schema| {
        if args.is_empty() {
            Ok(Justification::Axiom(s))
        } else {
            Err(bad(s.name(), "no arguments"))
        }
    };
    match rule {
        "TAUT" if args.is_empty() => Ok(Justification::Taut),
        "TAUT" => Err(bad("TAUT", "no arguments")),
        "K" => axiom(Schema::K),
        "DISTNSV" => axiom(Schema::DistNsv),
        "NSVBOT" => axiom(Schema::NsvBot),
        "NSVOR" => axiom(Schema::NsvOr),
        "MP" => match args {
            [i, j] => Ok(Justification::Mp(
                line_ref(i).ok_or(bad("MP", "two line numbers"))?,
                line_ref(j).ok_or(bad("MP", "two line numbers"))?,
            )),
            _ => Err(bad("MP", "two line numbers")),
        },
        "NEC" => {
            let expected = "a line number and agent=<n>";
            match args {
                [i, agent] => {
                    let i = line_ref(i).ok_or(bad("NEC", expected))?;
                    let agent = agent
                        .strip_prefix("agent=")
                        .and_then(|a| a.parse().ok())
                        .and_then(Agent::new)
                        .ok_or(bad("NEC", expected))?;
                    Ok(Justification::Nec(i, agent))
                }
                _ => Err(bad("NEC", expected)),
            }
        }
        "RE" => match args {
            [i] => Ok(Justification::Re(
                line_ref(i).ok_or(bad("RE", "one line number"))?,
            )),
            _ => Err(bad("RE", "one line number")),
        },
        other => Err(ProofFileErrorKind::UnknownRule(other.to_string())),
    }
}

fn proof_line(text: &str) -> Result<ProofLine, ProofFileErrorKind> {
    let (head, rule) = text.split_once(';').ok_or(ProofFileErrorKind::Shape)?;
    let (index, formula) = head.split_once('.').ok_or(ProofFileErrorKind::Shape)?;
    let index = index.trim();
    let index = line_ref(index).ok_or_else(|| ProofFileErrorKind::BadIndex(index.to_string()))?;
    Ok(ProofLine {
        index,
        formula: parse(formula)?,
        justification: justification(rule)?,
    })
}

/// Parses a proof file. Blank lines and `#` comments are skipped.
pub fn parse_proof(text: &str) -> Result<Vec<ProofLine>, ProofFileError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let body = raw.split_once('#').map_or(raw, |(b, _)| b).trim();
        if body.is_empty() {
            continue;
        }
        out.push(proof_line(body).map_err(|kind| ProofFileError { line: n + 1, kind })?);
    }
    Ok(out)
}
