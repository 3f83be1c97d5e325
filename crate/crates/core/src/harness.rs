//! The randomized self-check behind `lkvr fuzz`.
//!
//! Every generated formula is decided with model extraction; a SAT verdict
//! must come with a model satisfying the formula, a hit of the brute-force
//! oracle must agree with a SAT verdict, and the recorded tableau depth and
//! unlabelled chain length must respect `2|f|^2` and `2|f| + 1`.

use std::fmt;

use rayon::prelude::*;

use crate::formula::Formula;
use crate::gen::{self, FormulaGen};
use crate::semantics::oracle_sat;
use crate::tableau::decide;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FuzzConfig {
    pub seed: u64,
    pub count: usize,
    pub max_size: usize,
    pub oracle_worlds: usize,
    pub oracle_values: usize,
}

impl FuzzConfig {
    pub fn new(seed: u64, count: usize, max_size: usize) -> FuzzConfig {
        FuzzConfig {
            seed,
            count,
            max_size,
            oracle_worlds: 3,
            oracle_values: 2,
        }
    }
}

/// Outcome of the checks on one formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseReport {
    pub index: usize,
    pub formula: String,
    pub size: usize,
    pub satisfiable: bool,
    /// The extracted model satisfies the formula; `None` when UNSAT.
    pub model_ok: Option<bool>,
    /// The extracted model as JSON; `None` when UNSAT.
    pub model_json: Option<String>,
    /// `None` when the oracle was skipped.
    pub oracle_sat: Option<bool>,
    pub max_depth: usize,
    pub max_chain: usize,
}

impl CaseReport {
    pub fn depth_bound(&self) -> usize {
        2 * self.size * self.size
    }

    pub fn chain_bound(&self) -> usize {
        2 * self.size + 1
    }

    /// Descriptions of every failed check.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.model_ok == Some(false) {
            out.push("extracted model does not satisfy the formula".to_string());
        }
        if self.oracle_sat == Some(true) && !self.satisfiable {
            out.push("oracle found a model but the tableau says UNSAT".to_string());
        }
        if self.max_depth > self.depth_bound() {
            out.push(format!(
                "depth {} exceeds {}",
                self.max_depth,
                self.depth_bound()
            ));
        }
        if self.max_chain > self.chain_bound() {
            out.push(format!(
                "chain {} exceeds {}",
                self.max_chain,
                self.chain_bound()
            ));
        }
        out
    }

    pub fn ok(&self) -> bool {
        self.problems().is_empty()
    }
}

/// Runs every check on one formula. The oracle runs when `oracle` is set.
pub fn check_formula(index: usize, f: &Formula, oracle: Option<(usize, usize)>) -> CaseReport {
    let v = decide(f, true);
    let model_ok = v.model.as_ref().map(|m| m.satisfies(f));
    CaseReport {
        index,
        formula: f.print(),
        size: f.size(),
        satisfiable: v.satisfiable,
        model_ok,
        model_json: v.model.as_ref().map(|m| m.to_json()),
        oracle_sat: oracle.map(|(w, k)| oracle_sat(f, w, k).is_some()),
        max_depth: v.stats.max_depth,
        max_chain: v.stats.max_chain,
    }
}

/// The formulas of a fuzz run, in index order.
pub fn corpus(seed: u64, count: usize, max_size: usize) -> Vec<Formula> {
    let gen = FormulaGen::default();
    let mut rng = gen::rng(seed);
    (0..count)
        .map(|_| gen.formula(&mut rng, max_size))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzReport {
    pub cases: Vec<CaseReport>,
}

impl FuzzReport {
    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.ok()).count()
    }

    pub fn all_ok(&self) -> bool {
        self.passed() == self.cases.len()
    }
}

/// `"<passed>/<total> ok"` followed by one line per failed case.
impl fmt::Display for FuzzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}/{} ok", self.passed(), self.cases.len())?;
        for c in &self.cases {
            for p in c.problems() {
                writeln!(f, "case {}: {}: {}", c.index, c.formula, p)?;
            }
        }
        Ok(())
    }
}

/// Generates and checks `config.count` formulas. Cases run in parallel and
/// are reported in index order.
pub fn fuzz(config: &FuzzConfig) -> FuzzReport {
    let formulas = corpus(config.seed, config.count, config.max_size);
    let oracle = Some((config.oracle_worlds, config.oracle_values));
    let cases = formulas
        .par_iter()
        .enumerate()
        .map(|(i, f)| check_formula(i, f, oracle))
        .collect();
    FuzzReport { cases }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_and_repeats() {
        let config = FuzzConfig::new(11, 30, 5);
        let a = fuzz(&config);
        assert!(a.all_ok(), "{a}");
        assert_eq!(a.to_string().lines().next().unwrap(), "30/30 ok");
        assert_eq!(a, fuzz(&config));
    }

    #[test]
    fn problems_are_reported() {
        let mut c = check_formula(0, &crate::parse("p").unwrap(), None);
        assert!(c.ok());
        c.satisfiable = false;
        c.oracle_sat = Some(true);
        c.max_chain = 99;
        assert_eq!(c.problems().len(), 2);
    }
}
