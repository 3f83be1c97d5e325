//! Satisfiability, model checking, countermodel extraction and Hilbert proof
//! checking for multi-agent modal logic K with the knowing-what operator
//! `Kv_i(phi, d)` ("among the `i`-accessible `phi`-worlds, `d` has one value").
//!
//! * [`formula`]: syntax, parser, printer, closure operators.
//! * [`semantics`]: Kripke models with value assignments, the evaluator and a
//!   brute-force bounded satisfiability oracle.
//! * [`tableau`]: the polynomial-space tableau decision procedure with
//!   countermodel extraction.
//! * [`proofs`]: a checker for Hilbert-style derivations.
//! * [`gen`] and [`harness`]: seeded random formulas and the self-check loop
//!   behind `lkvr fuzz`.

pub mod formula;
pub mod gen;
pub mod harness;
pub mod proofs;
pub mod semantics;
pub mod tableau;

pub use formula::{parse, Agent, Formula, FormulaSet};
pub use semantics::{oracle_sat, Model, ValueToken};
pub use tableau::{decide, Verdict};
