//! `lkvr`: satisfiability, model checking, proof checking and self-tests for
//! modal logic K with the knowing-what operator.
//!
//! Exit codes: 0 for SAT / true / verified / found / all ok, 1 for the
//! negative verdict, 2 for malformed input or flag misuse.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use lkvr::harness::{fuzz, FuzzConfig};
use lkvr::proofs::{parse_proof, verify};
use lkvr::semantics::ORACLE_MAX_WORLDS;
use lkvr::tableau::decide_with;
use lkvr::{oracle_sat, parse, Formula, Model};

#[derive(Parser, Debug)]
#[command(name = "lkvr", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide satisfiability with the tableau.
    Sat {
        formula: String,
        /// Write the extracted model here when SAT.
        #[arg(long)]
        model: Option<PathBuf>,
        /// One line per tableau node on stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Evaluate a formula at a world of a model file.
    Check {
        model: PathBuf,
        world: String,
        formula: String,
    },
    /// Verify a proof file.
    Prove { proof: PathBuf },
    /// Search all small models for one satisfying the formula.
    Oracle {
        formula: String,
        #[arg(long)]
        max_worlds: usize,
        #[arg(long)]
        max_values: usize,
        /// Write the model found here.
        #[arg(long)]
        model: Option<PathBuf>,
    },
    /// Check random formulas against the model checker and the oracle.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Largest AST node count.
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
        size: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn formula(text: &str) -> Result<Formula> {
    parse(text).with_context(|| format!("cannot parse formula {text:?}"))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write_model(path: &Path, m: &Model) -> Result<()> {
    fs::write(path, m.to_json()).with_context(|| format!("cannot write {}", path.display()))
}

/// Runs one command; `Ok(false)` is the negative verdict.
fn run(command: Command) -> Result<bool> {
    match command {
        Command::Sat {
            formula: text,
            model,
            trace,
        } => {
            let f = formula(&text)?;
            let stderr = io::stderr();
            let mut err = BufWriter::new(stderr.lock());
            let v = decide_with(&f, model.is_some(), |e| {
                if trace {
                    // A closed stderr should not abort the search.
                    let _ = writeln!(err, "{e}");
                }
            });
            err.flush()?;
            drop(err);
            println!("{}", if v.satisfiable { "SAT" } else { "UNSAT" });
            if let (Some(path), Some(m)) = (&model, &v.model) {
                write_model(path, m)?;
            }
            Ok(v.satisfiable)
        }
        Command::Check {
            model,
            world,
            formula: text,
        } => {
            let m = Model::from_json(&read(&model)?)
                .with_context(|| format!("malformed model file {}", model.display()))?;
            let f = formula(&text)?;
            let holds = m.eval(&world, &f)?;
            println!("{holds}");
            Ok(holds)
        }
        Command::Prove { proof } => {
            let lines = parse_proof(&read(&proof)?)
                .with_context(|| format!("malformed proof file {}", proof.display()))?;
            match verify(&lines) {
                Ok(()) => {
                    println!("verified");
                    Ok(true)
                }
                Err(failure) => {
                    println!("{failure}");
                    Ok(false)
                }
            }
        }
        Command::Oracle {
            formula: text,
            max_worlds,
            max_values,
            model,
        } => {
            if !(1..=ORACLE_MAX_WORLDS).contains(&max_worlds) || max_values == 0 {
                bail!(
                    "--max-worlds must be in 1..={ORACLE_MAX_WORLDS} and --max-values at least 1"
                );
            }
            let f = formula(&text)?;
            match oracle_sat(&f, max_worlds, max_values) {
                Some(m) => {
                    println!("found");
                    if let Some(path) = &model {
                        write_model(path, &m)?;
                    }
                    Ok(true)
                }
                None => {
                    println!("exhausted");
                    Ok(false)
                }
            }
        }
        Command::Fuzz { seed, count, size } => {
            let report = fuzz(&FuzzConfig::new(seed, count, size as usize));
            print!("{report}");
            Ok(report.all_ok())
        }
    }
}
