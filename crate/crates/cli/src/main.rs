//! `semidomain`: command-line front end for the e.d. decision procedure.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use semidomain::rees::DEFAULT_SIZE_CAP;
use semidomain::terms::{TermError, DEFAULT_CLOSURE_BUDGET, DEFAULT_SWEEP_BUDGET};
use serde::Serialize;
use thiserror::Error;

#[derive(Parser)]
#[command(name = "semidomain", version, about = "Decide whether a finite semigroup is an equational domain")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Maximum number of term functions explored by the oracle.
    #[arg(long, global = true, default_value_t = DEFAULT_CLOSURE_BUDGET)]
    budget_closure: usize,
    /// Maximum number of points in an exhaustive sweep of S^n.
    #[arg(long, global = true, default_value_t = DEFAULT_SWEEP_BUDGET)]
    budget_sweep: u64,
    /// Maximum order of a semigroup materialized from a Rees spec.
    #[arg(long, global = true, default_value_t = DEFAULT_SIZE_CAP)]
    size_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a Cayley or Rees spec file and check associativity.
    Validate { path: PathBuf },
    /// Kernel, Rees coordinates, matrix and group verdicts, ~_K, bounds.
    Analyze { path: PathBuf },
    /// Decide the e.d. property.
    Decide {
        path: PathBuf,
        /// Cross-check against the term-function closure oracle (order <= 3).
        #[arg(long)]
        oracle: bool,
    },
    /// Solve a system of equations by exhaustive sweep.
    Solve {
        semigroup: PathBuf,
        system: PathBuf,
        /// List every solution.
        #[arg(long)]
        list: bool,
    },
    /// Synthesize and verify a system defining a point set.
    Witness {
        semigroup: PathBuf,
        /// `msem`, `mgr-like`, or a points file.
        #[arg(long)]
        set: String,
        /// Arity for `mgr-like` (default 2).
        #[arg(long)]
        arity: Option<usize>,
        /// Write the system to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Refuse to write a system file larger than this.
        #[arg(long, default_value_t = commands::DEFAULT_MAX_OUT_BYTES)]
        max_out_bytes: u64,
    },
    /// Emit a named fixture: triv, lz2, rz2, n3, c2, c3, c6, s3, s4, a4, a5,
    /// d4, q8, rs240, rsing, a5plus, or a family (cyclic, symmetric,
    /// alternating, dihedral, null, left-zero, right-zero) with a parameter.
    Fixture {
        name: String,
        param: Option<usize>,
        /// Emit a Rees spec document instead of a Cayley table (rs240, rsing).
        #[arg(long)]
        rees: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{message}")]
    Validation { message: String, details: Option<serde_json::Value> },
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Construction(String),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn validation(message: impl Into<String>) -> Self {
        CliError::Validation { message: message.into(), details: None }
    }

    pub fn from_term(e: TermError) -> Self {
        match e.root() {
            TermError::SweepBudgetExceeded { .. } => CliError::Budget(e.to_string()),
            _ => CliError::validation(e.to_string()),
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Validation { .. } => "validation",
            CliError::Budget(_) => "budget",
            CliError::Construction(_) => "construction",
            CliError::Other(_) => "error",
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation { .. } => 2,
            CliError::Budget(_) => 3,
            CliError::Construction(_) => 4,
            CliError::Other(_) => 1,
        }
    }
}

#[derive(Serialize, Clone, Copy)]
pub struct Budgets {
    pub closure: usize,
    pub sweep: u64,
    pub size_cap: usize,
}

/// Command output: a JSON payload plus the lines shown in text mode.
pub struct Outcome {
    pub input: Option<input::InputInfo>,
    pub result: serde_json::Value,
    pub lines: Vec<String>,
}

#[derive(Serialize)]
struct Report<'a> {
    command: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<&'a input::InputInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<&'a serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<serde_json::Value>,
    budgets: Budgets,
    elapsed_ms: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot configure {n} threads: {e}");
            return ExitCode::from(1);
        }
    }
    let budgets = Budgets { closure: cli.budget_closure, sweep: cli.budget_sweep, size_cap: cli.size_cap };
    let start = Instant::now();
    let (name, outcome) = match &cli.command {
        Command::Validate { path } => ("validate", commands::validate(path, budgets)),
        Command::Analyze { path } => ("analyze", commands::analyze(path, budgets)),
        Command::Decide { path, oracle } => ("decide", commands::decide(path, *oracle, budgets)),
        Command::Solve { semigroup, system, list } => ("solve", commands::solve(semigroup, system, *list, budgets)),
        Command::Witness { semigroup, set, arity, out, max_out_bytes } => {
            ("witness", commands::witness(semigroup, set, *arity, out.as_deref(), *max_out_bytes, budgets))
        }
        Command::Fixture { name, param, rees, out } => match out {
            Some(out) => ("fixture", commands::fixture(name, *param, *rees, out)),
            None => {
                return match commands::fixture_document(name, *param, *rees) {
                    Ok(doc) => {
                        println!("{doc}");
                        ExitCode::SUCCESS
                    }
                    Err(e) => report_error("fixture", &e, cli.json, budgets, start),
                }
            }
        },
    };
    match outcome {
        Ok(outcome) => {
            let elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;
            if cli.json {
                let report = Report {
                    command: name,
                    input: outcome.input.as_ref(),
                    result: Some(&outcome.result),
                    error: None,
                    budgets,
                    elapsed_ms,
                };
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                if let Some(info) = &outcome.input {
                    println!("input: {} ({} elements, sha256 {})", info.path, info.order, info.sha256);
                }
                for line in &outcome.lines {
                    println!("{line}");
                }
                println!("time: {elapsed_ms:.1} ms");
            }
            ExitCode::SUCCESS
        }
        Err(e) => report_error(name, &e, cli.json, budgets, start),
    }
}

fn report_error(name: &str, e: &CliError, json: bool, budgets: Budgets, start: Instant) -> ExitCode {
    if json {
        let mut error = serde_json::json!({ "kind": e.kind(), "message": e.to_string(), "exit_code": e.exit_code() });
        if let CliError::Validation { details: Some(d), .. } = e {
            error["details"] = d.clone();
        }
        let report = Report {
            command: name,
            input: None,
            result: None,
            error: Some(error),
            budgets,
            elapsed_ms: start.elapsed().as_secs_f64() * 1000.0,
        };
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        eprintln!("error ({}): {e}", e.kind());
    }
    ExitCode::from(e.exit_code())
}
