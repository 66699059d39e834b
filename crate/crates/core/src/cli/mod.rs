//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error. Errors are
//! printed to stderr as a JSON object `{"error": {"kind", "message"}}`.

pub mod bench;
pub mod gen;
pub mod solve;
pub mod svg;
pub mod verify;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::minslope::Method;
use crate::model::{build_corridor, parse_instance, serialize_instance, ModelError};
use crate::num::Q;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn from_model(e: ModelError) -> Self {
        CliError::Input(e.to_string())
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Io(_) => "io",
            CliError::Verification(_) => "verification",
            CliError::Internal(_) => "internal",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io(_) => 2,
            CliError::Verification(_) | CliError::Internal(_) => 1,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({ "error": { "kind": self.kind(), "message": self.to_string() } }).to_string()
    }
}

#[derive(Debug, Parser)]
#[command(name = "tetherpath", version, about = "Slowest and simplest ground paths under a tethered drone")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1")]
        alpha: Q,
        #[arg(long, default_value = "1")]
        budget: Q,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "1")]
        min_duration: Q,
        #[arg(long, default_value = "4")]
        max_duration: Q,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve an instance and write a solution record.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "linear")]
        mode: Method,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a solution record against its instance; prints a JSON report.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        solution: PathBuf,
        /// Also compare against the slow reference solvers.
        #[arg(long)]
        oracle: bool,
    },
    /// Time both solvers on generated instances; writes CSV.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "10000,100000,1000000")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Draw an instance and optionally a solution as SVG.
    Plot {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        solution: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::Gen {
            n,
            alpha,
            budget,
            seed,
            min_duration,
            max_duration,
            out,
        } => {
            let config = gen::GenConfig {
                duration_range: (min_duration, max_duration),
                ..gen::GenConfig::new(n, alpha, budget, seed)
            };
            let instance = gen::gen_instance(&config).map_err(|e| CliError::input(e.to_string()))?;
            write(&out, &(serialize_instance(&instance) + "\n"))
        }
        Command::Solve { input, mode, out } => {
            let record = solve::run_solve(&read(&input)?, mode)?;
            write(&out, &record.to_json())
        }
        Command::Verify {
            input,
            solution,
            oracle,
        } => {
            let report = verify::run_verify(&read(&input)?, &read(&solution)?, oracle)?;
            print!("{}", report.to_json());
            if report.pass {
                Ok(())
            } else {
                Err(CliError::Verification(report.failed().join(", ")))
            }
        }
        Command::Bench {
            sizes,
            repeats,
            seed,
            out,
        } => {
            if sizes.contains(&0) {
                return Err(CliError::input("sizes must be at least 1"));
            }
            let report = bench::run_bench(&sizes, repeats, seed);
            write(&out, &report.to_csv())
        }
        Command::Plot {
            input,
            solution,
            out,
        } => {
            let instance = parse_instance(&read(&input)?).map_err(CliError::from_model)?;
            let corridor = build_corridor(&instance).map_err(CliError::from_model)?;
            let path = match solution {
                Some(p) => {
                    let record: solve::SolutionRecord = serde_json::from_str(&read(&p)?)
                        .map_err(|e| CliError::input(format!("solution: {e}")))?;
                    Some(record.beta_path()?)
                }
                None => None,
            };
            write(&out, &svg::render_svg(&corridor, path.as_ref()))
        }
    }
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}

pub fn run() -> i32 {
    run_with(std::env::args_os())
}
