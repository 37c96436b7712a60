//! Command-line driver: simulations, limit constants, CLT checks and reports.

mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hullwalk::montecarlo::{with_threads, THREADS_ENV};

use commands::{CltArgs, ConstantsArgs, DegenerateArgs, ExactArgs, LimitsArgs, ReportArgs};
use config::RunConfig;

#[derive(Parser)]
#[command(
    name = "hullwalk",
    version,
    about = "Convex hulls of planar random walks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo estimates of hull perimeter, area and inradius, as CSV.
    Simulate(RunConfig),
    /// Limit constants and variance bounds for a step law, as JSON.
    Limits(LimitsArgs),
    /// Kolmogorov-Smirnov check of the perimeter CLT for a drifting walk.
    Clt(CltArgs),
    /// Monte Carlo estimates of the Brownian hull constants.
    Constants(ConstantsArgs),
    /// Exact moments by enumeration for finite-support steps.
    Exact(ExactArgs),
    /// Compare a simulation CSV with a limits JSON.
    Report(ReportArgs),
    /// Var L_n against log n for the space-time binary walk.
    Degenerate(DegenerateArgs),
}

#[derive(Debug)]
pub enum Failure {
    /// Bad arguments, inputs or preconditions.
    Config(String),
    /// A NaN or other numeric breakdown during the run.
    Numeric(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Config(_) => 1,
            Failure::Numeric(_) => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Config(m) => write!(f, "error: {m}"),
            Failure::Numeric(m) => write!(f, "numeric failure: {m}"),
        }
    }
}

impl From<hullwalk::Error> for Failure {
    fn from(e: hullwalk::Error) -> Self {
        match e {
            hullwalk::Error::NumericFailure(_) | hullwalk::Error::NoConvergence(_) => {
                Failure::Numeric(e.to_string())
            }
            _ => Failure::Config(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

fn thread_cap() -> Result<Option<usize>, Failure> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t > 0 => Ok(Some(t)),
            _ => Err(Failure::Config(format!(
                "{THREADS_ENV} must be a positive integer, got '{v}'"
            ))),
        },
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let threads = thread_cap()?;
    with_threads(threads, move || match cli.command {
        Command::Simulate(cfg) => commands::simulate(&cfg),
        Command::Limits(a) => commands::limits(&a),
        Command::Clt(a) => commands::clt(&a),
        Command::Constants(a) => commands::constants(&a),
        Command::Exact(a) => commands::exact(&a),
        Command::Report(a) => commands::report(&a),
        Command::Degenerate(a) => commands::degenerate(&a),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{f}");
            ExitCode::from(f.exit_code())
        }
    }
}
