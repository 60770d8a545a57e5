//! `desing`: embedded resolution of singularities from the command line.
//!
//! Exit status: 0 success, 1 internal error, 2 bad input or usage,
//! 3 year or compute budget exhausted, 4 certificate or check failed.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod problem;

use problem::{read_problem, Overrides};

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Budget(String),
    Failed(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Internal(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Failed(_) => 4,
        }
    }
}

#[derive(Parser)]
#[command(name = "desing", version, about = "Resolution of singularities by iterated blowups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct Flags {
    #[arg(long)]
    max_years: Option<u32>,
    /// Bound on the integer coefficients tried for maximal-contact witnesses.
    #[arg(long)]
    coef_bound: Option<u32>,
    /// Truncation depth when computing orders along a subvariety.
    #[arg(long)]
    kmax: Option<u32>,
    /// Restrict sampled points to the p-adic domain of the variables.
    #[arg(long)]
    prime: Option<u64>,
    /// Height bound for sampled fiber points.
    #[arg(long)]
    sample_height: Option<u32>,
}

impl From<&Flags> for Overrides {
    fn from(f: &Flags) -> Self {
        Overrides {
            max_years: f.max_years,
            coef_bound: f.coef_bound,
            kmax: f.kmax,
            prime: f.prime,
            sample_height: f.sample_height,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Resolve a hypersurface or principalize an ideal; writes tree.json, certificate.json and tree.dot.
    Resolve {
        problem: PathBuf,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[command(flatten)]
        flags: Flags,
    },
    /// Print the invariant word at a rational point, e.g. `--at 0,1/2`.
    Invariant {
        problem: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        /// Chart of the resolution tree; the input chart when absent.
        #[arg(long)]
        chart: Option<usize>,
        #[command(flatten)]
        flags: Flags,
    },
    /// Blow up the input along the coordinate center named in the problem file.
    Blowup {
        problem: PathBuf,
        #[command(flatten)]
        flags: Flags,
    },
    /// Normal-crossings checks and tree verification.
    #[command(subcommand)]
    Check(Check),
}

#[derive(Subcommand)]
enum Check {
    /// Is the polynomial a unit times a monomial in the divisors?
    Nc {
        problem: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Do the hypersurface and the divisors cross simultaneously normally?
    Snc { problem: PathBuf },
    /// Re-derive and certify an emitted tree.json.
    Verify {
        tree: PathBuf,
        #[command(flatten)]
        flags: Flags,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Resolve { problem, out_dir, flags } => {
            let p = read_problem(&problem)?.load(&(&flags).into())?;
            commands::resolve(&problem, &p, &out_dir)
        }
        Command::Invariant { problem, at, chart, flags } => {
            let p = read_problem(&problem)?.load(&(&flags).into())?;
            commands::invariant(&p, &at, chart)
        }
        Command::Blowup { problem, flags } => {
            let p = read_problem(&problem)?.load(&(&flags).into())?;
            commands::blowup(&p)
        }
        Command::Check(Check::Nc { problem, at }) => {
            let p = read_problem(&problem)?.load(&Overrides::default())?;
            commands::check_nc(&p, at.as_deref())
        }
        Command::Check(Check::Snc { problem }) => {
            let p = read_problem(&problem)?.load(&Overrides::default())?;
            commands::check_snc(&p)
        }
        Command::Check(Check::Verify { tree, flags }) => commands::check_verify(&tree, &(&flags).into()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Parse(m) => eprintln!("error: {m}"),
                CliError::Budget(m) => eprintln!("budget exhausted: {m}"),
                CliError::Failed(m) if m.is_empty() => eprintln!("check failed"),
                CliError::Failed(m) => eprintln!("check failed: {m}"),
                CliError::Internal(m) => eprintln!("internal error: {m}"),
            }
            ExitCode::from(e.code())
        }
    }
}
