//! Command-line front end for `dqdyn`: trajectory inverse dynamics,
//! randomized cross-validation and cost tables.

pub mod commands;
pub mod trajectory;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::run;

/// Exit status for a report that exceeded its threshold.
pub const EXIT_THRESHOLD: u8 = 1;
/// Exit status for bad input, unreadable files and schema violations.
pub const EXIT_INPUT: u8 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("mean error {worst:e} % exceeds the threshold {threshold:e} %")]
    Threshold { worst: f64, threshold: f64 },
    #[error("{0}")]
    Dynamics(#[from] dqdyn::Error),
    #[error("write failed: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Threshold { .. } => EXIT_THRESHOLD,
            _ => EXIT_INPUT,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "dqdyn", version, about = "Dual quaternion robot dynamics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Joint torques along a trajectory, as CSV on standard output.
    Idyn {
        #[command(flatten)]
        robot: RobotArgs,
        /// Trajectory CSV: header, then rows `t, q..., qdot..., qddot...`.
        #[arg(long)]
        traj: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Dqne)]
        method: MethodArg,
    },
    /// Compare both engines on random motions and report per-joint errors.
    Validate {
        #[command(flatten)]
        robot: RobotArgs,
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest accepted per-joint mean error, in percent.
        #[arg(long, default_value_t = 1e-6)]
        threshold: f64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Operation counts of both formulations and the classic algorithms.
    Cost {
        /// Number of links, `N` or an inclusive range `A..B`.
        #[arg(long, default_value = "1..7", value_parser = parse_range)]
        n: NRange,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct RobotArgs {
    /// JSON robot description.
    #[arg(long)]
    pub robot: Option<PathBuf>,
    /// Built-in chain: pendulum, twolink or seven.
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Dqne,
    Dqgp,
}

impl From<MethodArg> for dqdyn::validation::Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Dqne => Self::Dqne,
            MethodArg::Dqgp => Self::Dqgp,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Table,
}

/// Inclusive range of link counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub first: i64,
    pub last: i64,
}

pub fn parse_range(s: &str) -> Result<NRange, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| format!("{t:?} is not an integer"))
    };
    let (first, last) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let n = num(s)?;
            (n, n)
        }
    };
    if first < 1 {
        return Err(format!("the number of links must be >= 1, got {first}"));
    }
    if last < first {
        return Err(format!("empty range {first}..{last}"));
    }
    Ok(NRange { first, last })
}
