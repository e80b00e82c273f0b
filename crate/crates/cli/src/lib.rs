//! Command-line front end: rep/val conversion, enumeration, counting,
//! growth analysis and verification of recognizable sets described in
//! plain-text spec files.

mod commands;
pub mod spec;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::expectations;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const USAGE: i32 = 1;
    /// Invalid spec, subset violation, rejected word, or a failed check.
    pub const INVALID: i32 = 2;
    pub const INFEASIBLE: i32 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Infeasible(String),
    /// Checks ran and some failed; the report has already been written.
    #[error("verification failed")]
    Failed,
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Invalid(_) | CliError::Failed | CliError::Io(_) => exit::INVALID,
            CliError::Infeasible(_) => exit::INFEASIBLE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "ans", version, about = "Abstract numeration systems and recognizable sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Representation of an integer.
    Rep {
        #[arg(long)]
        spec: PathBuf,
        n: String,
    },
    /// Value of a word of the language (`eps` for the empty word).
    Val {
        #[arg(long)]
        spec: PathBuf,
        word: String,
    },
    /// Elements t(from..=to) of the set.
    Enum {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 0)]
        from: u64,
        #[arg(long, default_value_t = 9)]
        to: u64,
        /// CSV with header `n,t` instead of a comma-separated line.
        #[arg(long)]
        csv: bool,
    },
    /// Word counts u(n), v(n) and their recurrence.
    Counts {
        #[arg(long)]
        spec: PathBuf,
        /// Count rep(X) instead of the language.
        #[arg(long)]
        set: bool,
        #[arg(long, default_value_t = 20)]
        nmax: usize,
        #[arg(long)]
        csv: bool,
    },
    /// Growth signature of the language (or of rep(X) with --set).
    Growth {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        set: bool,
    },
    /// Predicted growth class of t_X.
    Predict {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Recompute expectations and check the counting lemmas.
    Verify {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 40)]
        nmax: usize,
        /// Also compare t_X with its predicted class on a geometric grid.
        #[arg(long)]
        fit: bool,
    },
    /// Emit the spec of a construction.
    Construct {
        /// base, unary, bounded, fibonacci, squares, rational_power, logpoly, inverse_logpoly
        family: String,
        params: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the spec of a named worked example.
    Fixture {
        name: Option<String>,
        #[arg(long)]
        list: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The morphism associated with the set and a prefix of its coded fixed point.
    Associated {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 32)]
        prefix: usize,
    },
    /// Prefix of the fixed point of a morphism given in text form.
    FixedPoint {
        #[arg(long)]
        morphism: PathBuf,
        #[arg(long)]
        seed: String,
        #[arg(long, default_value_t = 32)]
        prefix: usize,
    },
    /// Whether some recognizable set has t(n) = Θ((log n)^logexp n^power).
    Feasibility {
        #[arg(long, allow_hyphen_values = true)]
        logexp: i64,
        #[arg(long)]
        power: u32,
    },
    /// Seeded internal consistency checks.
    Selfcheck {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Runs the CLI on `args`, writing to `out` and `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::SUCCESS };
            let rendered = e.render().to_string();
            let _ =
                if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match commands::dispatch(cli.command, out) {
        Ok(()) => exit::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::Failed) {
                let _ = writeln!(err, "error: {e}");
            }
            e.code()
        }
    }
}
