//! `tamepath`: inspect precubical sets and the directed paths inside them.

mod commands;
mod load;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Version of the `--json` report layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable that sets the worker thread count.
pub const THREADS_ENV: &str = "TAMEPATH_THREADS";

#[derive(Debug, Parser)]
#[command(name = "tamepath", version, about = "Precubical sets, tame directed paths and spatiality checks")]
pub struct Cli {
    /// Print a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the precubical identities of a complex file.
    Validate { complex: PathBuf },

    /// Cell counts by dimension.
    Info { complex: PathBuf },

    /// Decide spatiality; list every pair of cubes that breaks it.
    Spatial { complex: PathBuf },

    /// Decide whether a subcomplex of the boundary of the n-cube carries a
    /// vertex-avoiding directed path from bottom to top. Cell ids of the
    /// file are words over {0,1,*}.
    BnCheck {
        subcomplex: PathBuf,
        #[arg(long)]
        n: usize,
    },

    /// Enumerate cube chains between two vertices.
    Chains {
        complex: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        length: usize,
        /// Refuse lengths above this bound.
        #[arg(long, default_value_t = tamepath::dpath::DEFAULT_MAX_SKELETON_LENGTH)]
        max_length: usize,
    },

    /// Write the natural (unit-speed, stop-free) form of a path.
    Naturalize {
        path: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },

    /// Split a path into its arc-length profile and its natural form.
    Factorize {
        path: PathBuf,
        #[arg(long)]
        out_reparam: PathBuf,
        #[arg(long)]
        out_natural: PathBuf,
    },

    /// Precompose a path with a reparametrization.
    ApplyReparam {
        path: PathBuf,
        reparam: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },

    /// Concatenate two paths in the same complex.
    Compose {
        first: PathBuf,
        second: PathBuf,
        /// Rescale the result to duration 1.
        #[arg(long)]
        normalized: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },

    /// Upper bound for the taxicab distance between two points.
    Dist {
        complex: PathBuf,
        /// A point `CELL` or `CELL@x1,x2,...` with coordinates in (0,1).
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        max_hops: Option<usize>,
        #[arg(long, default_value_t = tamepath::metric::DEFAULT_GRID)]
        grid: usize,
    },

    /// Write the standard n-cube, or its boundary, as a complex file.
    Cube {
        n: usize,
        #[arg(long)]
        boundary: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

/// How a command ended, mapped to the process exit code.
#[derive(Debug)]
pub enum Failure {
    /// A validation report for stdout: exit 1.
    Rejected(String),
    /// The input parsed but is not valid: exit 1.
    Invalid(String),
    /// Bad arguments or unreadable input: exit 2.
    Usage(String),
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("{THREADS_ENV} must be a positive integer, got {value:?}")))?;
    if n == 0 {
        return Err(Failure::Usage(format!("{THREADS_ENV} must be positive")));
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| commands::run(&cli));
    match result {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(Failure::Rejected(report)) => {
            print!("{report}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {}", msg.trim_end());
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {}", msg.trim_end());
            ExitCode::from(2)
        }
    }
}
