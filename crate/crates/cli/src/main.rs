//! `caustica`: batch front-end for zero-sum verification, coset algebra and
//! source-plane scans.

mod commands;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use caustica::catalog::SingularityId;
use caustica::Rational;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "caustica", version, about = "Magnification zero-sum verification for caustic singularities")]
#[command(after_help = "Coefficient lists are ascending (a0 first) and comma-separated; entries may be \
integers, p/q or decimals. Use --phi=-2,3 when the list starts with a minus sign.\n\n\
Exit codes: 0 ok, 2 usage, 3 tolerance failure, 4 exact-identity failure.")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Base seed; trial k of a singularity draws from its own stream.
    #[arg(long, global = true, env = "CAUSTICA_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Tolerance override, e.g. --tol sum_tol=1e-12 (repeatable).
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE", value_parser = parse::tolerance)]
    pub tol: Vec<(String, f64)>,
    /// Report file; standard output when absent.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Zero-sum of signed magnifications over random admissible draws.
    Verify {
        #[arg(long, short)]
        singularity: SingularityId,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
    },
    /// `verify` for all eleven singularities.
    VerifyAll {
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
    },
    /// Exact catalog identities on random rational draws.
    Identities {
        /// All singularities when absent.
        #[arg(long, short)]
        singularity: Option<SingularityId>,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
    },
    /// Exact sum of num/den over the roots of phi.
    Trace {
        #[arg(long, allow_hyphen_values = true, value_parser = parse::rationals)]
        phi: List<Rational>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse::rationals)]
        num: List<Rational>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse::rationals, default_value = "1")]
        den: List<Rational>,
    },
    /// Power sums N_0..=N_upto of the roots of phi.
    Newton {
        #[arg(long, allow_hyphen_values = true, value_parser = parse::rationals)]
        phi: List<Rational>,
        #[arg(long)]
        upto: usize,
    },
    /// Real pre-image counts over a grid of source points.
    Scan {
        #[arg(long, short)]
        singularity: SingularityId,
        /// Unfolding parameters c1,c2,...
        #[arg(long, allow_hyphen_values = true, value_parser = parse::floats, default_value = "")]
        c: List<f64>,
        /// Cells per side.
        #[arg(long, default_value_t = caustica::scanner::DEFAULT_RESOLUTION as u64, value_parser = clap::value_parser!(u64).range(2..))]
        resolution: u64,
        /// Caustic point file; defaults to a sibling of --output.
        #[arg(long)]
        caustics: Option<PathBuf>,
        /// Also search for a source point with every pre-image real.
        #[arg(long)]
        max_region: bool,
        #[arg(long, default_value_t = caustica::scanner::DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Pre-images and magnifications of one source point.
    Preimages {
        #[arg(long, short)]
        singularity: SingularityId,
        #[arg(long, allow_hyphen_values = true, value_parser = parse::floats, default_value = "")]
        c: List<f64>,
        /// Source point s1,s2.
        #[arg(long, allow_hyphen_values = true, value_parser = parse::floats)]
        s: List<f64>,
    },
}

/// Comma-separated list argument.
#[derive(Clone, Debug)]
pub struct List<T>(pub Vec<T>);

/// How a run ended, mapped onto the process exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Tolerance(String),
    Identity(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Tolerance(_) => 3,
            Failure::Identity(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Tolerance(m) | Failure::Identity(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("caustica: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
