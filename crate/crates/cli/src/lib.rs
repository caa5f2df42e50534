//! Command-line front end: loads JSON inputs or named fixtures, runs one
//! operation and produces a [`RunReport`].

mod commands;
mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;
use weddle_core::cubic::CubicError;
use weddle_core::io::IoError;
use weddle_core::solve::{SolveError, SolverConfig};
use weddle_core::tensor::TensorError;
use weddle_core::weddle::WeddleError;

pub use commands::run;
pub use report::{render_text, RunReport};

/// Exit status for a completed run whose result is not certified.
pub const EXIT_UNCERTIFIED: i32 = 2;
/// Exit status for invalid input or a failed operation.
pub const EXIT_ERROR: i32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("unknown fixture {name:?}; available: {available}")]
    UnknownFixture { name: String, available: String },
    #[error("{0}")]
    WrongInput(String),
    #[error("invalid --dims {0:?}; expected A..B with 2 <= A <= B <= 5")]
    Dims(String),
    #[error(transparent)]
    Input(#[from] IoError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Weddle(#[from] WeddleError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Cubic(#[from] CubicError),
}

#[derive(Parser, Debug, Clone)]
#[command(name = "weddle", version, about = "Weddle loci, base points and rank certificates of linear systems of quadrics")]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Master seed for every random choice.
    #[arg(long, global = true, env = "WEDDLE_SEED", default_value_t = 1)]
    pub seed: u64,
    /// Print the JSON run report instead of text.
    #[arg(long, global = true, env = "WEDDLE_JSON")]
    pub json: bool,
    /// Newton corrector tolerance while tracking paths.
    #[arg(long, global = true, env = "WEDDLE_TRACK_TOL", default_value_t = 1e-9)]
    pub track_tol: f64,
    /// Normalized residual below which a point counts as a solution.
    #[arg(long, global = true, env = "WEDDLE_RESIDUAL_TOL", default_value_t = 1e-8)]
    pub residual_tol: f64,
    /// Sine distance below which two projective points are identified.
    #[arg(long, global = true, env = "WEDDLE_CLUSTER_RADIUS", default_value_t = 1e-6)]
    pub cluster_radius: f64,
}

impl GlobalOpts {
    pub fn solver_config(&self) -> SolverConfig {
        SolverConfig {
            track_tol: self.track_tol,
            residual_tol: self.residual_tol,
            cluster_radius: self.cluster_radius,
            seed: self.seed,
            ..SolverConfig::default()
        }
    }
}

/// A JSON file or a named fixture.
#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// Input JSON file (tensor, system, polynomial or rank-5 coefficients).
    #[arg(required_unless_present = "fixture")]
    pub path: Option<PathBuf>,
    /// Named fixture shipped with the library.
    #[arg(long, conflicts_with = "path")]
    pub fixture: Option<String>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Split a tensor into symmetric, residual and skew parts.
    Decompose(InputArgs),
    /// Weddle matrix and normalized determinant of a linear system.
    Weddle(InputArgs),
    /// Base points of a linear system.
    Basepoints {
        /// Input JSON file.
        #[arg(required_unless_present_any = ["fixture", "random_n1"])]
        path: Option<PathBuf>,
        #[arg(long, conflicts_with_all = ["path", "random_n1"])]
        fixture: Option<String>,
        /// Sample a cyclic-symmetric tensor of this dimension from the seed.
        #[arg(long, conflicts_with = "path")]
        random_n1: Option<usize>,
    },
    /// Singular points of a polynomial, or of the Weddle locus of a system.
    Singular(InputArgs),
    /// Weierstrass form and j-invariant of a plane cubic or of the Weddle
    /// cubic of a net of conics.
    Jinv(InputArgs),
    /// Rank lower bound from the singular points of a Weddle quartic.
    Certify(InputArgs),
    /// Base-point counts of random cyclic-symmetric systems against the
    /// Jacobsthal numbers.
    JacobsthalSweep {
        /// Inclusive dimension range, for example 2..5.
        #[arg(long, default_value = "2..5")]
        dims: String,
        /// Trials per dimension.
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
}

/// What a run prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses arguments and runs the command.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: e.exit_code(), stdout: String::new(), stderr: rendered }
            } else {
                Outcome { code: 0, stdout: rendered, stderr: String::new() }
            };
        }
    };
    match run(&cli) {
        Ok(report) => Outcome {
            code: if report.certified { 0 } else { EXIT_UNCERTIFIED },
            stdout: if cli.opts.json { report.to_json() } else { render_text(&report) },
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: EXIT_ERROR,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
