//! Command implementations behind the `ideal-roots` binary.
//!
//! Every command returns a [`RunReport`], which serializes to
//! `{command, input, tolerances, result, wall_time_s}`.

pub mod commands;
pub mod ptb_suite;
pub mod report;
pub mod text;

use ideal_roots::deformation::DeformationError;
use ideal_roots::expr::ExprError;
use ideal_roots::ptb::PtbError;
use ideal_roots::triangulation::ParseError;
use thiserror::Error;

pub use commands::{cmd_fill, cmd_search, cmd_solve, cmd_tangent, cmd_validate, Mode, Settings};
pub use ptb_suite::cmd_ptb;
pub use report::{CommandResult, RunReport, Tolerances};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: ParseError,
    },
    #[error("invalid --{flag}: {source}")]
    Expr {
        flag: &'static str,
        #[source]
        source: ExprError,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Deformation(#[from] DeformationError),
    #[error(transparent)]
    Ptb(#[from] PtbError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Expr { .. } | CliError::Usage(_) => EXIT_INPUT,
            CliError::Deformation(e) => match e {
                DeformationError::NoConvergence { .. }
                | DeformationError::DegenerateLimit { .. }
                | DeformationError::NotPositivelyOriented { .. }
                | DeformationError::DegenerateEvaluation { .. }
                | DeformationError::Indeterminate(_) => EXIT_NUMERICAL,
                _ => EXIT_INPUT,
            },
            CliError::Ptb(e) => match e {
                PtbError::ExcludedLocus { .. } => EXIT_INPUT,
                PtbError::InconclusiveLimit(_) => EXIT_INCONCLUSIVE,
                _ => EXIT_NUMERICAL,
            },
        }
    }
}
