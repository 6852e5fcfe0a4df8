//! Error classification for the command line: every failure is binned into
//! one of three exit codes before anything is printed.

use std::fmt;

use schottky_core::cohomology::CohomError;
use schottky_core::group::GroupError;
use schottky_core::linalg::LinAlgError;
use schottky_core::rep::RepError;
use schottky_core::scalar::{NumericError, Scalar};
use schottky_core::schottky::SchottkyError;

/// A command failure, binned by exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Exit 1: the input could not be read at all — missing file, malformed
    /// JSON, an unparsable scalar or word.
    Parse(String),
    /// Exit 2: the input parsed but violates a documented precondition; the
    /// message names the violated invariant.
    Precondition(String),
    /// Exit 3: the library reported a breach of one of its own invariants.
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Precondition(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Precondition(m) | CliError::Internal(m) => m,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Precondition(m) => write!(f, "precondition violated: {m}"),
            CliError::Internal(m) => write!(f, "internal invariant breach: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<NumericError> for CliError {
    fn from(e: NumericError) -> Self {
        match e {
            NumericError::Parse(_) => CliError::Parse(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::Parse(_) => CliError::Parse(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl<S: Scalar> From<RepError<S>> for CliError {
    fn from(e: RepError<S>) -> Self {
        match e {
            RepError::Internal(_) => CliError::Internal(e.to_string()),
            RepError::Word(GroupError::Parse(_)) => CliError::Parse(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl<S: Scalar> From<CohomError<S>> for CliError {
    fn from(e: CohomError<S>) -> Self {
        match e {
            CohomError::Internal(_) | CohomError::Rep(RepError::Internal(_)) => {
                CliError::Internal(e.to_string())
            }
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl<S: Scalar> From<SchottkyError<S>> for CliError {
    fn from(e: SchottkyError<S>) -> Self {
        match e {
            SchottkyError::Internal(_) | SchottkyError::Rep(RepError::Internal(_)) => {
                CliError::Internal(e.to_string())
            }
            SchottkyError::Numeric(NumericError::Parse(_))
            | SchottkyError::Group(GroupError::Parse(_)) => CliError::Parse(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl<S: Scalar> From<LinAlgError<S>> for CliError {
    fn from(e: LinAlgError<S>) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}
