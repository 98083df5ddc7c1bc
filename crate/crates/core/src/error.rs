use thiserror::Error;

use crate::report::Report;

/// Everything that can go wrong while building or loading a structure.
///
/// Axiom failures are not errors: checkers return a [`Report`]. The one
/// exception is [`Error::Verification`], raised when a construction needs a
/// valid input (or produced an invalid output) and carries the failing report.
#[derive(Debug, Error)]
pub enum Error {
    #[error("table `{table}` has the wrong size: expected {expected}, found {found}")]
    Dimension {
        table: String,
        expected: usize,
        found: usize,
    },

    #[error("entry {value} of `{table}` at position {position} is out of range (bound {bound})")]
    OutOfRange {
        table: String,
        position: String,
        value: usize,
        bound: usize,
    },

    #[error("operation name `{0}` is reserved")]
    ReservedName(String),

    #[error("operation name `{0}` is declared twice")]
    DuplicateName(String),

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("unknown operation `{0}`")]
    UnknownOp(String),

    #[error("operation `{name}` used with {found} arguments, expected {expected}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("malformed structure: {0}")]
    Malformed(String),

    #[error("verification failed\n{0}")]
    Verification(Report),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// `true` for input-shape problems, `false` for failed verification.
    pub fn is_structural(&self) -> bool {
        !matches!(self, Error::Verification(_))
    }

    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_len(table: &str, expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::Dimension {
            table: table.to_string(),
            expected,
            found,
        });
    }
    Ok(())
}

pub(crate) fn check_range(table: &str, values: &[usize], bound: usize) -> Result<()> {
    match values.iter().position(|&v| v >= bound) {
        Some(i) => Err(Error::OutOfRange {
            table: table.to_string(),
            position: i.to_string(),
            value: values[i],
            bound,
        }),
        None => Ok(()),
    }
}
