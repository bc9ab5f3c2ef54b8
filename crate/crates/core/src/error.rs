use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parity-check matrix must have at least one row and one column")]
    EmptyMatrix,

    /// An exhaustive enumeration would need `2^required_log2` items but only `cap` are allowed.
    #[error("state space of 2^{required_log2} exceeds cap of {cap}")]
    CapExceeded { required_log2: usize, cap: u64 },

    #[error("code encodes no logical qubits/bits")]
    NoLogicals,

    #[error("no reachable target state")]
    NoTarget,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("alist degrees inconsistent: {0}")]
    InconsistentDegrees(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("coefficient shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("canonical operator is not elementary")]
    NotElementary,

    #[error("generator selection does not reproduce the stabilizer")]
    NotAStabilizer,

    #[error("vector is not a codeword: {0}")]
    NotACodeword(String),

    #[error("operator has all-zero canonical coefficients")]
    TrivialOperator,

    #[error("invalid deformation: {0}")]
    InvalidDeformation(String),
}

impl Error {
    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// Stable machine-readable name used in CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::EmptyMatrix => "EmptyMatrix",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::NoLogicals => "NoLogicals",
            Error::NoTarget => "NoTarget",
            Error::Parse { .. } => "ParseError",
            Error::InconsistentDegrees(_) => "InconsistentDegrees",
            Error::IndexOutOfRange(_) => "IndexOutOfRange",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::NotElementary => "NotElementary",
            Error::NotAStabilizer => "NotAStabilizer",
            Error::NotACodeword(_) => "NotACodeword",
            Error::TrivialOperator => "TrivialOperator",
            Error::InvalidDeformation(_) => "InvalidDeformation",
        }
    }
}

/// Fails with `CapExceeded` unless `2^log2 <= cap`.
pub(crate) fn ensure_within_cap(log2: usize, cap: u64) -> Result<()> {
    let fits = log2 < 64 && (1u64 << log2) <= cap;
    if fits {
        Ok(())
    } else {
        Err(Error::CapExceeded {
            required_log2: log2,
            cap,
        })
    }
}
