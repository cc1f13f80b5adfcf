use num_bigint::BigUint;
use thiserror::Error;

/// Errors shared by all decision procedures and reductions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input text. `line` and `col` are 1-based.
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    /// Structurally well-formed input that violates an invariant
    /// (dimension mismatch, zero period in a 1-D set, bad index, ...).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// The instance is outside what the requested operation supports
    /// (e.g. a containment target with a nonzero constant vector).
    #[error("unsupported instance: {0}")]
    Unsupported(String),

    /// A configured resource limit would be exceeded. Carries what was
    /// requested and the limit that stopped it.
    #[error("budget exceeded for {what}: needed {needed}, limit {limit}")]
    Budget {
        what: &'static str,
        needed: String,
        limit: String,
    },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            col,
            msg: msg.into(),
        }
    }

    pub fn budget(what: &'static str, needed: impl ToString, limit: impl ToString) -> Self {
        Error::Budget {
            what,
            needed: needed.to_string(),
            limit: limit.to_string(),
        }
    }

    /// True for errors that mean "instance too large for the configured
    /// budget" rather than "instance malformed".
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}

/// Render a possibly enormous count for a message: exact while it is short,
/// a power of two once spelling it out would drown the report.
pub fn approx_count(v: &BigUint) -> String {
    if v.bits() <= 40 {
        v.to_string()
    } else {
        format!("about 2^{}", v.bits())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
