use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("form is not positive definite: {0}")]
    NotPositiveDefinite(String),

    #[error("cross coefficient {0} is odd; forms must be classically integral")]
    OddCrossCoefficient(i64),

    #[error("cannot parse {kind} literal `{input}`: {reason}")]
    Parse {
        kind: &'static str,
        input: String,
        reason: String,
    },

    #[error("invalid sum tuple {0:?}: {1}")]
    InvalidTuple([i64; 6], String),

    #[error("term x(ax+b)/2 needs b ≡ a (mod 2), got a={a}, b={b}")]
    TermParity { a: i64, b: i64 },

    #[error("Jacobi symbol needs an odd positive modulus, got {0}")]
    EvenModulus(i64),

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invariant failure: {0}")]
    Invariant(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
