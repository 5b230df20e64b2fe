use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The computation hit the indeterminate form 0/0.
    #[error("undefined value: 0/0")]
    Undefined,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid lens space pair ({p}, {q})")]
    InvalidPair { p: String, q: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// The chain presentation has infinite first homology.
    #[error("degenerate presentation: cokernel is infinite")]
    Degenerate,

    #[error("basis vector e{0} is not a keystone")]
    NotKeystone(usize),

    #[error("string does not match any recognized type")]
    Unrecognized,

    #[error("cannot parse {what} from {token:?}")]
    Parse { what: &'static str, token: String },

    #[error("integer overflow converting {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
