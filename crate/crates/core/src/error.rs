use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("modulus mismatch: expected {expected}, found {found}")]
    ModulusMismatch { expected: u32, found: u32 },

    /// An enumeration would exceed the configured word-count cap.
    #[error("{what} needs {needed} words, above the cap of {cap}")]
    ResourceLimit {
        what: &'static str,
        needed: u128,
        cap: u64,
    },

    #[error("minimum distance is undefined for a code with {0} codeword(s)")]
    UndefinedDistance(usize),

    #[error("word set is not closed under addition")]
    NonLinear,

    #[error("type classification anomaly: d_H = {d_h} < ceil(d_L / p) = {bound}")]
    ClassificationAnomaly { d_h: u32, bound: u32 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("config error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
