use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid deviation vector: {0}")]
    Deviation(DeviationViolation),

    #[error("{what} of size {size} exceeds the configured cap {cap}")]
    Resource { what: &'static str, size: usize, cap: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Two routes that must agree on standardness disagreed.
    #[error("equivalence violation at (r,s,p)=({r},{s},{p}): {detail}")]
    EquivalenceViolation { r: usize, s: usize, p: usize, detail: String },

    #[error("identity violation: {0}")]
    IdentityViolation(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable code, used by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::Parse { .. } => "parse",
            Error::Domain(_) => "domain",
            Error::Deviation(v) => v.code(),
            Error::Resource { .. } => "resource",
            Error::Precondition(_) => "precondition",
            Error::EquivalenceViolation { .. } => "equivalence-violation",
            Error::IdentityViolation(_) => "identity-violation",
            Error::Internal(_) => "internal",
        }
    }

    /// Verification failures signal that two independent routes disagreed.
    pub fn is_verification_failure(&self) -> bool {
        matches!(self, Error::EquivalenceViolation { .. } | Error::IdentityViolation(_) | Error::Internal(_))
    }
}

/// The first condition a candidate deviation vector fails, 1-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum DeviationViolation {
    #[error("empty vector")]
    Empty,
    #[error("entries {i} and {} increase", .i + 1)]
    NotDecreasing { i: usize },
    #[error("eps_{i} - eps_{j} equals {j} - {i}")]
    Collision { i: usize, j: usize },
    #[error("eps_{n} = {value} outside [1 - {n}, r - {n}]")]
    OutOfRange { n: usize, value: i64 },
}

impl DeviationViolation {
    pub fn code(&self) -> &'static str {
        match self {
            DeviationViolation::Empty => "deviation-empty",
            DeviationViolation::NotDecreasing { .. } => "deviation-not-decreasing",
            DeviationViolation::Collision { .. } => "deviation-collision",
            DeviationViolation::OutOfRange { .. } => "deviation-out-of-range",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
