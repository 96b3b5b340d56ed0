use thiserror::Error;

use crate::circle_max::CertifiedBracket;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed input from a caller (bad id, empty grid, unparsable text).
    #[error("usage error: {0}")]
    Usage(String),

    #[error("unresolved roots: residual {residual:.3e} after restarts")]
    UnresolvedRoots { residual: f64 },

    #[error("near-circle zero: phase step {max_step:.3} rad persists on |z| = {radius}")]
    NearCircleZero { radius: f64, max_step: f64 },

    #[error(
        "tolerance {tol:.3e} unreachable within {samples} samples (best bracket [{}, {}])",
        best.lo,
        best.hi
    )]
    ToleranceUnreachable {
        tol: f64,
        samples: usize,
        best: CertifiedBracket,
    },

    #[error("zero separation {separation:.3e} unattainable after {attempts} attempts")]
    SeparationUnattainable { separation: f64, attempts: usize },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
}
