use thiserror::Error;

use crate::dynamics::PhaseState;

/// Errors raised by the numerical kernels and geodesic analyses.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// The complete integral of the first kind diverges at k = 1.
    #[error("divergence: {0}")]
    Divergence(String),

    #[error("integration failed at t = {}: {reason}", last_good.t)]
    Integration {
        reason: String,
        last_good: Box<PhaseState>,
    },

    /// p = 0: the front track is a unit circle about a fixed back wheel and
    /// the magnetic/axis description is undefined.
    #[error("circle branch: {0}")]
    CircleBranch(String),

    /// (a, b) = (1, 0): line or Euler soliton, curvature is aperiodic.
    #[error("soliton: aperiodic ({0})")]
    Soliton(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("degenerate: {0}")]
    Degenerate(String),

    #[error("near-singular characteristic: |1 - n| = {0:e}")]
    NearSingularCharacteristic(f64),

    #[error("monodromy extraction failed: {0}")]
    Extraction(String),

    #[error(
        "no connecting geodesic found after {restarts} restarts (best residual {best_residual:e})"
    )]
    NoSolutionFound { restarts: usize, best_residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
