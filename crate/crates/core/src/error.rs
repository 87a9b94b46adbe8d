use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("iteration did not converge in {iterations} steps (relative residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    /// Non-positive curvature `p^T A p` inside CG. The scheme operators are
    /// SPD, so this indicates a bad operator rather than a hard problem.
    #[error("CG breakdown at iteration {iteration}: curvature {curvature:e} is not positive")]
    Breakdown { iteration: usize, curvature: f64 },

    #[error("matrix is numerically singular: {0}")]
    Singular(String),

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("problem of order {order} exceeds the dense limit of {limit}")]
    SizeGate { order: usize, limit: usize },

    #[error("time step {step}: {source}")]
    Step {
        step: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { name, reason: reason.into() }
    }

    pub(crate) fn at_step(self, step: usize) -> Self {
        Error::Step { step, source: Box::new(self) }
    }

    /// Innermost error, skipping any `Step` wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Step { source, .. } => source.root(),
            other => other,
        }
    }
}

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
