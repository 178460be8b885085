use thiserror::Error;

pub type Result<T> = std::result::Result<T, LabError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LabError {
    #[error("Fock dimension {0} is too small (need at least 2)")]
    DimTooSmall(usize),

    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("{name} = {value} is out of range: {reason}")]
    Domain {
        name: &'static str,
        value: f64,
        reason: String,
    },

    #[error("invalid {name}: {reason}")]
    Invalid { name: &'static str, reason: String },

    #[error("truncation guard violated: {0}")]
    TruncationGuard(String),

    #[error("pole guard: {0}")]
    PoleGuard(String),

    #[error("coefficient tail not converged: mass {tail_mass:e} beyond dimension {dim}")]
    TailNotConverged { tail_mass: f64, dim: usize },

    #[error("numerical non-convergence: {0}")]
    NonConvergence(String),

    #[error("closed form and conjugation disagree: residual {residual:e} > {tolerance:e}")]
    Agreement { residual: f64, tolerance: f64 },
}

impl LabError {
    pub(crate) fn domain(name: &'static str, value: f64, reason: impl Into<String>) -> Self {
        LabError::Domain {
            name,
            value,
            reason: reason.into(),
        }
    }

    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        LabError::Invalid {
            name,
            reason: reason.into(),
        }
    }

    /// True for failures caused by the numerics rather than the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            LabError::TailNotConverged { .. }
                | LabError::NonConvergence(_)
                | LabError::Agreement { .. }
        )
    }
}
