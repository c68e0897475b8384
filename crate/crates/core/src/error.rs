//! Error type shared by all modules.

use thiserror::Error;

/// Errors produced by the library.
///
/// The split mirrors the CLI exit-code contract: invalid inputs are the
/// caller's fault, numerical failures are the solver's, and a theorem
/// violation means the computed decomposition does not satisfy the block
/// identities it must satisfy for a genuine input.
#[derive(Debug, Error)]
pub enum GammaError {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("numerical failure in {context}: residual {residual:.3e}")]
    NumericalFailure { context: String, residual: f64 },

    #[error(
        "degenerate linear combination: triangularization residual {residual:.3e} \
         after {attempts} attempts"
    )]
    DegenerateCombination { residual: f64, attempts: usize },

    #[error("decomposition identities violated (max residual {max_residual:.3e}): {detail}")]
    TheoremViolation {
        detail: String,
        max_residual: f64,
        /// Per-matrix residual table `(name, lower block, upper block)`.
        residuals: Vec<(String, f64, f64)>,
    },
}

pub type Result<T> = std::result::Result<T, GammaError>;

impl GammaError {
    /// True for failures of numerics rather than of inputs or mathematics.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            GammaError::NumericalFailure { .. } | GammaError::DegenerateCombination { .. }
        )
    }
}
