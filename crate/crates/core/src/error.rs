use thiserror::Error;

/// Errors shared across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Series too short for the requested operation.
    #[error("series too short: need at least {need}, got {got}")]
    TooShort { need: usize, got: usize },

    /// Zero-variance input: every estimator needs some fluctuation.
    #[error("degenerate series: zero variance")]
    DegenerateSeries,

    /// The objective returned NaN or infinity during minimization.
    #[error("objective not finite at x = {x}")]
    ObjectiveNotFinite { x: f64 },

    /// Bounded minimization did not converge; carries the best point found.
    #[error("minimization did not converge in {max_iter} iterations (best x = {best_x})")]
    NoConvergence { max_iter: usize, best_x: f64 },

    /// Durbin-Levinson prediction variance became non-positive.
    #[error("prediction variance non-positive at step {step} (H = {hurst})")]
    VarianceBreakdown { step: usize, hurst: f64 },

    /// Circulant embedding produced a significantly negative eigenvalue.
    #[error("embedding not nonnegative-definite: eigenvalue {eigenvalue} at index {index}")]
    EmbeddingNotNonnegative { index: usize, eigenvalue: f64 },

    /// A series had the wrong kind (increments vs path) for the operation.
    #[error("expected {expected} series, got {got}")]
    WrongKind {
        expected: &'static str,
        got: &'static str,
    },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
