use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("{method} did not converge after {iterations} iterations")]
    NonConvergence {
        method: &'static str,
        iterations: usize,
    },

    #[error("degenerate spectrum: lambda_min = {lambda_min}, lambda_max = {lambda_max}")]
    DegenerateSpectrum { lambda_min: f64, lambda_max: f64 },

    #[error("shifted matrix is numerically zero (all eigenvalues equal the shift)")]
    DegenerateShift,

    #[error("matrix is not positive definite (smallest eigenvalue {0})")]
    NotPositiveDefinite(f64),

    #[error("matrix is not symmetric: |a[{row}][{col}] - a[{col}][{row}]| = {gap}")]
    NotSymmetric { row: usize, col: usize, gap: f64 },

    #[error("linear system is numerically singular")]
    SingularSystem,

    #[error("step schedule is empty")]
    ScheduleEmpty,

    #[error("trace has no recorded iterates")]
    IteratesNotRecorded,

    #[error("exhaustive search over {len}! permutations exceeds the cap of {cap}")]
    SizeLimitExceeded { len: usize, cap: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
