use thiserror::Error;

pub type Result<T> = std::result::Result<T, WcsError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WcsError {
    #[error("evaluation error at x = {location:?}: {message}")]
    Evaluation { location: Vec<f64>, message: String },

    #[error("metric is singular or not positive-definite at x = {location:?}")]
    SingularMetric { location: Vec<f64> },

    #[error("point x = {location:?} lies outside the open chart domain")]
    OutsideDomain { location: Vec<f64> },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("curvature symmetry check failed: {what} defect {defect:e} exceeds {tol:e}")]
    SymmetryViolation { what: &'static str, defect: f64, tol: f64 },

    #[error("complex structure is not orthogonal with J^2 = -I (defect {0:e})")]
    IncompatibleComplexStructure(f64),

    #[error("p = {p} and q = {q} are not coprime")]
    NotCoprime { p: i64, q: i64 },

    #[error("need 0 < q < p, got p = {p}, q = {q}")]
    BadOrdering { p: i64, q: i64 },

    #[error("4p^2 - 3q^2 = {0} is not a perfect square")]
    NotPerfectSquare(i64),

    #[error("trace constraint violated: sum of eigenvalues is {0:e}")]
    TraceConstraint(f64),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unknown chart '{0}'")]
    UnknownChart(String),
}
