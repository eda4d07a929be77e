use num_complex::Complex64;
use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("QR iteration did not converge after {iterations} iterations ({unresolved} eigenvalues unresolved)")]
    NoConvergence { iterations: usize, unresolved: usize },

    #[error("matrix is singular to working precision (pivot ratio {condition_indicator:.3e})")]
    Singular { condition_indicator: f64 },

    #[error("Schatten exponent must be >= 1 or infinite, got {0}")]
    InvalidExponent(f64),

    #[error("function vanishes on the contour (min |f| = {min_abs:.3e} at {at})")]
    ZeroOnContour { min_abs: f64, at: Complex64 },

    #[error("winding number did not settle to an integer: raw value {raw} after {nodes} nodes")]
    WindingNotInteger { raw: Complex64, nodes: usize },

    #[error("point {0} lies on the half-line [0, inf)")]
    OnHalfLine(Complex64),

    #[error("point {0} is outside the open unit disk")]
    OutsideDisk(Complex64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown ensemble family '{0}'")]
    UnknownFamily(String),

    #[error("zero search: {0}")]
    ZeroSearch(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
