use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operator is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("parse error at row {row}, column {column}: {message} (token `{token}`)")]
    Parse {
        row: usize,
        column: usize,
        token: String,
        message: String,
    },

    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("malformed file: {0}")]
    Format(String),

    #[error("no built-in SIC fiducial for dimension {0}; use load_povm or fiducial_search")]
    UnsupportedDimension(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("fiducial search did not converge (best residual {best_residual:.3e})")]
    Convergence { best_residual: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
