use thiserror::Error;

/// Errors shared by all modules of the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid configuration: {0}")]
    Config(String),

    #[error("grid mismatch: {0}")]
    ShapeMismatch(String),

    #[error("scaling requires samples outside the input support ({0})")]
    Range(String),

    #[error("insufficient coverage: {0}")]
    Coverage(String),

    #[error("series did not converge: {0}")]
    Divergence(String),

    #[error("ill-conditioned ratio: {0}")]
    IllConditioned(String),

    #[error("singular point: {0}")]
    Singular(String),

    #[error("matrix is not symmetric (max asymmetry {0:.3e})")]
    Asymmetric(f64),

    #[error("linear algebra backend failure: {0}")]
    Linalg(String),

    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed input file: {0}")]
    Parse(String),
}

impl From<ndarray_linalg::error::LinalgError> for Error {
    fn from(e: ndarray_linalg::error::LinalgError) -> Self {
        Error::Linalg(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
