use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not Hermitian (max |M - M^†| = {0:e})")]
    NotHermitian(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid site selection: {0}")]
    InvalidSites(String),

    #[error("temperature must be positive, got {0}")]
    NonPositiveTemperature(f64),

    #[error("decoherence strength gamma must lie in [0, 1], got {0}")]
    GammaOutOfRange(f64),

    #[error("invalid X state: {0}")]
    InvalidXState(String),

    #[error("state is not of X form: {0}")]
    NotXForm(String),

    #[error("closed-form dynamics require zero field, got B = {0}")]
    NonzeroField(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}
