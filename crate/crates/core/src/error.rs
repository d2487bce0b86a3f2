use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operator is not Hermitian (max deviation {deviation:e})")]
    NonHermitian { deviation: f64 },

    #[error("expectation value has imaginary residue {residue:e}")]
    ImaginaryResidue { residue: f64 },

    #[error("unsupported strategy dimension n = {0}; only n = 2 is defined")]
    UnsupportedDimension(usize),

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("game is not symmetric: max |B - SAS| = {deviation:e}")]
    NotSymmetricGame { deviation: f64 },

    #[error("game is not T-symmetric: max |B - TAT| = {deviation:e}")]
    NotTSymmetricGame { deviation: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
