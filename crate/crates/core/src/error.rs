use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("signature mismatch between operands")]
    SignatureMismatch,

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("generator index {index} out of range for {generators} generators")]
    IndexOutOfRange { index: usize, generators: usize },

    #[error("operation requires a non-zero Planck parameter")]
    ZeroPlanck,

    #[error("channel with hbar = 0 is not admissible here; use pmech_bracket")]
    ZeroChannel,

    #[error("grid too small: axis {axis} has {len} points, need at least {min}")]
    GridTooSmall { axis: usize, len: usize, min: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("truncation: {what} reached {value}, cap is {cap}")]
    Truncation { what: &'static str, value: usize, cap: usize },

    #[error("unstable configuration: {0}")]
    Unstable(String),

    #[error("degenerate metric direction {0}")]
    DegenerateMetric(usize),

    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
