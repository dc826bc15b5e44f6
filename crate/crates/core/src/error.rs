use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("every deletable edge has zero pruning mass")]
    AllMassZero,

    #[error("mean degree is zero, coefficient of variation is undefined")]
    ZeroMeanDegree,

    #[error("graph has zero total weight")]
    ZeroTotalWeight,

    #[error("dominant eigenvalue magnitude {0:e} is too small to rescale")]
    ZeroSpectrum(f64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("subset of state columns is empty")]
    EmptySubset,

    #[error("vector is constant, correlation is undefined")]
    ConstantVector,

    #[error("input is empty")]
    EmptyInput,

    #[error("series of length {available} cannot supply {requested} pairs")]
    InsufficientLength { requested: usize, available: usize },

    #[error("NARMA10 series diverged on {0} consecutive draws")]
    RegenerationExhausted(usize),

    #[error("index {index} out of range for {len} items")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("{path}: bad IDX magic {found:#010x}, expected {expected:#010x}")]
    BadMagic {
        path: PathBuf,
        found: u32,
        expected: u32,
    },

    #[error("{0}: file is truncated")]
    TruncatedFile(PathBuf),

    #[error("image count {images} does not match label count {labels}")]
    CountMismatch { images: usize, labels: usize },

    #[error("non-finite score in {0}")]
    NonFiniteScore(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
