use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field spec mismatch: GF({left}) vs GF({right})")]
    SpecMismatch { left: u64, right: u64 },

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("generator matrix is rank deficient: row {row} depends on earlier rows")]
    RankDeficient { row: usize },

    #[error("invalid code parameters: {0}")]
    Parameter(String),

    #[error("all-ones vector already lies in the code")]
    AlreadyAugmented,

    #[error("dual-distance threshold {0} unsupported (must be in 1..=5)")]
    UnsupportedThreshold(usize),

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("index {index} out of range for {size} codewords")]
    IndexOutOfRange { index: u64, size: u64 },

    #[error("cannot sample {requested} distinct codewords from a code with {available}")]
    Capacity { requested: usize, available: u64 },

    #[error("matrix is not Hermitian at ({row}, {col})")]
    NotHermitian { row: usize, col: usize },

    #[error("Jacobi iteration did not converge, off-diagonal norm {residual:e}")]
    NoConvergence { residual: f64 },

    #[error("singular matrix")]
    Singular,

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("code {code} fails the dual-distance certificate (d^perp < {threshold})")]
    Uncertified { code: String, threshold: usize },

    #[error("invalid config: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
