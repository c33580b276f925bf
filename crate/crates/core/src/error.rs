use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain too small: {0}")]
    DomainTooSmall(String),

    #[error("duplicate interpolation nodes")]
    DuplicateNodes,

    #[error("puncturing coordinate {0} collapses distinct words")]
    PunctureCollision(usize),

    #[error("shortening at coordinate {coordinate} with symbol {symbol} leaves no words")]
    EmptyShorten { coordinate: usize, symbol: u8 },

    #[error("not a feasible quasicode: {0}")]
    InfeasibleQuasicode(String),

    #[error("search scale cap exceeded: q={q}, n={n} (supported: q=2 with n <= 5, or q <= 3 with n <= 3)")]
    ScaleCap { q: u32, n: usize },

    #[error("unsupported construction: {0}")]
    Unsupported(String),

    #[error("criterion not applicable: {0}")]
    NotApplicable(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
