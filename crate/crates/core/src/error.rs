use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid bumpless pipe dream: {0}")]
    InvalidBpd(String),
    #[error("invalid polynomial: {0}")]
    Parse(String),
    #[error("catalog error{}: {msg}", tile.map(|t| format!(" at tile {t}")).unwrap_or_default())]
    Catalog { tile: Option<usize>, msg: String },
    #[error("invalid board: {0}")]
    Board(String),
    #[error("invalid rule: {0}")]
    Rule(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
