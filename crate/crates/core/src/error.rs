use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid slope: {0}")]
    InvalidSlope(String),
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
    #[error("invalid word description: {0}")]
    InvalidSpec(String),
    #[error("window out of range: {0}")]
    OutOfRange(String),
    #[error("({p}, {q}) are not coprime")]
    NotCoprime { p: u64, q: u64 },
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("algebra is not gentle: {0}")]
    NotGentle(String),
    #[error("not a string: {0}")]
    NotAString(String),
    #[error("not a band: {0}")]
    NotABand(String),
    #[error("malformed infinite string: {0}")]
    MalformedDkSpec(String),
    #[error("configuration not verified: {0}")]
    UnverifiedConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
