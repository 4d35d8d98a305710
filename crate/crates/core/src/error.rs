use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{0}")]
    Domain(String),
    #[error("unbound variable `{0}`")]
    UnboundVar(String),
    #[error("invalid formula: {0}")]
    InvalidFormula(String),
    #[error("language violation: {0}")]
    Language(String),
    #[error("witness error: {0}")]
    Witness(String),
    #[error("invalid instance: {0}")]
    Instance(String),
}

pub type Result<T> = std::result::Result<T, Error>;
