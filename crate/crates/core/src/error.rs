use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
  #[error("invalid input: {0}")]
  Invalid(String),
  #[error("malformed table: {0}")]
  Malformed(String),
  #[error("simplicial identity {identity} fails at {witness}")]
  Identity { identity: String, witness: String },
  #[error("truncation mismatch: {0} vs {1}")]
  Truncation(usize, usize),
  #[error("not a Kan complex: {0}")]
  NotKan(String),
  #[error("enumeration bound exceeded: {0}")]
  BoundExceeded(String),
  #[error("precondition failed: {0}")]
  Precondition(String),
  #[error(transparent)]
  Json(#[from] serde_json::Error),
  #[error(transparent)]
  Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
