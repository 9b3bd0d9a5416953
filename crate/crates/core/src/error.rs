use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum QtkError {
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("evaluation error: {0}")]
    Evaluation(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unsupported representation: {0}")]
    UnsupportedRep(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("convention fault: {0}")]
    Convention(String),
    #[error("calibration failed: {0}")]
    Calibration(String),
}

pub type Result<T> = std::result::Result<T, QtkError>;
