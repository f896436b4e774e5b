use alloc::string::String;

use crate::tensor::IndexKind;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("invalid bundle: {0}")]
    InvalidBundle(String),

    #[error("arity mismatch: expected {expected} slots, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("index kind mismatch: expected {expected:?}, found {found:?}")]
    KindMismatch { expected: IndexKind, found: IndexKind },

    #[error("signature mismatch: {0}")]
    Signature(String),

    #[error("out of domain: {0}")]
    Domain(String),

    #[error("contract violation: {0}")]
    Contract(String),

    /// An internal identity that must hold did not; always a bug in the engine.
    #[error("engine defect: {0}")]
    EngineDefect(String),
}
