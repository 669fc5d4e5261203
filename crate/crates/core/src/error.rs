use serde::Serialize;
use thiserror::Error;

/// A failed axiom together with the indices that witness the failure.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("{message}")]
pub struct Violation {
    pub axiom: String,
    pub message: String,
    pub witness: Vec<usize>,
}

impl Violation {
    pub fn new(axiom: &str, message: impl Into<String>, witness: Vec<usize>) -> Self {
        Violation {
            axiom: axiom.to_string(),
            message: message.into(),
            witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error(transparent)]
    Axiom(#[from] Violation),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub fn axiom(axiom: &str, message: impl Into<String>, witness: Vec<usize>) -> Self {
        Error::Axiom(Violation::new(axiom, message, witness))
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Error::Invalid(message.into())
    }

    pub fn dimension(message: impl Into<String>) -> Self {
        Error::Dimension(message.into())
    }

    /// The violation carried by an axiom failure, if any.
    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Error::Axiom(v) => Some(v),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
