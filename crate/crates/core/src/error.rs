use thiserror::Error;

/// Errors produced by parsing, file handling and automaton construction.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("letter `{0}` is not in the alphabet")]
    UnknownLetter(String),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("malformed automaton: {0}")]
    Malformed(String),

    #[error("alphabet mismatch between operands")]
    AlphabetMismatch,

    #[error("position {pos} out of range for a model with {len} positions")]
    PositionOutOfRange { pos: usize, len: usize },

    #[error("letter `{0}` is not a variable set")]
    NotVariableSet(String),

    #[error("state limit of {0} exceeded")]
    StateLimit(usize),

    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        Error::Syntax {
            pos,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
