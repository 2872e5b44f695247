use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a word must contain at least one bit")]
    EmptyWord,

    #[error("invalid bit {0:?}; expected '0' or '1'")]
    InvalidBit(char),

    #[error("unsupported order n = {n}: {reason}")]
    UnsupportedOrder { n: usize, reason: &'static str },

    #[error("{op}: {word} is outside the domain ({reason})")]
    Domain {
        op: &'static str,
        word: String,
        reason: &'static str,
    },

    #[error("sequence of length {len} is shorter than the order {n}")]
    TooShort { len: usize, n: usize },

    #[error("input is not an orientable sequence of order {n}")]
    NotOrientable { n: usize },

    #[error("expected a {expected} sequence")]
    WrongMode { expected: &'static str },

    #[error("search budget must be positive")]
    InvalidBudget,

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, word: &[u8], reason: &'static str) -> Error {
    Error::Domain {
        op,
        word: crate::word::bits_to_string(word),
        reason,
    }
}
