use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("generator index must be at least 1")]
    ZeroGeneratorIndex,
    #[error("letter index {index} exceeds rank {rank}")]
    LetterOutOfRange { index: u32, rank: u32 },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: u32, right: u32 },
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("word must not be the identity")]
    IdentityWord,
    #[error("rank {0} is unsupported here (need at least 2)")]
    UnsupportedRank(u32),
    #[error("word is not cyclically reduced")]
    NotCyclicallyReduced,
    #[error("empty word has no root decomposition")]
    EmptyWord,
    #[error("position {position} out of range 1..={limit}")]
    PositionOutOfRange { position: usize, limit: usize },
    #[error("braid letter {letter} invalid for {strands} strands")]
    BadBraidLetter { letter: i32, strands: usize },
    #[error("braid has {strands} strands but factorization has length {len}")]
    StrandMismatch { strands: usize, len: usize },
    #[error("factorization lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("factorization elements live in incompatible groups")]
    IncompatibleElements,
    #[error("X must have exactly {expected} entries, got {got}")]
    XLengthMismatch { expected: usize, got: usize },
    #[error("X entry {0} is the identity")]
    TrivialXEntry(usize),
    #[error("relator tuple product is not the identity")]
    RelatorProductNotIdentity,
    #[error("index {index} out of range 1..={count}")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("homomorphism needs {expected} generator images, got {got}")]
    HomImageCount { expected: usize, got: usize },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Build a parse error with line/column computed from a byte offset.
pub(crate) fn parse_err(input: &str, offset: usize, message: impl Into<String>) -> Error {
    let offset = offset.min(input.len());
    let mut line = 1;
    let mut column = 1;
    for b in input[..offset].bytes() {
        if b == b'\n' {
            line += 1;
            column = 1;
        } else {
            column += 1;
        }
    }
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}
