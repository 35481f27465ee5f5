use thiserror::Error;

/// Errors for contract violations and invalid inputs across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty word")]
    EmptyWord,
    #[error("invalid letter {0:?}; words are over the alphabet {{a, b}}")]
    InvalidLetter(char),
    #[error("rotation index {index} out of range 1..={len}")]
    RotationIndex { index: usize, len: usize },
    #[error("factor length {factor_len} out of range 1..={word_len}")]
    FactorLength { factor_len: usize, word_len: usize },
    #[error("max_len {max_len} exceeds word length {word_len}")]
    MaxLenRange { max_len: usize, word_len: usize },
    #[error("{len}-letter word exceeds the {limit}-row matrix limit; compute the transform directly instead")]
    MatrixLimit { len: usize, limit: usize },
    #[error("invalid run-length token {0:?}")]
    InvalidRle(String),
    #[error("not the transform of any word: {0}")]
    NotABwtImage(String),
    #[error("empty directive sequence")]
    EmptyDirective,
    #[error("directive entries after the first must be positive")]
    NonPositiveDirectiveEntry,
    #[error("invalid directive entry {0:?}")]
    InvalidDirectiveEntry(String),
    #[error(
        "plus-words need a directive starting with d0 >= 1; exchange the letters a<->b and retry"
    )]
    LeadingZeroDirective,
    #[error("order {order} too small; need at least {min}")]
    OrderTooSmall { order: usize, min: usize },
    #[error("run-count prediction for reversed plus-words covers even orders only; order {order} is odd")]
    OddOrderUnsupported { order: usize },
    #[error("k = {k} too small; plus-word constructions need k >= 2")]
    KTooSmall { k: usize },
    #[error("index {i} out of range 0..={max}")]
    IndexOutOfRange { i: usize, max: usize },
    #[error("generated word would exceed {limit} letters")]
    GenerationLimit { limit: usize },
    #[error("length {n} too small; this family starts at length {min}")]
    LengthTooSmall { n: usize, min: usize },
    #[error("length {n} exceeds the search cap {cap}; pass force to override")]
    SearchCap { n: usize, cap: usize },
    #[error("exhaustive search supports lengths up to {max}; {n} requested")]
    SearchWidth { n: usize, max: usize },
    #[error("alphabet size {0} unsupported; use 2 or 3")]
    AlphabetSize(usize),
    #[error("empty range: from {from} > to {to}")]
    EmptyRange { from: usize, to: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
