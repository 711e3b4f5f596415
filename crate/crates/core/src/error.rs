use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,
    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("letter index {index} out of range for alphabet of size {size}")]
    LetterOutOfRange { index: usize, size: usize },
    #[error("alphabet mismatch: expected {expected}, found {found}")]
    AlphabetMismatch { expected: String, found: String },
    #[error("the empty word has no primitive root")]
    EmptyWord,
    #[error("morphism erases letter `{0}`")]
    ErasingMorphism(String),
    #[error(
        "morphism must give exactly one image per source letter (got {got}, expected {expected})"
    )]
    ImageCount { expected: usize, got: usize },
    #[error("window length must be at least 1")]
    ZeroWindow,
    #[error("substitution is not primitive")]
    NotPrimitive,
    #[error("substitution does not grow (every image has length 1)")]
    NotGrowing,
    #[error("morphism is not an endomorphism (source and target alphabets differ)")]
    NotEndomorphism,
    #[error("morphism is not letter-to-letter")]
    NotLetterToLetter,
    #[error("forbidden words must be non-empty")]
    EmptyForbiddenWord,
    #[error("word is not freely reduced at position {0}")]
    NotReduced(usize),
    #[error("homomorphisms are not mutually inverse")]
    NotInverse,
    #[error("insufficient window: {0}")]
    InsufficientWindow(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
