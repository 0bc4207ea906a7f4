use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("letter '{0}' is not in the alphabet")]
    ForeignLetter(char),
    #[error("operation requires nonempty words")]
    EmptyWord,
    #[error("the empty word is not allowed in a code")]
    EpsilonInCode,
    #[error("the language is empty")]
    EmptyLanguage,
    #[error("operands are over different alphabets")]
    AlphabetMismatch,
    #[error("automaton exceeds the state cap of {cap} states")]
    StateCap { cap: usize },
    #[error("{what} did not converge within {cap} iterations")]
    IterationCap { what: &'static str, cap: usize },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("regex syntax error at offset {offset}: {message}")]
    Regex { offset: usize, message: String },
    #[error("the set is not a code")]
    NotACode,
    #[error("the set is not invariant under the given map")]
    NotThetaInvariant,
    #[error("the set is not thin")]
    NotThin,
    #[error("the set is not a prefix code")]
    NotPrefix,
    #[error("operation requires a morphism, got an antimorphism")]
    NotMorphism,
    #[error("already complete")]
    AlreadyComplete,
    #[error("completion requires an alphabet with at least two letters")]
    UnaryAlphabet,
    #[error("witness {0} is a factor of X*")]
    InvalidWitness(String),
    #[error("witness must have distinct first and last letters and length at least 2")]
    EqualEndLetters,
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("invalid distribution: {0}")]
    BadDistribution(String),
    #[error("hull generator {word} exceeds the length bound {bound}")]
    HullBound { word: String, bound: usize },
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
