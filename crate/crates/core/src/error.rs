use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid letter {0:?}: words use ASCII letters a-h")]
    InvalidLetter(char),

    #[error("letter index {0} is outside the 8-symbol range")]
    InvalidIndex(u8),

    #[error("alphabet size {0} is outside 1..=8")]
    AlphabetSize(usize),

    #[error("pattern must be non-empty")]
    EmptyPattern,

    #[error("the empty word has no least period")]
    EmptyWord,

    #[error("morphism image of {0:?} is empty")]
    EmptyImage(char),

    #[error("morphism is not prolongable at {0:?}")]
    NotProlongable(char),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("enumerating {alphabet}^{length} words exceeds the guard of {guard} (needs {required})")]
    GuardExceeded {
        alphabet: usize,
        length: usize,
        guard: u64,
        required: u128,
    },

    #[error("family template {0:?} has an empty repeated block")]
    EmptyBlock(String),

    #[error("unknown generator {0:?}")]
    UnknownPreset(String),

    #[error("unknown claim {0:?}")]
    UnknownClaim(String),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}
