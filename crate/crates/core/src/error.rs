use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different polynomial rings")]
    RingMismatch,

    #[error("variable index {index} out of range for a ring with {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown variable '{name}' at offset {offset}")]
    UnknownVariable { name: String, offset: usize },

    #[error("input is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("characteristic {characteristic} is too small for degree {degree}")]
    Characteristic { characteristic: u64, degree: u32 },

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("resolution is not minimal")]
    NotMinimal,

    #[error("empty Betti table")]
    EmptyTable,

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("genericity failure: {0}")]
    Genericity(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
