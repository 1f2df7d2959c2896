use thiserror::Error;

/// Errors raised while building or checking morphisms.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("space {0} cannot be enumerated")]
    NotEnumerable(String),

    #[error("space of size {size} exceeds the exhaustive bound {bound}")]
    SizeExceeded { size: u128, bound: u128 },

    #[error("domain mismatch: expected {expected}, found {found}")]
    DomainMismatch { expected: String, found: String },

    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    #[error("model restriction: {0}")]
    ModelRestriction(String),

    #[error("space {0} has no negation")]
    NoNegation(String),

    #[error("unsupported primitive `{0}`")]
    UnsupportedPrimitive(String),

    #[error("map `{subject}` is not additive at {point}")]
    NotAdditive { subject: String, point: String },

    #[error("map `{subject}` is not causal: inputs {first} and {second} agree below index {prefix}")]
    NotCausal {
        subject: String,
        first: String,
        second: String,
        prefix: usize,
    },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("space {0} is not finite")]
    NotFinite(String),

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("type error at {path}: {message}")]
    Type { path: String, message: String },

    #[error("unknown primitive `{0}`")]
    UnknownPrimitive(String),

    #[error("invalid value: {0}")]
    InvalidValue(String),

    #[error("kleisli composite disagrees with its definition at {point}")]
    OracleMismatch { point: String },
}

pub type Result<T> = std::result::Result<T, Error>;
