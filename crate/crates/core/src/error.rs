use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid discriminant {d}: {reason}")]
    InvalidDiscriminant { d: i64, reason: &'static str },

    #[error("operands live in different fields (d = {left} and d = {right})")]
    FieldMismatch { left: i64, right: i64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("form is not positive definite")]
    NotPositiveDefinite,

    #[error("cone is not full-dimensional: generators have rank {rank}, expected {expected}")]
    NotFullDimensional { rank: usize, expected: usize },

    #[error("facet does not belong to this perfect form")]
    ForeignFacet,

    #[error("flip across a facet of class {class} left the enumerated set of classes")]
    IncompleteClassList { class: usize },

    #[error("boundary maps do not compose to zero (d_{degree} . d_{next} != 0)", next = degree + 1)]
    BoundarySquareNonzero { degree: usize },

    #[error("matrix shapes are incompatible: {0}")]
    Shape(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),

    #[error("coefficient system is not a functor: {0}")]
    NotFunctorial(String),

    #[error("lines do not decompose the ambient space")]
    NotADecomposition,

    #[error("expected an even number of lines, got {0}")]
    OddLineCount(usize),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("cache I/O failed: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON (de)serialization failed: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
