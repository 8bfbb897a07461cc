use thiserror::Error;

/// Errors raised by the entanglement-geometry routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state has no nonzero coefficient")]
    ZeroState,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("wrong shape: {0}")]
    WrongShape(String),

    #[error("input too large: {0}")]
    TooLarge(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("bad loop word: unknown letter {0:?}")]
    BadWord(char),

    #[error("commutator is not central")]
    NotCentral,

    #[error("operator lift is singular")]
    Singular,

    #[error("nerve violation at {tuple:?}: {reason}")]
    BadNerve { tuple: Vec<usize>, reason: String },

    #[error("triple {0:?} has a non-scalar lift product")]
    NotPGLCocycle([usize; 3]),

    #[error("triple {triple:?} scalar {re}+{im}i is not a root of unity of the requested order")]
    NotRootOfUnity { triple: [usize; 3], re: f64, im: f64 },

    #[error("cochain fails the 2-cocycle identity")]
    NotCocycle,

    #[error("expected {expected} entries, got {got}")]
    WrongLength { expected: usize, got: usize },

    #[error("expected spectrum of size {expected}, got {got}")]
    WrongSize { expected: usize, got: usize },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
