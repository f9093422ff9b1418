use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("half-space normal is the zero vector")]
    ZeroNormal,

    #[error("cone is not pointed (lineality space of dimension {0})")]
    NotPointed(usize),

    #[error("cone of dimension {dim} is not full-dimensional in R^{ambient}")]
    NotFullDimensional { dim: usize, ambient: usize },

    #[error("class shape mismatch: ({n}, {s}) vs ({other_n}, {other_s})")]
    ShapeMismatch {
        n: usize,
        s: usize,
        other_n: usize,
        other_s: usize,
    },

    #[error("index {index} outside 1..={s}")]
    IndexOutOfRange { index: usize, s: usize },

    #[error("index set must have {expected} elements, got {got}")]
    IndexSetSize { expected: usize, got: usize },

    #[error("invalid join I={indices:?}, t={t} on X^{n}_{s}: {reason}")]
    InvalidJoin {
        indices: Vec<usize>,
        t: usize,
        n: usize,
        s: usize,
        reason: &'static str,
    },

    #[error("parameters out of range: {0}")]
    OutOfRange(String),

    #[error("curve class is already linear (t = 0)")]
    AlreadyLinear,

    #[error("fan: {0}")]
    Fan(String),

    #[error("unknown ray {0}")]
    UnknownRay(String),

    #[error("malformed document: {0}")]
    Format(String),
}
