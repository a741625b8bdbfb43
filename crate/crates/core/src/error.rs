use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("rank {k} out of range for dimension {n}")]
    BadRank { k: usize, n: usize },

    #[error("point is not in the polytope")]
    NotInPolytope,
    #[error("polytope too large: {0}")]
    TooLarge(String),
    #[error("facial dimension is undefined for a singleton")]
    Singleton,
    #[error("intersection with the affine subspace is empty")]
    EmptyIntersection,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("weight vector is not sorted non-increasing")]
    Unsorted,
    #[error("target vector is not majorized by the source vector")]
    NotMajorized,
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("degenerate pinch: {0}")]
    DegeneratePinch(String),
    #[error("matrix is not in Q_k: {0}")]
    NotInQk(String),
    #[error("matrix is not in the interval 0 <= a <= 1: {0}")]
    NotInK(String),
    #[error("missing attainment witness at angle index {0}")]
    MissingWitness(usize),
    #[error("non-real weights: {0}")]
    NonRealWeights(String),

    #[error("too many atoms for enumeration: {atoms} (limit {limit})")]
    TooManyAtoms { atoms: usize, limit: usize },
    #[error("need at least two points, got {0}")]
    TooFewPoints(usize),
    #[error("constraint system is infeasible")]
    Infeasible,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::InvalidInput(e.to_string())
    }
}
