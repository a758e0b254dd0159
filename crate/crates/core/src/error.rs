use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector does not span a line")]
    ZeroVector,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("subspace is not contained in the sum-zero hyperplane")]
    NotInsideV,

    #[error("point does not lie in the sum-zero hyperplane")]
    NotInV,

    #[error("ground sets differ: {left} vs {right}")]
    GroundSetMismatch { left: usize, right: usize },

    #[error("ground set of size {n} exceeds the enumeration bound {bound}")]
    GroundSetTooLarge { n: usize, bound: usize },

    #[error("chain does not terminate: H{step} is not a hyperplane and no line was supplied")]
    IncompleteChain { step: usize },

    #[error("{unused} supplied line(s) left after the chain terminated")]
    SuperfluousLines { unused: usize },

    #[error("line {index} lies inside the current lattice element")]
    ZeroProjection { index: usize },

    #[error("coordinate is undefined for this lattice element")]
    UndefinedCoordinate,

    #[error("diagram is not reduced")]
    NotReduced,

    #[error("diagram has a vertex fiber of size {size} (or a second block of size 2)")]
    FiberTooLarge { size: usize },

    #[error("diagram uses {t} directions, more than the supported {max}")]
    TooManyDirections { t: usize, max: usize },

    #[error("orbit kernels admit no common adapted basis of the symmetry group")]
    IncompatibleOrbits,

    #[error("invalid model point: {0}")]
    InvalidModelPoint(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
