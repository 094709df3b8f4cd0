use crate::complex::Simplex;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("facet list contains an empty facet")]
    EmptyFacet,

    #[error("face {0} is not in the complex")]
    FaceNotInComplex(Simplex),

    #[error("face {face} lies in {count} maximal faces, expected exactly one")]
    NotFree { face: Simplex, count: usize },

    #[error("operation is undefined on the empty complex")]
    EmptyComplex,

    #[error("{found} vertices exceed the supported maximum of {max}")]
    TooManyVertices { found: usize, max: usize },

    #[error("set {0} of the family is empty")]
    EmptySet(usize),

    #[error("subfamily {0:?} has empty intersection")]
    NotIntersecting(Vec<usize>),

    #[error("subfamily {0:?} is not a minimal exclusion family")]
    NotExclusionFamily(Vec<usize>),

    #[error("family index {0} out of range")]
    IndexOutOfRange(usize),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point set is affinely independent")]
    AffinelyIndependent,

    #[error("point is not in the convex hull of A")]
    NotInHullA,

    #[error("point is not in the convex hull of B")]
    NotInHullB,

    #[error("point lies in the convex hull of the common points of A and B")]
    InCommonHull,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("representation is invalid: {0}")]
    InvalidRepresentation(String),

    #[error("embedding check failed for faces {0} and {1}")]
    EmbeddingViolation(Simplex, Simplex),

    #[error("generated instance failed its self-check: {0}")]
    SelfCheck(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
