use thiserror::Error;

/// Errors raised by complex construction, operator assembly and bound evaluation.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("face {0} is not in the complex")]
    FaceNotInComplex(String),
    #[error("face {0} is not maximal; deleting it would break downward closure")]
    NotMaximal(String),
    #[error("vertex {0} lies in the face")]
    VertexInFace(usize),
    #[error("faces {0} and {1} do not share all but one vertex")]
    NotAdjacent(String, String),
    #[error("position {0} is out of range for a face of size {1}")]
    PositionOutOfRange(usize, usize),
    #[error("dimension {k} out of range {lo}..={hi}")]
    DimensionOutOfRange { k: isize, lo: isize, hi: isize },
    #[error("vertex weight for `{0}` must be positive")]
    NonPositiveWeight(String),
    #[error("missing weight for vertex `{0}`")]
    MissingWeight(String),
    #[error("cannot parse rational `{0}`")]
    BadRational(String),
    #[error("operator fails the weighted symmetry check W M = M^T W")]
    NotSymmetrizable,
    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),
    #[error("Jacobi iteration did not converge within {0} sweeps")]
    NoConvergence(usize),
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("subset-sum enumeration needs {0} sums, above the guard of 2e6")]
    SumSetTooLarge(u128),
    #[error("construction yields an empty generator set: {0}")]
    EmptyGenerators(String),
    #[error("the void complex has no faces")]
    VoidComplex,
    #[error("vertex sets overlap on `{0}`")]
    LabelCollision(String),
    #[error("complex is not a subcomplex: {0}")]
    NotSubcomplex(String),
    #[error("bound inapplicable: {0}")]
    Inapplicable(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
