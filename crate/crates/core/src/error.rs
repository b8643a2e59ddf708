use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("rows have different lengths")]
    RaggedRows,
    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("Jacobi identity fails on ({}, {}, {}): residual {residual}", .triple.0, .triple.1, .triple.2)]
    JacobiViolation {
        triple: (String, String, String),
        residual: String,
    },
    #[error("antisymmetry violated at ({0}, {1})")]
    AntisymmetryViolation(String, String),
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("expected {expected} labels, found {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("not a 2-cocycle: identity fails on ({0}, {1}, {2})")]
    NotACocycle(String, String, String),
    #[error("cochain is not antisymmetric")]
    NotAntisymmetric,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradingError {
    #[error("grading has {found} degrees for an algebra of dimension {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("Z/{0} is not a valid grading group")]
    BadModulus(i64),
    #[error("[{left}, {right}] has a component on {stray} outside degree {expected}")]
    GradingIncompatible {
        left: String,
        right: String,
        stray: String,
        expected: i64,
    },
    #[error("space is not spanned by homogeneous elements (degree {degree} projection escapes it)")]
    NotGradedSubspace { degree: i64 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("unknown algebra family {0:?}")]
    UnknownFamily(String),
    #[error("invalid grading: {0}")]
    InvalidGrading(String),
    #[error("linear map is not a derivation: fails on ({0}, {1})")]
    NotADerivation(String, String),
    #[error("window bound {0} is too small")]
    BadBound(usize),
    #[error("commutative algebra check failed: {0}")]
    BadCommutativeAlgebra(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Grading(#[from] GradingError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error("window too small: unknown {unknown} (degree {degree}) is not constrained by any exact instance")]
    WindowTooSmall { unknown: String, degree: i64 },
    #[error("degree bound {bound} exceeds twice the window bound {window}")]
    DegreeBoundTooLarge { bound: i64, window: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("resource limit exceeded after {pairs_reduced} S-pair reductions (basis size {basis_len}, largest polynomial {max_terms} terms)")]
    ResourceLimit {
        pairs_reduced: usize,
        basis_len: usize,
        max_terms: usize,
    },
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("variable count mismatch: expected {expected}, found {found}")]
    VariableMismatch { expected: usize, found: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CpaError {
    #[error(transparent)]
    ResourceLimit(#[from] PolyError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("solver output failed verification: {0}")]
    Unverified(String),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Scalar(#[from] LinalgError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Grading(#[from] GradingError),
}
