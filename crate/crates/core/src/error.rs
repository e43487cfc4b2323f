use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("square matrix required, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("determinant ±1 required (det = {det})")]
    NotUnimodular { det: BigInt },
    #[error("vectors do not span a saturated sublattice: {0}")]
    NotSaturated(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid handlebody matrix: {0}")]
    InvalidHandlebody(String),
    #[error("symmetric matrix required")]
    NotSymmetric,
    #[error("not in fixed-block form: {0}")]
    BlockForm(String),
    #[error("invalid twist generator: {0}")]
    InvalidGenerator(String),
    #[error("primitive integral covector required")]
    NotPrimitive,
    #[error("class lies on the boundary of a cone")]
    BoundaryClass,
    #[error("thickness {0} is not an integer")]
    NonIntegralThickness(BigRational),
    #[error("polytope needs at least one vertex")]
    EmptyPolytope,
    #[error("full-compatibility criterion failed: {0}")]
    CriterionFailed(String),
}

impl Error {
    /// Errors caused by well-formed input that the mathematics rejects, as
    /// opposed to malformed input or internal failures.
    pub fn is_rejected_input(&self) -> bool {
        !matches!(self, Error::Parse(_) | Error::CriterionFailed(_))
    }
}
