use thiserror::Error;

use crate::text::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("term {monomial} lies outside the basis span")]
    OutOfBasis { monomial: String },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degenerate polygon: {0}")]
    DegeneratePolygon(String),

    #[error("invalid quadric: {0}")]
    InvalidQuadric(String),

    #[error("point {point} is not a zero of any factor")]
    HintNotAZero { point: String },

    #[error("multiplicity at the origin is {found}, expected 2")]
    WrongMultiplicity { found: String },

    #[error("graded matrix of the initial part is singular at degree {degree}; kernel contains {kernel}")]
    SingularGradedMatrix { degree: u32, kernel: String },

    #[error("decomposition infeasible below degree bound {bound}")]
    DecompositionInfeasible { bound: u32 },

    #[error("invalid harmonic-divisor witness: {0}")]
    InvalidWitness(String),

    #[error("invalid nonnegativity certificate: {0}")]
    InvalidCertificate(String),

    /// An exact re-check of a computed result failed. Always a bug.
    #[error("internal verification failed: {0}")]
    VerificationFailed(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}
