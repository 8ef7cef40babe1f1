use thiserror::Error;

use crate::linalg::Scalar;

pub type Result<T> = std::result::Result<T, Error>;

/// Which of the three bracket inclusions of a Cartan decomposition failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Inclusion {
    KK,
    PP,
    KP,
}

impl std::fmt::Display for Inclusion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Inclusion::KK => "[k,k]⊆k",
            Inclusion::PP => "[p,p]⊆k",
            Inclusion::KP => "[k,p]⊆p",
        })
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("Jacobi identity fails on basis triple ({i}, {j}, {k})")]
    JacobiViolation { i: usize, j: usize, k: usize, residual: Vec<Scalar> },

    #[error("bracket table is not antisymmetric at ({i}, {j})")]
    NotAntisymmetric { i: usize, j: usize },

    #[error("invalid structure constants: {0}")]
    InvalidStructure(String),

    #[error("coefficient module is not a representation: fails on basis pair ({i}, {j})")]
    NotARepresentation { i: usize, j: usize },

    #[error("subspaces are not complementary: {0}")]
    NotComplementary(String),

    #[error("bracket inclusion {inclusion} fails on pair ({left}, {right})")]
    BracketViolation { inclusion: Inclusion, left: usize, right: usize },

    #[error("basis does not span a subalgebra: bracket of {left} and {right} leaves it")]
    NotASubalgebra { left: usize, right: usize },

    #[error("cochain of degree zero has no insertion")]
    DegreeZero,

    #[error("cochain is not horizontal for the subalgebra")]
    NotHorizontal,

    #[error("cup products need trivial one-dimensional coefficients")]
    NonTrivialCoefficients,

    #[error("algebra is not semisimple")]
    NotSemisimple,

    #[error("invariant polynomials live on different algebras")]
    AlgebraMismatch,

    #[error("inclusion is not a Lie algebra morphism on basis pair ({i}, {j})")]
    NotAMorphism { i: usize, j: usize },

    #[error("unknown algebra {0:?}")]
    UnknownAlgebra(String),

    #[error("unknown group {0:?}")]
    UnknownGroup(String),

    #[error("exterior space of dimension {required} exceeds the size guard {limit}")]
    SizeLimit { required: u128, limit: u128 },

    #[error("n.c.z. fails in degree {0}")]
    NczFailed(usize),

    #[error("the two n.c.z. tests disagree (kappa: {kappa}, odd generation: {odd})")]
    NczPathsDisagree { kappa: bool, odd: bool },

    #[error("value has a nonzero imaginary part: {0}")]
    NotReal(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Short machine-readable name of the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::JacobiViolation { .. } => "JacobiViolation",
            Error::NotAntisymmetric { .. } => "NotAntisymmetric",
            Error::InvalidStructure(_) => "InvalidStructure",
            Error::NotARepresentation { .. } => "NotARepresentation",
            Error::NotComplementary(_) => "NotComplementary",
            Error::BracketViolation { .. } => "BracketViolation",
            Error::NotASubalgebra { .. } => "NotASubalgebra",
            Error::DegreeZero => "DegreeZero",
            Error::NotHorizontal => "NotHorizontal",
            Error::NonTrivialCoefficients => "NonTrivialCoefficients",
            Error::NotSemisimple => "NotSemisimple",
            Error::AlgebraMismatch => "AlgebraMismatch",
            Error::NotAMorphism { .. } => "NotAMorphism",
            Error::UnknownAlgebra(_) => "UnknownAlgebra",
            Error::UnknownGroup(_) => "UnknownGroup",
            Error::SizeLimit { .. } => "SizeLimit",
            Error::NczFailed(_) => "NczFailed",
            Error::NczPathsDisagree { .. } => "NczPathsDisagree",
            Error::NotReal(_) => "NotReal",
            Error::Parse(_) => "Parse",
            Error::Internal(_) => "Internal",
        }
    }
}
