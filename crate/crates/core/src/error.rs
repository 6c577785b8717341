use thiserror::Error;

use crate::exactlin::LinAlgError;

/// Errors raised by the algebraic and geometric operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),

    #[error("Jacobi identity fails on ({}, {}, {}): defect {defect:?}", triple.0, triple.1, triple.2)]
    JacobiViolation {
        triple: (usize, usize, usize),
        defect: Vec<String>,
    },

    #[error("algebra is not solvable")]
    NotSolvable,

    #[error("algebra is not nilpotent")]
    NotNilpotent,

    #[error("operator {index} is not a derivation")]
    NotDerivation { index: usize },

    #[error("action operators are not closed under commutators")]
    ActionNotClosed,

    #[error("subspace is not closed under the bracket")]
    NotClosed,

    #[error("modification condition (2) failed: image is not of compact imaginary type")]
    ConditionTwoFailed,

    #[error("modification condition (3) failed: [phi(r), r] is not contained in r")]
    ConditionThreeFailed,

    #[error("inner product is not positive definite")]
    NotPositiveDefinite,

    #[error("Killing-orthogonal complement is not a linear complement")]
    DegenerateComplement,

    #[error("standard modification did not stabilize within two steps")]
    NoStabilization,

    #[error("declared nilradical rejected: {0}")]
    InvalidNilradical(String),

    #[error("pre-Einstein heuristic failed; affine solution set has dimension {affine_dim}")]
    TorusHeuristicFailed {
        affine_dim: usize,
        particular: Option<Vec<String>>,
    },

    #[error("metric is already Einstein")]
    AlreadyEinstein,

    #[error("pre-Einstein derivation does not commute with ad(a) on the nilradical")]
    CommutationFailed,

    #[error("no Einstein scale found for the extension")]
    NoEinsteinScale,

    #[error("soliton certificate is not an exact algebraic soliton")]
    InvalidCertificate,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal failure: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable code used in JSON reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::LinAlg(LinAlgError::IrrationalSpectrum(_)) => "IrrationalSpectrum",
            Error::LinAlg(LinAlgError::NonSquare { .. }) => "NonSquare",
            Error::LinAlg(LinAlgError::ZeroPolynomial) => "ZeroPolynomial",
            Error::LinAlg(LinAlgError::Internal(_)) => "Internal",
            Error::JacobiViolation { .. } => "JacobiViolation",
            Error::NotSolvable => "NotSolvable",
            Error::NotNilpotent => "NotNilpotent",
            Error::NotDerivation { .. } => "NotDerivation",
            Error::ActionNotClosed => "ActionNotClosed",
            Error::NotClosed => "NotClosed",
            Error::ConditionTwoFailed => "ConditionTwoFailed",
            Error::ConditionThreeFailed => "ConditionThreeFailed",
            Error::NotPositiveDefinite => "NotPositiveDefinite",
            Error::DegenerateComplement => "DegenerateComplement",
            Error::NoStabilization => "NoStabilization",
            Error::InvalidNilradical(_) => "InvalidNilradical",
            Error::TorusHeuristicFailed { .. } => "TorusHeuristicFailed",
            Error::AlreadyEinstein => "AlreadyEinstein",
            Error::CommutationFailed => "CommutationFailed",
            Error::NoEinsteinScale => "NoEinsteinScale",
            Error::InvalidCertificate => "InvalidCertificate",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::Parse(_) => "ParseError",
            Error::Internal(_) => "Internal",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
