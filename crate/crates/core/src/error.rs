use thiserror::Error;

/// Errors raised by the exact algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("irrational spectrum unsupported: factor {factor} has no rational root")]
    SplitFailure { factor: String },

    #[error("matrix is not semisimple (minimal polynomial is not square-free)")]
    NotSemisimple,

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("subspace is not closed under the bracket: {0}")]
    NotClosed(String),

    #[error("Lie algebra is not nilpotent (lower central series stabilizes at dimension {stable_dim})")]
    NotNilpotentAlgebra { stable_dim: usize },

    #[error("basis elements are linearly dependent")]
    DependentBasis,

    #[error("parameter outside the construction's domain: {0}")]
    ParamDomain(String),
}

impl Error {
    /// Stable machine-readable name used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::InvalidMatrix(_) => "InvalidMatrix",
            Error::ParseRational(_) => "ParseRational",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::SplitFailure { .. } => "SplitFailure",
            Error::NotSemisimple => "NotSemisimple",
            Error::NotNilpotent => "NotNilpotent",
            Error::NotClosed(_) => "NotClosed",
            Error::NotNilpotentAlgebra { .. } => "NotNilpotentAlgebra",
            Error::DependentBasis => "DependentBasis",
            Error::ParamDomain(_) => "ParamDomain",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
