use std::fmt;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Why a subspace failed the lagrangian test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LagrangianDefect {
    /// Some pair of basis vectors pairs nontrivially.
    NotIsotropic { first: usize, second: usize },
    /// Isotropic but of the wrong dimension.
    WrongDimension { expected: usize, found: usize },
}

impl fmt::Display for LagrangianDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LagrangianDefect::NotIsotropic { first, second } => write!(
                f,
                "not isotropic: basis vectors {first} and {second} pair nontrivially"
            ),
            LagrangianDefect::WrongDimension { expected, found } => {
                write!(f, "isotropic but has dimension {found}, expected {expected}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("objects live over different fields")]
    FieldMismatch,
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid symplectic form: {0}")]
    InvalidForm(String),
    #[error("subspace is not contained in the enclosing subspace")]
    NotContained,
    #[error("not lagrangian: {0}")]
    NotLagrangian(LagrangianDefect),
    #[error("subspace is not coisotropic")]
    NotCoisotropic,
    #[error("matrix does not preserve the symplectic form")]
    NotSymplectic,
    #[error("vectors are linearly dependent")]
    NotIndependent,
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("illegal rewrite: {0}")]
    IllegalRewrite(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),
}

impl Error {
    /// True for errors that report unsupported inputs rather than a
    /// violated mathematical precondition.
    pub fn is_unsupported(&self) -> bool {
        matches!(self, Error::Unsupported(_) | Error::BoundExceeded(_))
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
