use thiserror::Error;

use crate::vector::ExponentVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("zero generator")]
    ZeroGenerator,

    #[error("negative coordinate in {0}")]
    NegativeCoordinate(ExponentVector),

    #[error("generators have gcd {0}, expected 1")]
    GcdNotOne(u64),

    #[error("{0} is not an element of the semigroup")]
    NotInSemigroup(String),

    #[error("cone is not pointed (it contains a line)")]
    NotPointed,

    #[error("bound exceeded: {what} (cap {cap})")]
    BoundExceeded { what: String, cap: u64 },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("conductor result is not certified; refusing to use it")]
    Uncertified,

    #[error("the conductor is the unit ideal (ring is normal)")]
    UnitConductor,

    #[error("ideals live in different rings")]
    AmbientMismatch,

    #[error("not a system of parameters: {0}")]
    NotSystemOfParameters(String),

    #[error("multiplication check failed: {j} + {g} = {product} is not in the semigroup")]
    MultiplicationFailed {
        j: ExponentVector,
        g: ExponentVector,
        product: ExponentVector,
    },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn bound(what: impl Into<String>, cap: u64) -> Self {
        Error::BoundExceeded {
            what: what.into(),
            cap,
        }
    }

    /// True for guard failures (caps reached) as opposed to invalid input.
    pub fn is_bound_exceeded(&self) -> bool {
        matches!(self, Error::BoundExceeded { .. } | Error::Uncertified)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(expected: usize, v: &ExponentVector) -> Result<()> {
    if v.dim() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: v.dim(),
        });
    }
    Ok(())
}
