use thiserror::Error;

use crate::ring::Side;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring of size {size} exceeds the {mode} cap of {cap} elements")]
    SizeCapExceeded {
        size: usize,
        cap: usize,
        mode: &'static str,
    },

    #[error("invalid ring table: {reason}")]
    InvalidTable { reason: String },

    #[error("invalid ring spec: {0}")]
    InvalidSpec(String),

    #[error("cannot combine a {0:?} ideal with a {1:?} ideal")]
    SideMismatch(Side, Side),

    #[error("ideals belong to rings of different sizes ({0} vs {1})")]
    RingMismatch(usize, usize),

    #[error("quotient requires a two-sided ideal, got a {0:?} ideal")]
    NotTwoSided(Side),

    #[error("({0}, {1}) is not a right coprime pair")]
    NotCoprime(usize, usize),

    #[error("chain is not descending at position {index}")]
    NotDescending { index: usize },

    #[error("ring is not von Neumann regular (element {witness} has no inner inverse)")]
    NotVonNeumannRegular { witness: usize },

    #[error("ideal enumeration exceeded the cap of {cap} ideals")]
    IdealEnumerationCapExceeded { cap: usize },

    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),

    #[error("element {index} out of range for a ring of size {size}")]
    ElementOutOfRange { index: usize, size: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// True for the cap errors, which the command line reports with their own exit code.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::SizeCapExceeded { .. } | Error::IdealEnumerationCapExceeded { .. }
        )
    }
}
