use thiserror::Error;

use crate::coxeter::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid Coxeter matrix: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "))]
    InvalidMatrix(Vec<Violation>),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("prime {0} is too large for single-word residue arithmetic")]
    PrimeTooLarge(u64),

    #[error("input is reducible; expected a single connected component")]
    Reducible,

    #[error("cap exceeded: more than {limit} {what}{}", if *.possibly_infinite { " (possibly infinite)" } else { "" })]
    CapExceeded {
        what: &'static str,
        limit: usize,
        possibly_infinite: bool,
    },

    #[error("estimated working set of {needed} bytes exceeds the memory budget of {budget} bytes")]
    MemoryBudget { needed: u128, budget: u64 },

    #[error("element index {index} out of range for a group of order {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("Sylow {p}-subgroup is not cyclic of order {p} ({p}^2 divides {order})")]
    NotCyclicSylow { p: u64, order: u64 },

    #[error("character is not well defined: {0}")]
    CharacterIllDefined(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("integrity check failed: {0}")]
    Integrity(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
