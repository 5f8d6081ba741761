use thiserror::Error;

/// Errors raised while building or interrogating rings and modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("infinite quotient: no power of `{0}` lies in the ideal")]
    InfiniteQuotient(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("resource cap: {what} needs {needed}, limit is {limit}")]
    ResourceCap {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("operands belong to different rings")]
    ForeignRing,
    #[error("operands belong to different modules")]
    ForeignModule,
    #[error("ring axiom violated: {0}")]
    Axiom(String),
    #[error("module axiom violated: {0}")]
    ModuleAxiom(String),
    #[error("element {index} out of range for a structure of size {size}")]
    ElementOutOfRange { index: usize, size: usize },
    #[error("cannot read element `{text}`: {reason}")]
    BadElement { text: String, reason: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl Error {
    pub fn cap(what: &'static str, needed: impl Into<u128>, limit: impl Into<u128>) -> Self {
        Error::ResourceCap {
            what,
            needed: needed.into(),
            limit: limit.into(),
        }
    }

    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::ResourceCap { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
