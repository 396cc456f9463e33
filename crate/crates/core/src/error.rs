use thiserror::Error;

/// Errors raised by group construction and the invariant computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} exceeds cap: {size} > {cap}")]
    CapExceeded {
        what: String,
        size: usize,
        cap: usize,
    },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("generating set of size {size} exceeds limit {limit}")]
    GeneratingSetTooLarge { size: usize, limit: usize },

    #[error("out action inconsistent: {0}")]
    ActionInconsistent(String),

    #[error("unknown family label {0:?}")]
    UnknownFamilyLabel(String),

    #[error("acting groups differ: {0}")]
    OutMismatch(String),

    #[error("Sylow {p}-subgroup of {which} is not normal")]
    NotNormalSylow { p: u64, which: String },

    #[error("{which} is not a reduced cyclic mod {p} group")]
    NotReducedCyclicModP { p: u64, which: String },

    #[error("Möbius verification failed: {0}")]
    PosetInconsistent(String),

    #[error("parse error at position {pos}: {message}")]
    Parse { pos: usize, message: String },

    #[error("{0} is not a prime")]
    BadPrime(u64),

    #[error("while processing {stage}: {source}")]
    Stage {
        stage: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn cap(what: impl Into<String>, size: usize, cap: usize) -> Self {
        Error::CapExceeded {
            what: what.into(),
            size,
            cap,
        }
    }

    /// Attach the name of the computation stage that failed.
    pub fn in_stage(self, stage: impl Into<String>) -> Self {
        Error::Stage {
            stage: stage.into(),
            source: Box::new(self),
        }
    }

    /// Short machine-readable name of the innermost error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::CapExceeded { .. } => "CapExceeded",
            Error::InvalidPermutation(_) => "InvalidPermutation",
            Error::BadParameter(_) => "BadParameter",
            Error::NotNormal => "NotNormal",
            Error::GeneratingSetTooLarge { .. } => "GeneratingSetTooLarge",
            Error::ActionInconsistent(_) => "ActionInconsistent",
            Error::UnknownFamilyLabel(_) => "UnknownFamilyLabel",
            Error::OutMismatch(_) => "OutMismatch",
            Error::NotNormalSylow { .. } => "NotNormalSylow",
            Error::NotReducedCyclicModP { .. } => "NotReducedCyclicModP",
            Error::PosetInconsistent(_) => "PosetInconsistent",
            Error::BadPrime(_) => "BadPrime",
            Error::Parse { .. } => "ParseError",
            Error::Stage { source, .. } => source.kind(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
