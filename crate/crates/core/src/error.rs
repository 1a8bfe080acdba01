use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular (rank {rank} of {size})")]
    Singular { rank: usize, size: usize },

    #[error("basis matrix does not have full column rank (rank {rank} of {cols})")]
    RankDeficientBasis { rank: usize, cols: usize },

    #[error("target column {column} is not in the column space of the basis")]
    Inconsistent { column: usize },

    #[error("dimension {dim} out of range (complex has dimension {max})")]
    DimensionOutOfRange { dim: usize, max: usize },

    #[error("{0}-chain is not a cycle")]
    NotACycle(usize),

    #[error("1-skeleton is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("complex is empty")]
    EmptyComplex,

    #[error("simplex {0:?} is not in the complex")]
    UnknownSimplex(Vec<u32>),

    #[error("class width g = {g} exceeds the cap {cap}; the covering graph would need about {bytes} bytes")]
    ClassWidthOverCap { g: usize, cap: usize, bytes: u128 },

    #[error("cycle space dimension {dim} exceeds the enumeration cap {cap}")]
    EnumerationOverCap { dim: usize, cap: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Capability errors are requests the input is valid for but that exceed
    /// a configured limit or a supported dimension.
    pub fn is_capability(&self) -> bool {
        matches!(
            self,
            Error::ClassWidthOverCap { .. } | Error::EnumerationOverCap { .. } | Error::Unsupported(_)
        )
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
