use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// Operands of a series operation disagree on generators, truncation or field.
    #[error("structure mismatch: {0}")]
    StructureMismatch(String),

    #[error("series is not invertible: constant term is not 1")]
    NotInvertible,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("truncation {have} is too small, need at least {needed}")]
    TruncationTooSmall { needed: u32, have: u32 },

    /// The configured truncation cannot certify that a power vanishes.
    #[error("inconclusive: truncation {truncation} cannot certify vanishing beyond power {checked}")]
    Inconclusive { truncation: u32, checked: u32 },

    /// No known lemma determines the requested characteristic-class degree.
    #[error("not determined: {0}")]
    NotDetermined(String),

    #[error("unsupported piece {piece}: {reason}")]
    UnsupportedPiece { piece: String, reason: String },

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("semantic error in `{atom}`: {message}")]
    Semantic { atom: String, message: String },

    #[error("points are not pairwise distinct")]
    RepeatedPoints,
}
