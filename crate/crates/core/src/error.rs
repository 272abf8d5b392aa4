use thiserror::Error;

/// Errors raised by the symbolic engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("unknown identifier `{name}` at byte {pos}")]
    UnknownIdentifier { pos: usize, name: String },

    #[error("negative exponent at byte {pos}")]
    NegativeExponent { pos: usize },

    #[error("mismatched rings: [{left}] vs [{right}]")]
    RingMismatch { left: String, right: String },

    #[error("leading coefficient `{0}` depends on parameters and could vanish")]
    SymbolicLeadingCoefficient(String),

    #[error("quotient is infinite-dimensional: no pure power of `{variable}` is a leading monomial")]
    InfiniteDimensional { variable: String },

    #[error("algebra is not local: `{variable}` is not nilpotent in the quotient")]
    NotLocal { variable: String },

    #[error("the ideal is the whole ring")]
    UnitIdeal,

    #[error("algebra is not Gorenstein (socle dimension {socle_dim})")]
    NotGorenstein { socle_dim: usize },

    #[error("subspace is not an ideal")]
    NotAnIdeal,

    #[error("subspace containment fails: {0}")]
    NotContained(String),

    #[error("invalid H-pair: {0}")]
    InvalidPair(String),

    #[error("squaring pencil is empty (m^2 = m^3)")]
    EmptyPencil,

    #[error("substitution has a non-invertible linear part")]
    NonInvertibleLinearPart,

    #[error("parameter `{0}` is required")]
    MissingParameter(String),

    #[error("parameter `{0}` must be nonzero")]
    ZeroParameter(String),

    #[error("n = {n} is outside the valid range of `{id}`")]
    OutOfRange { id: String, n: u32 },

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("catalog data: {0}")]
    Catalog(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
