use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set size {0} is outside 1..=64")]
    GroundSetSize(usize),

    #[error("element {element} is outside the ground set [1..{n}]")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("duplicate block {0:?}")]
    DuplicateBlock(Vec<usize>),

    #[error("set system is not an antichain: {inner:?} is included in {outer:?}")]
    NotAntichain { inner: Vec<usize>, outer: Vec<usize> },

    #[error("ground set sizes differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("pair {{{i}, {j}}} is not a 2-element subset of [1..{n}]")]
    PairOutOfRange { i: usize, j: usize, n: usize },

    #[error("a deck needs at least {min} elements, got {n}")]
    TooSmall { n: usize, min: usize },

    #[error("exact canonicalization is capped at {cap} elements, got {n}")]
    CanonicalCap { n: usize, cap: usize },

    #[error("exhaustive enumeration is capped at n = {cap}, got {n}")]
    EnumerationCap { n: usize, cap: usize },

    #[error("function table for {0} exceeds the size cap")]
    TableCap(String),

    #[error("invalid family parameter: {0}")]
    FamilyParameter(String),

    #[error("X and Y must be disjoint")]
    OverlappingXy,

    #[error("signature undefined: {0}")]
    SignatureUndefined(String),

    #[error("invalid function: {0}")]
    Function(String),

    #[error("function is not Boolean")]
    NotBoolean,

    #[error("function is not monotone")]
    NotMonotone,

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// A resource cap was hit rather than bad input.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CanonicalCap { .. } | Error::EnumerationCap { .. } | Error::TableCap(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
