use thiserror::Error;

/// Errors surfaced by the structural and decision layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A direct-sum modulus was zero (or otherwise non-positive at parse time).
    #[error("modulus must be positive")]
    NonPositiveModulus,
    /// A hand-built invariant-factor chain violated the canonical-form rules.
    #[error("torsion chain is not canonical: {0}")]
    NotCanonical(String),
    /// An element's coordinate counts do not match the ambient group.
    #[error("element shape mismatch: group has rank {rank} and {torsion} torsion coordinates")]
    ShapeMismatch { rank: usize, torsion: usize },
    /// The operation is only defined for finite groups.
    #[error("operation requires a finite group (torsion-free rank is {rank})")]
    InfiniteGroup { rank: usize },
    /// Subgroup closure cannot handle generators with infinite order.
    #[error("generators with nonzero free part in an infinite ambient group are unsupported")]
    InfiniteSubgroupClosure,
    /// A class row was empty or contained a class below 1.
    #[error("class row must be non-empty with every class at least 1")]
    InvalidClassRow,
    /// A number-theoretic function was called outside its domain.
    #[error("{0} requires a positive argument")]
    NonPositiveArgument(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
