use thiserror::Error;

use crate::oracle::PolymatroidViolation;
use crate::subset::Subset;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ground set must have between 2 and 64 users, got {0}")]
    GroundSetSize(usize),
    #[error("subset {mask:#x} is not contained in a ground set of {n} users")]
    SubsetOutOfRange { mask: u64, n: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partitions are over different ground sets ({left} vs {right} users)")]
    GroundSetMismatch { left: usize, right: usize },
    #[error("{0} is not a block of the partition")]
    NotABlock(Subset),
    #[error("invalid linear ordering: {0}")]
    InvalidOrdering(String),
    #[error("expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("rational with zero denominator")]
    ZeroDenominator,
    #[error("rational arithmetic overflow")]
    Overflow,
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
    #[error("entropy table is not a polymatroid: {0}")]
    NotPolymatroid(PolymatroidViolation),
    #[error("{what} has size {size}, above the enumeration limit of {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("entropy oracle is not integer-valued")]
    NonIntegralOracle,
    #[error("weight of user {index} is negative")]
    NegativeWeight { index: usize },
    #[error("invalid instance: {0}")]
    Instance(String),
    #[error("malformed instance file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
