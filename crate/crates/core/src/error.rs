use num_bigint::BigInt;
use thiserror::Error;

use crate::root_data::Family;

/// Errors raised by the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix data has {got} entries, expected {rows}x{cols}")]
    Shape { rows: usize, cols: usize, got: usize },

    #[error("column count mismatch: expected {expected}, found {found}")]
    ColumnMismatch { expected: usize, found: usize },

    #[error("invalid rank {rank} for root system family {family}")]
    InvalidRank { family: Family, rank: usize },

    #[error("unknown root system family {0:?}")]
    UnknownFamily(String),

    #[error("simple reflection index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("group order {order} exceeds cap of {cap} elements")]
    GroupTooLarge { order: BigInt, cap: usize },

    #[error("group elements were not generated exhaustively")]
    NotEnumerated,

    #[error("matrix entry does not fit the compact element encoding")]
    EntryOverflow,

    #[error("Gram matrix is singular")]
    SingularGram,

    #[error("discriminant group of order {order} exceeds enumeration cap {cap}")]
    DiscriminantTooLarge { order: BigInt, cap: usize },

    #[error("generator does not preserve the lattice pair: {0}")]
    LatticeNotPreserved(String),

    #[error("space of invariant bilinear forms has dimension {0}, expected 1")]
    FormSpaceDimension(usize),

    #[error("invariant form check failed: {0}")]
    FormCheck(String),

    #[error("invalid lattice selector {0:?}")]
    InvalidSelector(String),

    #[error("tower has no member at position {index} (size {len})")]
    SelectorOutOfRange { index: usize, len: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
