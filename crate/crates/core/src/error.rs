use alloc::string::String;

use crate::partition::Partition;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("partition lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("partition must have at least one part")]
    EmptyPartition,

    #[error("parts are not weakly decreasing: {0}")]
    NotDecreasing(String),

    #[error("cannot parse partition {text:?}: {reason}")]
    Parse { text: String, reason: String },

    #[error("{beta} is not contained in {alpha}")]
    NotSubpartition { beta: Partition, alpha: Partition },

    #[error("invalid L-matrix for {alpha}: {reason}")]
    InvalidLMatrix { alpha: Partition, reason: String },

    #[error("L-matrix was enumerated for {found}, not {expected}")]
    LMatrixMismatch { expected: Partition, found: Partition },

    #[error("degree {k} outside 0..={max}")]
    ComponentOutOfRange { k: u64, max: u64 },
}
