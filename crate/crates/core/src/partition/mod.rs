//! Partitioning schemes.

mod block;
mod hoare;

pub use block::{block_partition, block_partition_with, BlockBuffers};
pub use hoare::hoare_partition;
pub(crate) use hoare::hoare_split;
