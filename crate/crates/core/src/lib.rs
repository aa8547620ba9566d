//! BlockQuicksort: quicksort whose partitioner buffers comparison outcomes in
//! fixed-size blocks, so the hot loops contain no branches that depend on the
//! data. Includes the classic introsort and branchless-Lomuto baselines, a
//! static branch predictor cost model, and deterministic input generators.
//!
//! ```
//! use blockqs::{block_quicksort, SortConfig, SortStats};
//!
//! let mut v = vec![5, 3, 1, 4, 2];
//! let stats = SortStats::new();
//! block_quicksort(&mut v, &SortConfig::default(), |a, b| a < b, &stats);
//! assert_eq!(v, [1, 2, 3, 4, 5]);
//! assert!(stats.comparisons() > 0);
//! ```

pub mod baselines;
pub mod config;
mod driver;
pub mod dup;
pub mod inputs;
pub mod partition;
pub mod pivot;
pub mod small;
pub mod stats;

pub use baselines::{
    introsort_classic, introsort_classic_by, introsort_classic_with, lomuto_partition_branchless,
    quicksort_hoare, tuned_quicksort_lomuto, tuned_quicksort_lomuto_by, MedianSample,
};
pub use config::{depth_limit_of, ConfigError, PivotStrategy, SortConfig, Variant};
pub use driver::{block_quicksort, block_quicksort_by, block_sort, stack_bound};
pub use dup::{duplicate_check, EqualRange};
pub use partition::{block_partition, block_partition_with, hoare_partition, BlockBuffers};
pub use pivot::{select_pivot, sort_pair_branchless};
pub use small::{heap_sort, insertion_sort};
pub use stats::{
    counting_comparator, misprediction_bound, record_branch_event, EventClass, Recorder, SortStats,
};
