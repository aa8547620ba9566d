//! Tunables shared by the block partitioner and the quicksort driver.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Default number of elements scanned per block.
pub const DEFAULT_BLOCK_SIZE: usize = 128;

/// Subarrays of at most this many elements are finished with insertion sort.
pub const DEFAULT_INSERTION_THRESHOLD: usize = 16;

/// Largest supported block size. Offsets are stored as `u32`.
pub const MAX_BLOCK_SIZE: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("block size {0} is too small (need at least 2)")]
    BlockTooSmall(usize),
    #[error("block size {0} exceeds the supported maximum {MAX_BLOCK_SIZE}")]
    BlockTooLarge(usize),
    #[error("the tuned variant needs a power-of-two block size, got {0}")]
    BlockNotPowerOfTwo(usize),
    #[error("insertion threshold {0} is too small (need at least 3)")]
    ThresholdTooSmall(usize),
    #[error("skew factor must be positive")]
    ZeroSkew,
    #[error("unknown pivot strategy `{0}`")]
    UnknownPivot(String),
    #[error("unknown partition variant `{0}`")]
    UnknownVariant(String),
}

/// Which block partitioner the driver runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Plain block partitioning with pairwise swaps and a block-style final phase.
    Simple,
    /// Scanning loops unrolled four times, rearrangement by a single cyclic permutation.
    Tuned,
    /// Block main loop, classic Hoare partitioning for the last `< 2B` elements.
    HoareFinish,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Simple => "simple",
            Variant::Tuned => "tuned",
            Variant::HoareFinish => "hoare-finish",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "simple" => Ok(Variant::Simple),
            "tuned" => Ok(Variant::Tuned),
            "hoare-finish" => Ok(Variant::HoareFinish),
            other => Err(ConfigError::UnknownVariant(other.to_string())),
        }
    }
}

/// How the pivot is chosen from the current subarray.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PivotStrategy {
    /// Median of first, middle and last element.
    Mo3,
    Mo5,
    Mo23,
    /// Median of three medians of three.
    Mo3xMo3,
    /// Median of five medians of three.
    Mo3xMo5,
    /// Median of five medians of five.
    Mo5xMo5,
    /// Median of a sample of `ceil(sqrt(n))` elements.
    MoSqrtN,
    /// The `floor(n / k)`-th smallest element. Only useful for skew experiments.
    Skewed(u32),
}

impl PivotStrategy {
    pub fn name(self) -> String {
        match self {
            PivotStrategy::Mo3 => "mo3".into(),
            PivotStrategy::Mo5 => "mo5".into(),
            PivotStrategy::Mo23 => "mo23".into(),
            PivotStrategy::Mo3xMo3 => "mo3x3".into(),
            PivotStrategy::Mo3xMo5 => "mo3x5".into(),
            PivotStrategy::Mo5xMo5 => "mo5x5".into(),
            PivotStrategy::MoSqrtN => "sqrt".into(),
            PivotStrategy::Skewed(k) => format!("skew:{k}"),
        }
    }

    /// True for strategies whose sample size does not grow with `n`.
    pub fn has_constant_sample(self) -> bool {
        !matches!(self, PivotStrategy::MoSqrtN | PivotStrategy::Skewed(_))
    }
}

impl fmt::Display for PivotStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for PivotStrategy {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "mo3" => PivotStrategy::Mo3,
            "mo5" => PivotStrategy::Mo5,
            "mo23" => PivotStrategy::Mo23,
            "mo3x3" => PivotStrategy::Mo3xMo3,
            "mo3x5" => PivotStrategy::Mo3xMo5,
            "mo5x5" => PivotStrategy::Mo5xMo5,
            "sqrt" => PivotStrategy::MoSqrtN,
            other => {
                let k = other
                    .strip_prefix("skew:")
                    .and_then(|k| k.parse::<u32>().ok())
                    .ok_or_else(|| ConfigError::UnknownPivot(other.to_string()))?;
                if k == 0 {
                    return Err(ConfigError::ZeroSkew);
                }
                PivotStrategy::Skewed(k)
            }
        })
    }
}

/// All knobs of [`block_quicksort`](crate::block_quicksort).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SortConfig {
    pub block_size: usize,
    pub variant: Variant,
    pub duplicate_check: bool,
    pub pivot_strategy: PivotStrategy,
    pub insertion_threshold: usize,
}

impl Default for SortConfig {
    fn default() -> Self {
        SortConfig {
            block_size: DEFAULT_BLOCK_SIZE,
            variant: Variant::Tuned,
            duplicate_check: false,
            pivot_strategy: PivotStrategy::Mo3,
            insertion_threshold: DEFAULT_INSERTION_THRESHOLD,
        }
    }
}

impl SortConfig {
    pub fn new(variant: Variant) -> Self {
        SortConfig {
            variant,
            ..SortConfig::default()
        }
    }

    pub fn with_block_size(mut self, block_size: usize) -> Self {
        self.block_size = block_size;
        self
    }

    pub fn with_pivot(mut self, pivot_strategy: PivotStrategy) -> Self {
        self.pivot_strategy = pivot_strategy;
        self
    }

    pub fn with_duplicate_check(mut self, enabled: bool) -> Self {
        self.duplicate_check = enabled;
        self
    }

    pub fn with_insertion_threshold(mut self, threshold: usize) -> Self {
        self.insertion_threshold = threshold;
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.block_size < 2 {
            return Err(ConfigError::BlockTooSmall(self.block_size));
        }
        if self.block_size > MAX_BLOCK_SIZE {
            return Err(ConfigError::BlockTooLarge(self.block_size));
        }
        if self.variant == Variant::Tuned && !self.block_size.is_power_of_two() {
            return Err(ConfigError::BlockNotPowerOfTwo(self.block_size));
        }
        if self.insertion_threshold < 3 {
            return Err(ConfigError::ThresholdTooSmall(self.insertion_threshold));
        }
        if self.pivot_strategy == PivotStrategy::Skewed(0) {
            return Err(ConfigError::ZeroSkew);
        }
        Ok(())
    }

    /// Recursion depth at which the driver gives up on quicksort for a subarray.
    pub fn depth_limit_of(&self, n: usize) -> usize {
        depth_limit_of(n)
    }
}

/// `2 * floor(log2 n) + 3`, and 3 for `n < 2`.
pub fn depth_limit_of(n: usize) -> usize {
    2 * floor_log2(n) + 3
}

pub(crate) fn floor_log2(n: usize) -> usize {
    if n < 2 {
        0
    } else {
        (usize::BITS - 1 - n.leading_zeros()) as usize
    }
}

pub(crate) fn ceil_log2(n: usize) -> usize {
    if n < 2 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}
