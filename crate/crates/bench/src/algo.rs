//! The algorithms the harness can run, and dispatch over element kinds.

use std::fmt;
use std::str::FromStr;

use anyhow::{bail, Result};
use blockqs::inputs::{Element, ElementArray};
use blockqs::{
    block_quicksort, block_quicksort_by, introsort_classic, introsort_classic_by,
    tuned_quicksort_lomuto, tuned_quicksort_lomuto_by, PivotStrategy, SortConfig, SortStats,
    Variant,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algo {
    /// Tuned block partitioning.
    Block,
    BlockSimple,
    BlockHoareFinish,
    /// Tuned block partitioning with the duplicate check.
    BlockDc,
    Introsort,
    TunedLomuto,
}

impl Algo {
    pub const ALL: [Algo; 6] = [
        Algo::Block,
        Algo::BlockSimple,
        Algo::BlockHoareFinish,
        Algo::BlockDc,
        Algo::Introsort,
        Algo::TunedLomuto,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Block => "block",
            Algo::BlockSimple => "block-simple",
            Algo::BlockHoareFinish => "block-hoare-finish",
            Algo::BlockDc => "block-dc",
            Algo::Introsort => "introsort",
            Algo::TunedLomuto => "tuned-lomuto",
        }
    }

    pub fn is_block(self) -> bool {
        !matches!(self, Algo::Introsort | Algo::TunedLomuto)
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match Algo::ALL.into_iter().find(|a| a.name() == s) {
            Some(a) => Ok(a),
            None => bail!(
                "unknown algorithm `{s}` (expected one of: {})",
                Algo::ALL.map(Algo::name).join(", ")
            ),
        }
    }
}

/// One algorithm with its tunables. Baselines ignore pivot and block size.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgoConfig {
    pub algo: Algo,
    pub pivot: PivotStrategy,
    pub block_size: usize,
}

impl AlgoConfig {
    pub fn new(algo: Algo) -> Self {
        AlgoConfig {
            algo,
            pivot: PivotStrategy::Mo3,
            block_size: blockqs::config::DEFAULT_BLOCK_SIZE,
        }
    }

    pub fn with_pivot(mut self, pivot: PivotStrategy) -> Self {
        self.pivot = pivot;
        self
    }

    pub fn with_block_size(mut self, block_size: usize) -> Self {
        self.block_size = block_size;
        self
    }

    /// The block sorter configuration, or `None` for the baselines.
    pub fn sort_config(&self) -> Option<SortConfig> {
        let variant = match self.algo {
            Algo::Block | Algo::BlockDc => Variant::Tuned,
            Algo::BlockSimple => Variant::Simple,
            Algo::BlockHoareFinish => Variant::HoareFinish,
            Algo::Introsort | Algo::TunedLomuto => return None,
        };
        Some(
            SortConfig::new(variant)
                .with_block_size(self.block_size)
                .with_pivot(self.pivot)
                .with_duplicate_check(self.algo == Algo::BlockDc),
        )
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(cfg) = self.sort_config() {
            cfg.validate()?;
        }
        Ok(())
    }

    /// Value of the `variant` column.
    pub fn variant_label(&self) -> String {
        match self.sort_config() {
            Some(cfg) => cfg.variant.name().to_string(),
            None => "-".to_string(),
        }
    }

    /// Value of the `pivot` column.
    pub fn pivot_label(&self) -> String {
        match self.algo {
            Algo::Introsort | Algo::TunedLomuto => "mo3".to_string(),
            _ => self.pivot.name(),
        }
    }

    /// Value of the `block_size` column; 0 for the baselines.
    pub fn block_label(&self) -> usize {
        if self.algo.is_block() {
            self.block_size
        } else {
            0
        }
    }

    /// Sorts `v` with the given comparator, counting into `stats`.
    pub fn sort_counted_by<E, F>(&self, v: &mut [E], is_less: F, stats: &SortStats)
    where
        F: FnMut(&E, &E) -> bool,
    {
        match self.sort_config() {
            Some(cfg) => block_quicksort(v, &cfg, is_less, stats),
            None if self.algo == Algo::Introsort => introsort_classic(v, is_less, stats),
            None => tuned_quicksort_lomuto(v, is_less, stats),
        }
    }

    /// Sorts `v` by the element order, counting into a fresh [`SortStats`].
    pub fn sort_counted<E: Element>(&self, v: &mut [E]) -> SortStats {
        let stats = SortStats::new();
        self.sort_counted_by(v, E::less, &stats);
        stats
    }

    /// Sorts `v` without any instrumentation. This is what gets timed.
    pub fn sort_plain<E: Element>(&self, v: &mut [E]) {
        match self.sort_config() {
            Some(cfg) => block_quicksort_by(v, &cfg, E::less),
            None if self.algo == Algo::Introsort => introsort_classic_by(v, E::less),
            None => tuned_quicksort_lomuto_by(v, E::less),
        }
    }
}

impl fmt::Display for AlgoConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "algo={} variant={} pivot={} block={}",
            self.algo,
            self.variant_label(),
            self.pivot_label(),
            self.block_label()
        )
    }
}

/// Calls a generic function on the typed vector inside an [`ElementArray`].
#[macro_export]
macro_rules! with_elements {
    ($array:expr, |$v:ident| $body:expr) => {
        match $array {
            blockqs::inputs::ElementArray::Key32($v) => $body,
            blockqs::inputs::ElementArray::Vec10($v) => $body,
            blockqs::inputs::ElementArray::Rec21($v) => $body,
        }
    };
}

/// Sorts a copy of `input`, returning the counters.
pub fn sort_copy_counted(cfg: &AlgoConfig, input: &ElementArray) -> SortStats {
    let mut copy = input.clone();
    with_elements!(&mut copy, |v| cfg.sort_counted(v))
}
