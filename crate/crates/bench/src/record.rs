//! The CSV row type and its file I/O.

use std::fs::File;
use std::path::Path;

use anyhow::{Context, Result};
use blockqs::inputs::{prng_name, InputSpec};
use blockqs::SortStats;
use serde::{Deserialize, Serialize};

use crate::algo::AlgoConfig;

/// One CSV row: configuration, input, optional timing, and counters.
///
/// Field order is the column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub algo: String,
    pub variant: String,
    pub pivot: String,
    pub block_size: usize,
    pub element_kind: String,
    pub distribution: String,
    pub n: usize,
    pub seed: u64,
    pub time_ns_per_element: Option<f64>,
    pub repetitions: Option<u64>,
    pub comparisons: u64,
    pub swaps: u64,
    pub scanned_elements: u64,
    pub modeled_misses_total: u64,
    pub insertion_misses: u64,
    pub partition_calls: u64,
    pub heapsort_calls: u64,
    pub prng_name: String,
}

pub const COLUMNS: [&str; 18] = [
    "algo",
    "variant",
    "pivot",
    "block_size",
    "element_kind",
    "distribution",
    "n",
    "seed",
    "time_ns_per_element",
    "repetitions",
    "comparisons",
    "swaps",
    "scanned_elements",
    "modeled_misses_total",
    "insertion_misses",
    "partition_calls",
    "heapsort_calls",
    "prng_name",
];

impl BenchRecord {
    pub fn from_stats(cfg: &AlgoConfig, spec: &InputSpec, stats: &SortStats) -> Self {
        BenchRecord {
            algo: cfg.algo.name().to_string(),
            variant: cfg.variant_label(),
            pivot: cfg.pivot_label(),
            block_size: cfg.block_label(),
            element_kind: spec.element_kind.name().to_string(),
            distribution: spec.distribution.name().to_string(),
            n: spec.n,
            seed: spec.seed,
            time_ns_per_element: None,
            repetitions: None,
            comparisons: stats.comparisons(),
            swaps: stats.swaps(),
            scanned_elements: stats.scanned_elements(),
            modeled_misses_total: stats.modeled_misses_total(),
            insertion_misses: stats.insertion_misses(),
            partition_calls: stats.partition_calls(),
            heapsort_calls: stats.heapsort_calls(),
            prng_name: prng_name().to_string(),
        }
    }
}

pub fn write_csv(path: &Path, records: &[BenchRecord]) -> Result<()> {
    let file = File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(file);
    // header written explicitly so an empty result still has one
    w.write_record(COLUMNS)?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

pub fn read_csv(path: &Path) -> Result<Vec<BenchRecord>> {
    let mut r =
        csv::Reader::from_path(path).with_context(|| format!("cannot read {}", path.display()))?;
    r.deserialize()
        .collect::<Result<Vec<BenchRecord>, _>>()
        .with_context(|| format!("malformed CSV {}", path.display()))
}
