//! Counter reports and timing runs.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use anyhow::{Context, Result};
use blockqs::inputs::{generate, prng_name, ElementArray, InputSpec};
use serde::{Deserialize, Serialize};

use crate::algo::{sort_copy_counted, AlgoConfig};
use crate::record::BenchRecord;
use crate::with_elements;

/// Default amount of data sorted per timing measurement: 128 MiB.
pub const DEFAULT_VOLUME_BYTES: u64 = 128 << 20;

/// One row per (configuration, input) with counters only.
pub fn run_stats(configs: &[AlgoConfig], specs: &[InputSpec]) -> Vec<BenchRecord> {
    let mut records = Vec::with_capacity(configs.len() * specs.len());
    for spec in specs {
        let input = generate(spec);
        for cfg in configs {
            let stats = sort_copy_counted(cfg, &input);
            records.push(BenchRecord::from_stats(cfg, spec, &stats));
        }
    }
    records
}

/// Number of sorts needed so that at least `volume_bytes` are processed.
pub fn repetitions(n: usize, element_bytes: usize, volume_bytes: u64) -> u64 {
    let bytes = (n * element_bytes) as u64;
    if bytes == 0 {
        return 1;
    }
    volume_bytes.div_ceil(bytes).max(1)
}

/// Smallest nonzero step observed between consecutive clock reads.
pub fn clock_resolution() -> Duration {
    let mut best = Duration::MAX;
    for _ in 0..1000 {
        let a = Instant::now();
        let mut b = Instant::now();
        while b == a {
            b = Instant::now();
        }
        best = best.min(b - a);
    }
    best
}

/// Written next to a benchmark CSV as `<csv>.meta.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchMeta {
    pub prng: String,
    pub clock: String,
    pub clock_resolution_ns: u128,
    pub volume_bytes: u64,
    pub warnings: Vec<String>,
}

impl BenchMeta {
    pub fn sidecar_path(csv: &Path) -> PathBuf {
        let mut name = csv.as_os_str().to_owned();
        name.push(".meta.json");
        PathBuf::from(name)
    }

    pub fn write(&self, csv: &Path) -> Result<()> {
        let path = Self::sidecar_path(csv);
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))
    }
}

/// Total wall time of `reps` sorts of fresh copies of `input`. Copying is not timed.
fn time_sorts(cfg: &AlgoConfig, input: &ElementArray, reps: u64) -> Duration {
    let mut total = Duration::ZERO;
    for _ in 0..reps {
        let mut work = input.clone();
        with_elements!(&mut work, |v| {
            let start = Instant::now();
            cfg.sort_plain(v);
            total += start.elapsed();
        });
    }
    total
}

/// Counters from one instrumented run plus the mean uninstrumented time per
/// element over enough repetitions to process `volume_bytes`. Everything runs
/// sequentially on the calling thread.
pub fn run_bench(
    configs: &[AlgoConfig],
    specs: &[InputSpec],
    volume_bytes: u64,
) -> (Vec<BenchRecord>, BenchMeta) {
    let resolution = clock_resolution();
    let mut warnings = Vec::new();
    if resolution > Duration::from_micros(1) {
        warnings.push(format!(
            "clock resolution {} ns is coarser than 1 us",
            resolution.as_nanos()
        ));
    }
    let mut records = Vec::with_capacity(configs.len() * specs.len());
    for spec in specs {
        let input = generate(spec);
        for cfg in configs {
            let stats = sort_copy_counted(cfg, &input);
            let mut record = BenchRecord::from_stats(cfg, spec, &stats);
            if spec.n > 0 {
                let reps = repetitions(spec.n, spec.element_kind.size_bytes(), volume_bytes);
                let total = time_sorts(cfg, &input, reps);
                record.repetitions = Some(reps);
                record.time_ns_per_element =
                    Some(total.as_nanos() as f64 / (reps as f64 * spec.n as f64));
            }
            records.push(record);
        }
    }
    let meta = BenchMeta {
        prng: prng_name().to_string(),
        clock: "std::time::Instant (monotonic)".to_string(),
        clock_resolution_ns: resolution.as_nanos(),
        volume_bytes,
        warnings,
    };
    (records, meta)
}
