//! Command-line interface.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use blockqs::inputs::{default_seeds, Distribution, ElementKind, InputSpec};
use blockqs::PivotStrategy;
use clap::{Args, Parser, Subcommand};

use crate::algo::{Algo, AlgoConfig};
use crate::plot::emit_plot_data;
use crate::record::write_csv;
use crate::run::{run_bench, run_stats};
use crate::verify::run_verify;

#[derive(Debug, Parser)]
#[command(
    name = "blockqs",
    about = "Block quicksort verification and benchmarks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sort every input with every configuration and check the output.
    Verify(Grid),
    /// Write instrumentation counters, one row per configuration and input.
    Stats {
        #[command(flatten)]
        grid: Grid,
        #[arg(long)]
        csv: PathBuf,
    },
    /// Like `stats`, plus uninstrumented wall time per element.
    Bench {
        #[command(flatten)]
        grid: Grid,
        #[arg(long)]
        csv: PathBuf,
        /// Minimum data volume sorted per measurement, in MiB.
        #[arg(long, default_value_t = 128)]
        volume_mb: u64,
    },
    /// Turn a results CSV into grouped `x y` series.
    Plot {
        #[arg(long)]
        csv: PathBuf,
        /// Column or `log2(column)`.
        #[arg(long, default_value = "log2(n)")]
        x: String,
        /// Column or `column/column`.
        #[arg(long, default_value = "modeled_misses_total/n")]
        y: String,
        #[arg(long, value_delimiter = ',', default_value = "algo")]
        group_by: Vec<String>,
        /// Output file; stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// The experimental axes. Every list flag accepts comma-separated values.
#[derive(Debug, Args)]
pub struct Grid {
    /// Algorithm names, or `all`.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    pub algo: Vec<String>,
    /// Pivot strategies for the block algorithms.
    #[arg(long, value_delimiter = ',', default_value = "mo3")]
    pub pivot: Vec<String>,
    /// Distribution names, or `all`.
    #[arg(long, value_delimiter = ',', default_value = "random")]
    pub dist: Vec<String>,
    /// Element kinds, or `all`.
    #[arg(long, value_delimiter = ',', default_value = "key32")]
    pub elem: Vec<String>,
    /// Smallest input size as a power of two.
    #[arg(long, default_value_t = 8)]
    pub n_min: u32,
    /// Largest input size as a power of two.
    #[arg(long, default_value_t = 14)]
    pub n_max: u32,
    /// Explicit input sizes; overrides the exponent range.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Number of seeds, run as 1..=count.
    #[arg(long, default_value_t = 20)]
    pub seeds: u64,
    /// Block sizes for the block algorithms.
    #[arg(long, value_delimiter = ',', default_value = "128")]
    pub block: Vec<usize>,
}

fn expand<T>(names: &[String], all: &[T], parse: impl Fn(&str) -> Result<T>) -> Result<Vec<T>>
where
    T: Copy + PartialEq,
{
    let mut out = Vec::new();
    for name in names {
        if name == "all" {
            out.extend_from_slice(all);
        } else {
            out.push(parse(name)?);
        }
    }
    out.dedup();
    Ok(out)
}

impl Grid {
    pub fn configs(&self) -> Result<Vec<AlgoConfig>> {
        let algos = expand(&self.algo, &Algo::ALL, |s| s.parse())?;
        let pivots = expand(&self.pivot, &[], |s| Ok(s.parse::<PivotStrategy>()?))?;
        let mut out: Vec<AlgoConfig> = Vec::new();
        for algo in algos {
            for &pivot in &pivots {
                for &block in &self.block {
                    let cfg = AlgoConfig::new(algo)
                        .with_pivot(pivot)
                        .with_block_size(block);
                    cfg.validate()
                        .with_context(|| format!("invalid configuration {cfg}"))?;
                    // baselines ignore pivot and block size; keep one copy
                    if !out.iter().any(|c| c.to_string() == cfg.to_string()) {
                        out.push(cfg);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn specs(&self) -> Result<Vec<InputSpec>> {
        let dists = expand(&self.dist, &Distribution::ALL, |s| Ok(s.parse()?))?;
        let elems = expand(&self.elem, &ElementKind::ALL, |s| Ok(s.parse()?))?;
        let sizes: Vec<usize> = if self.n.is_empty() {
            if self.n_min > self.n_max || self.n_max >= usize::BITS {
                bail!("bad size range 2^{}..=2^{}", self.n_min, self.n_max);
            }
            (self.n_min..=self.n_max).map(|e| 1usize << e).collect()
        } else {
            self.n.clone()
        };
        let mut out = Vec::new();
        for &element_kind in &elems {
            for &distribution in &dists {
                for &n in &sizes {
                    for seed in default_seeds(self.seeds) {
                        out.push(InputSpec {
                            distribution,
                            n,
                            seed,
                            element_kind,
                        });
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Verify(grid) => {
            let report = run_verify(&grid.configs()?, &grid.specs()?);
            for failure in &report.failures {
                eprintln!("FAIL {failure}");
            }
            println!(
                "verified {} runs, {} failures",
                report.checked,
                report.failures.len()
            );
            Ok(report.exit_code())
        }
        Command::Stats { grid, csv } => {
            let records = run_stats(&grid.configs()?, &grid.specs()?);
            write_csv(&csv, &records)?;
            println!("wrote {} rows to {}", records.len(), csv.display());
            Ok(0)
        }
        Command::Bench {
            grid,
            csv,
            volume_mb,
        } => {
            let (records, meta) = run_bench(&grid.configs()?, &grid.specs()?, volume_mb << 20);
            for w in &meta.warnings {
                eprintln!("warning: {w}");
            }
            write_csv(&csv, &records)?;
            meta.write(&csv)?;
            println!("wrote {} rows to {}", records.len(), csv.display());
            Ok(0)
        }
        Command::Plot {
            csv,
            x,
            y,
            group_by,
            out,
        } => {
            let text = emit_plot_data(&csv, &x, &y, &group_by)?;
            match out {
                Some(path) => std::fs::write(&path, text)
                    .with_context(|| format!("cannot write {}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(0)
        }
    }
}
