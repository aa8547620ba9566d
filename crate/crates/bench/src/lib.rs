//! Verification, counter reports, timing benchmarks and plot data for the
//! `blockqs` sorting crate. The `blockqs` binary is a thin wrapper over [`cli`].

pub mod algo;
pub mod cli;
pub mod plot;
pub mod record;
pub mod run;
pub mod verify;

pub use algo::{sort_copy_counted, Algo, AlgoConfig};
pub use plot::emit_plot_data;
pub use record::{read_csv, write_csv, BenchRecord, COLUMNS};
pub use run::{
    clock_resolution, repetitions, run_bench, run_stats, BenchMeta, DEFAULT_VOLUME_BYTES,
};
pub use verify::{
    check_output, fingerprint, run_verify, verify_keys_with, Fingerprint, VerifyReport,
};
