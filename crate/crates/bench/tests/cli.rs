use std::path::Path;
use std::process::{Command, Output};

use blockqs::inputs::{Distribution, ElementKind, InputSpec};
use blockqs_bench::{read_csv, verify_keys_with, Algo, AlgoConfig, BenchMeta, BenchRecord};

fn blockqs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blockqs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn stats_csv(dir: &Path, name: &str, args: &[&str]) -> Vec<BenchRecord> {
    let path = dir.join(name);
    let mut full = vec!["stats", "--csv", path.to_str().unwrap()];
    full.extend_from_slice(args);
    let out = blockqs(&full);
    assert!(out.status.success(), "{}", stderr(&out));
    read_csv(&path).unwrap()
}

#[test]
fn verify_with_defaults_succeeds() {
    let out = blockqs(&["verify"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(
        stdout(&out).contains("verified 840 runs, 0 failures"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn verify_with_no_inputs_succeeds() {
    let out = blockqs(&["verify", "--seeds", "0"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("verified 0 runs"));
}

#[test]
fn broken_comparator_fails_verification() {
    let specs: Vec<InputSpec> = (1..=3)
        .map(|seed| InputSpec {
            distribution: Distribution::RandomPerm,
            n: 1000,
            seed,
            element_kind: ElementKind::Key32,
        })
        .collect();
    let configs: Vec<_> = Algo::ALL.into_iter().map(AlgoConfig::new).collect();
    // orders by key mod 7 only, so ties hide misordered keys
    let report = verify_keys_with(&configs, &specs, |a: &i32, b: &i32| a % 7 < b % 7);
    assert_ne!(report.exit_code(), 0);
    assert_eq!(report.failures.len(), configs.len() * specs.len());
    assert!(
        report.failures[0].contains("seed=1"),
        "{}",
        report.failures[0]
    );
}

#[test]
fn bad_flags_exit_nonzero_with_a_reason() {
    let out = blockqs(&["verify", "--algo", "bogo"]);
    assert!(!out.status.success());
    assert!(
        stderr(&out).contains("unknown algorithm `bogo`"),
        "{}",
        stderr(&out)
    );
    let out = blockqs(&[
        "stats",
        "--csv",
        "/nonexistent-dir/r.csv",
        "--n",
        "4",
        "--seeds",
        "1",
    ]);
    assert!(!out.status.success());
    assert!(
        stderr(&out).contains("/nonexistent-dir/r.csv"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn empty_input_rows_have_zero_counters() {
    let dir = tempfile::tempdir().unwrap();
    let rows = stats_csv(dir.path(), "z.csv", &["--n", "0", "--seeds", "2"]);
    assert_eq!(rows.len(), 12);
    for r in rows {
        assert_eq!(r.time_ns_per_element, None);
        let counters = [
            r.comparisons,
            r.swaps,
            r.scanned_elements,
            r.modeled_misses_total,
            r.insertion_misses,
            r.partition_calls,
            r.heapsort_calls,
        ];
        assert_eq!(counters, [0; 7], "{}", r.algo);
    }
}

#[test]
fn block_rows_stay_within_the_misprediction_budget() {
    let dir = tempfile::tempdir().unwrap();
    let rows = stats_csv(
        dir.path(),
        "s.csv",
        &["--algo", "block,introsort", "--n", "65536"],
    );
    assert_eq!(rows.len(), 40);
    let block: Vec<_> = rows.iter().filter(|r| r.algo == "block").collect();
    assert_eq!(block.len(), 20);
    for r in block {
        let budget = 6.0 / r.block_size as f64 * r.comparisons as f64 + 3.0 * r.n as f64;
        assert!((r.modeled_misses_total as f64) <= budget, "seed {}", r.seed);
    }
}

#[test]
fn counters_are_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "--dist", "all", "--elem", "all", "--n", "3000", "--seeds", "2",
    ];
    let a = stats_csv(dir.path(), "a.csv", &args);
    let b = stats_csv(dir.path(), "b.csv", &args);
    assert_eq!(a.len(), 6 * 14 * 3 * 2);
    assert_eq!(a, b);
}

#[test]
fn bench_repeats_small_inputs_and_writes_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let p = path.to_str().unwrap();
    let out = blockqs(&[
        "bench",
        "--csv",
        p,
        "--algo",
        "block,introsort",
        "--n",
        "256",
        "--seeds",
        "2",
        "--volume-mb",
        "1",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let rows = read_csv(&path).unwrap();
    assert_eq!(rows.len(), 4);
    for r in &rows {
        assert_eq!(r.repetitions, Some(1024));
        assert!(r.time_ns_per_element.unwrap() > 0.0);
    }
    let meta: BenchMeta =
        serde_json::from_str(&std::fs::read_to_string(BenchMeta::sidecar_path(&path)).unwrap())
            .unwrap();
    assert_eq!(meta.volume_bytes, 1 << 20);
    assert!(meta.prng.contains("ChaCha8"));
}

#[test]
fn block_size_sweep_feeds_the_plot_emitter() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let p = path.to_str().unwrap();
    let blocks = "8,16,32,64,128,256,512,1024,2048,4096,8192,16384,32768,65536";
    let out = blockqs(&[
        "bench",
        "--csv",
        p,
        "--algo",
        "block",
        "--block",
        blocks,
        "--n",
        "4096",
        "--seeds",
        "1",
        "--volume-mb",
        "1",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let out = blockqs(&[
        "plot",
        "--csv",
        p,
        "--x",
        "log2(block_size)",
        "--y",
        "time_ns_per_element",
        "--group-by",
        "algo,n",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# group: algo=block,n=4096");
    assert_eq!(lines.len(), 15);
    assert!(lines[1].starts_with("3 "));
    assert!(lines[14].starts_with("16 "));
}

#[test]
fn misses_per_element_plot_groups_by_algorithm() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.csv");
    stats_csv(
        dir.path(),
        "m.csv",
        &[
            "--algo",
            "block,introsort",
            "--n-min",
            "10",
            "--n-max",
            "13",
            "--seeds",
            "3",
        ],
    );
    let plot = dir.path().join("m.dat");
    let out = blockqs(&[
        "plot",
        "--csv",
        path.to_str().unwrap(),
        "--x",
        "log2(n)",
        "--y",
        "modeled_misses_total/n",
        "--out",
        plot.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(&plot).unwrap();
    let groups: Vec<&str> = text.split("\n\n").collect();
    assert_eq!(groups.len(), 2);
    assert!(groups[0].starts_with("# group: algo=block\n10 "));
    assert!(groups[1].starts_with("# group: algo=introsort\n10 "));
    assert_eq!(groups[1].lines().count(), 5);
}

#[test]
fn plot_edge_cases() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("e.csv");
    std::fs::write(&empty, "").unwrap();
    let out = blockqs(&["plot", "--csv", empty.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "");

    let single = dir.path().join("one.csv");
    stats_csv(
        dir.path(),
        "one.csv",
        &["--algo", "block", "--n", "100", "--seeds", "1"],
    );
    let out = blockqs(&[
        "plot",
        "--csv",
        single.to_str().unwrap(),
        "--x",
        "n",
        "--y",
        "comparisons",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 2);

    let out = blockqs(&["plot", "--csv", single.to_str().unwrap(), "--y", "cycles"]);
    assert!(!out.status.success());
    let err = stderr(&out);
    assert!(
        err.contains("unknown column `cycles`") && err.contains("modeled_misses_total"),
        "{err}"
    );
}

/// Least-squares slope of y against x.
fn slope(points: &[(f64, f64)]) -> f64 {
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[test]
fn lomuto_misses_per_element_are_flat_in_n() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "--algo",
        "tuned-lomuto,introsort",
        "--n-min",
        "10",
        "--n-max",
        "17",
        "--seeds",
        "5",
    ];
    let rows = stats_csv(dir.path(), "l.csv", &args);
    let per_n = |algo: &str| -> Vec<(f64, f64)> {
        (10..=17)
            .map(|e| {
                let n = 1usize << e;
                let sel: Vec<_> = rows.iter().filter(|r| r.algo == algo && r.n == n).collect();
                let mean = sel
                    .iter()
                    .map(|r| r.modeled_misses_total as f64)
                    .sum::<f64>()
                    / sel.len() as f64;
                (e as f64, mean / n as f64)
            })
            .collect()
    };
    let lomuto = slope(&per_n("tuned-lomuto"));
    let intro = slope(&per_n("introsort"));
    // introsort pays a constant share per level, Lomuto only a bounded amount per element
    assert!(lomuto.abs() < 0.05, "lomuto slope {lomuto}");
    assert!(intro > 0.2, "introsort slope {intro}");
}
