//! Correctness checks: sortedness, multiset preservation, partition exactness
//! and the driver's stack bound.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use blockqs::inputs::{generate, generate_keys, is_sorted_by_element, Element, InputSpec};
use blockqs::{stack_bound, SortStats};

use crate::algo::AlgoConfig;
use crate::with_elements;

/// Order-independent summary of a multiset: length plus two sums of element hashes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fingerprint {
    len: usize,
    sum: u64,
    sum_sq: u64,
}

pub fn fingerprint<E: Element>(v: &[E]) -> Fingerprint {
    let mut fp = Fingerprint {
        len: v.len(),
        sum: 0,
        sum_sq: 0,
    };
    for e in v {
        let mut h = DefaultHasher::new();
        e.digest().hash(&mut h);
        let x = h.finish();
        fp.sum = fp.sum.wrapping_add(x);
        fp.sum_sq = fp.sum_sq.wrapping_add(x.wrapping_mul(x));
    }
    fp
}

/// Checks a sorted output against the input's fingerprint and the run's counters.
pub fn check_output<E: Element>(
    output: &[E],
    expected: Fingerprint,
    stats: &SortStats,
) -> Result<(), String> {
    if !is_sorted_by_element(output) {
        return Err("output not sorted".into());
    }
    if fingerprint(output) != expected {
        return Err("output is not a permutation of the input".into());
    }
    if stats.exactness_violations() != 0 {
        return Err(format!(
            "{} partition calls off the exact comparison count",
            stats.exactness_violations()
        ));
    }
    let bound = stack_bound(output.len()) as u64;
    if stats.max_stack_depth() > bound {
        return Err(format!(
            "stack depth {} exceeds bound {bound}",
            stats.max_stack_depth()
        ));
    }
    Ok(())
}

#[derive(Debug, Default)]
pub struct VerifyReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

/// Sorts every input in `specs` with every configuration and checks the result.
/// Each failure names the full configuration and input for replay.
pub fn run_verify(configs: &[AlgoConfig], specs: &[InputSpec]) -> VerifyReport {
    let mut report = VerifyReport::default();
    for spec in specs {
        let input = generate(spec);
        let expected = with_elements!(&input, |v| fingerprint(v));
        for cfg in configs {
            let mut work = input.clone();
            let outcome = with_elements!(&mut work, |v| {
                let stats = cfg.sort_counted(v);
                check_output(v, expected, &stats)
            });
            report.checked += 1;
            if let Err(why) = outcome {
                report.failures.push(format!("{cfg} {spec}: {why}"));
            }
        }
    }
    report
}

/// Like [`run_verify`] on 32-bit keys, but sorting with `is_less` instead of
/// the natural order. Results are still judged by the natural order.
pub fn verify_keys_with<F>(configs: &[AlgoConfig], specs: &[InputSpec], is_less: F) -> VerifyReport
where
    F: Fn(&i32, &i32) -> bool + Copy,
{
    let mut report = VerifyReport::default();
    for spec in specs {
        let input = generate_keys(spec);
        let expected = fingerprint(&input);
        for cfg in configs {
            let mut v = input.clone();
            let stats = SortStats::new();
            cfg.sort_counted_by(&mut v, is_less, &stats);
            report.checked += 1;
            if let Err(why) = check_output(&v, expected, &stats) {
                report.failures.push(format!("{cfg} {spec}: {why}"));
            }
        }
    }
    report
}
