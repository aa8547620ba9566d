//! The quicksort main loop.
//!
//! Iterative with an explicit stack: after each partition the larger side is
//! pushed and the smaller side handled next, so at most `ceil(log2 n) + 1`
//! frames are ever live. Leaves go to insertion sort, or to heapsort once the
//! depth limit is reached.

use crate::config::{ceil_log2, SortConfig};
use crate::dup::{duplicate_check, EqualRange};
use crate::partition::{block_partition_with, BlockBuffers};
use crate::pivot::choose_pivot;
use crate::small::{heap_sort, insertion_sort};
use crate::stats::{counting_comparator, EventClass, Recorder, SortStats};

/// Enough frames for any slice that fits in memory.
const STACK_FRAMES: usize = usize::BITS as usize + 1;

#[derive(Clone, Copy, Default)]
struct Frame {
    lo: usize,
    hi: usize,
    depth: usize,
}

/// Shared driver. `step` partitions a view longer than `threshold` and
/// returns the range that is already in its final place.
pub(crate) fn drive<T, F, R, P>(
    v: &mut [T],
    threshold: usize,
    depth_limit: usize,
    is_less: &mut F,
    rec: &R,
    mut step: P,
) where
    F: FnMut(&T, &T) -> bool,
    R: Recorder + ?Sized,
    P: FnMut(&mut [T], &mut F, &R) -> EqualRange,
{
    if v.len() < 2 {
        return;
    }
    let mut stack = [Frame::default(); STACK_FRAMES];
    let mut top = 0;
    let mut cur = Frame {
        lo: 0,
        hi: v.len(),
        depth: 0,
    };
    rec.stack_depth(1);
    loop {
        let len = cur.hi - cur.lo;
        if cur.depth < depth_limit && len > threshold {
            let done = step(&mut v[cur.lo..cur.hi], is_less, rec);
            let left = Frame {
                lo: cur.lo,
                hi: cur.lo + done.lo,
                depth: cur.depth + 1,
            };
            let right = Frame {
                lo: cur.lo + done.hi + 1,
                hi: cur.hi,
                depth: cur.depth + 1,
            };
            if left.hi - left.lo > right.hi - right.lo {
                stack[top] = left;
                cur = right;
            } else {
                rec.branch_event(EventClass::IfNotTaken, 1);
                stack[top] = right;
                cur = left;
            }
            top += 1;
            rec.stack_depth(top + 1);
        } else {
            rec.branch_event(EventClass::IfNotTaken, 1);
            let leaf = &mut v[cur.lo..cur.hi];
            if len > threshold {
                heap_sort(leaf, is_less, rec);
            } else {
                rec.branch_event(EventClass::IfNotTaken, 1);
                insertion_sort(leaf, is_less, rec);
            }
            if top == 0 {
                break;
            }
            top -= 1;
            cur = stack[top];
        }
    }
    rec.branch_event(EventClass::LoopExit, 1);
}

/// Largest stack height the driver can reach on `n` elements.
pub fn stack_bound(n: usize) -> usize {
    ceil_log2(n) + 1
}

fn sort_impl<T, F, R>(v: &mut [T], cfg: &SortConfig, is_less: &mut F, rec: &R)
where
    F: FnMut(&T, &T) -> bool,
    R: Recorder + ?Sized,
{
    if let Err(e) = cfg.validate() {
        panic!("invalid sort configuration: {e}");
    }
    if v.len() <= cfg.insertion_threshold {
        drive(
            v,
            cfg.insertion_threshold,
            0,
            is_less,
            rec,
            |_, _, _| unreachable!(),
        );
        return;
    }
    let mut bufs = BlockBuffers::new(cfg.block_size);
    let limit = cfg.depth_limit_of(v.len());
    drive(
        v,
        cfg.insertion_threshold,
        limit,
        is_less,
        rec,
        |view, is_less, rec| partition_step(view, cfg, &mut bufs, is_less, rec),
    );
}

fn partition_step<T, F, R>(
    v: &mut [T],
    cfg: &SortConfig,
    bufs: &mut BlockBuffers,
    is_less: &mut F,
    rec: &R,
) -> EqualRange
where
    F: FnMut(&T, &T) -> bool,
    R: Recorder + ?Sized,
{
    let len = v.len();
    let choice = choose_pivot(v, cfg.pivot_strategy, cfg.duplicate_check, is_less);
    let cut = if choice.ends_sorted {
        // the sampled ends already sit on the correct sides
        1 + block_partition_with(
            &mut v[1..len - 1],
            choice.index - 1,
            cfg.variant,
            bufs,
            is_less,
            rec,
        )
    } else {
        block_partition_with(v, choice.index, cfg.variant, bufs, is_less, rec)
    };
    if cfg.duplicate_check {
        let smaller = cut.min(len - 1 - cut);
        let unbalanced_small = smaller < len / 8 && len < 1024;
        if !(choice.duplicate_in_sample | unbalanced_small) {
            return EqualRange::single(cut);
        }
        rec.branch_event(EventClass::IfNotTaken, 1);
        return duplicate_check(v, cut, is_less, rec);
    }
    EqualRange::single(cut)
}

/// Sorts `v` with BlockQuicksort under `cfg`.
pub fn block_quicksort_by<T, F>(v: &mut [T], cfg: &SortConfig, mut is_less: F)
where
    F: FnMut(&T, &T) -> bool,
{
    sort_impl(v, cfg, &mut is_less, &());
}

/// Like [`block_quicksort_by`], tallying comparisons, swaps, calls and modeled
/// branch mispredictions into `stats`.
pub fn block_quicksort<T, F>(v: &mut [T], cfg: &SortConfig, is_less: F, stats: &SortStats)
where
    F: FnMut(&T, &T) -> bool,
{
    let mut is_less = counting_comparator(is_less, stats);
    sort_impl(v, cfg, &mut is_less, stats);
}

/// Sorts `v` in ascending order with the default configuration.
pub fn block_sort<T: Ord>(v: &mut [T]) {
    block_quicksort_by(v, &SortConfig::default(), T::lt);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{PivotStrategy, Variant};
    use proptest::prelude::*;

    fn lt(a: &i32, b: &i32) -> bool {
        a < b
    }

    #[test]
    fn tiny_inputs() {
        let mut empty: [i32; 0] = [];
        block_sort(&mut empty);
        let mut v = [5, 3, 1];
        block_sort(&mut v);
        assert_eq!(v, [1, 3, 5]);
    }

    #[test]
    fn empty_run_records_nothing() {
        let stats = SortStats::new();
        block_quicksort(&mut [] as &mut [i32], &SortConfig::default(), lt, &stats);
        assert_eq!(stats, SortStats::new());
    }

    #[test]
    fn two_elements_need_a_comparison() {
        let stats = SortStats::new();
        let mut v = [2, 1];
        block_quicksort(&mut v, &SortConfig::default(), lt, &stats);
        assert_eq!(v, [1, 2]);
        assert!(stats.comparisons() >= 1);
    }

    #[test]
    fn depth_limit_hands_over_to_heapsort() {
        let mut v: Vec<i32> = (0..5000).map(|i| (i * 7919) % 5000).collect();
        let stats = SortStats::new();
        let mut less = counting_comparator(lt, &stats);
        drive(&mut v, 16, 1, &mut less, &stats, |view, less, rec| {
            let cut = crate::partition::hoare_partition(view, 0, less, rec);
            EqualRange::single(cut)
        });
        assert!(v.windows(2).all(|w| w[0] <= w[1]));
        assert!(stats.heapsort_calls() >= 1);
    }

    #[test]
    fn duplicate_check_avoids_heapsort_on_few_keys() {
        let cfg = SortConfig::default().with_duplicate_check(true);
        let mut v: Vec<i32> = (0..1 << 14).map(|i| (i * i) % 7).collect();
        let stats = SortStats::new();
        block_quicksort(&mut v, &cfg, lt, &stats);
        assert!(v.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(stats.heapsort_calls(), 0);
    }

    fn configs() -> impl Strategy<Value = SortConfig> {
        let variants = prop_oneof![
            Just(Variant::Simple),
            Just(Variant::Tuned),
            Just(Variant::HoareFinish)
        ];
        let pivots = prop_oneof![
            Just(PivotStrategy::Mo3),
            Just(PivotStrategy::Mo5),
            Just(PivotStrategy::Mo23),
            Just(PivotStrategy::Mo3xMo3),
            Just(PivotStrategy::Mo3xMo5),
            Just(PivotStrategy::Mo5xMo5),
            Just(PivotStrategy::MoSqrtN),
            (1u32..6).prop_map(PivotStrategy::Skewed),
        ];
        (variants, pivots, any::<bool>(), 1u32..6).prop_map(|(variant, pivot, dc, b)| {
            SortConfig::new(variant)
                .with_pivot(pivot)
                .with_duplicate_check(dc)
                .with_block_size(1 << b)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn sorts_and_respects_stack_bound(
            cfg in configs(),
            v in proptest::collection::vec(-40i32..40, 0..2000),
        ) {
            let mut expected = v.clone();
            expected.sort();
            let mut w = v.clone();
            let stats = SortStats::new();
            block_quicksort(&mut w, &cfg, lt, &stats);
            prop_assert_eq!(&w, &expected);
            prop_assert!(stats.max_stack_depth() <= stack_bound(v.len()) as u64);
            prop_assert_eq!(stats.exactness_violations(), 0);
        }
    }
}
