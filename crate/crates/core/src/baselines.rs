//! Reference competitors, instrumented the same way as the block sorter.

use std::ptr;

use crate::config::{floor_log2, DEFAULT_INSERTION_THRESHOLD};
use crate::driver::drive;
use crate::dup::EqualRange;
use crate::partition::hoare_partition;
use crate::pivot::median_of_3;
use crate::small::{heap_sort, insertion_sort};
use crate::stats::{counting_comparator, EventClass, Recorder, SortStats};

/// Which three elements the introsort baseline samples for its pivot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MedianSample {
    /// First, middle, last (GCC up to 4.7). The pivot of a partition stays at
    /// the front of the left part, so the left child always samples its own
    /// maximum.
    #[default]
    FirstMiddleLast,
    /// Second, middle, last (later GCC releases).
    SecondMiddleLast,
}

/// Introsort shaped like the classic GCC `std::sort`: median of first,
/// middle and last moved to the front, unguarded Hoare partition, recursion
/// on the right side, depth limit `2 * floor(log2 n)` before heapsort, and one
/// final insertion sort over the whole array.
pub fn introsort_classic<T, F>(v: &mut [T], is_less: F, stats: &SortStats)
where
    F: FnMut(&T, &T) -> bool,
{
    introsort_classic_with(v, MedianSample::FirstMiddleLast, is_less, stats);
}

/// [`introsort_classic`] with a choice of pivot sample.
pub fn introsort_classic_with<T, F>(
    v: &mut [T],
    sample: MedianSample,
    is_less: F,
    stats: &SortStats,
) where
    F: FnMut(&T, &T) -> bool,
{
    let mut is_less = counting_comparator(is_less, stats);
    introsort_impl(v, sample, &mut is_less, stats);
}

/// Uninstrumented [`introsort_classic`].
pub fn introsort_classic_by<T, F>(v: &mut [T], mut is_less: F)
where
    F: FnMut(&T, &T) -> bool,
{
    introsort_impl(v, MedianSample::FirstMiddleLast, &mut is_less, &());
}

fn introsort_impl<T, F, R>(v: &mut [T], sample: MedianSample, is_less: &mut F, rec: &R)
where
    F: FnMut(&T, &T) -> bool,
    R: Recorder + ?Sized,
{
    if v.len() < 2 {
        return;
    }
    introsort_loop(v, 2 * floor_log2(v.len()), sample, is_less, rec);
    insertion_sort(v, is_less, rec);
}

fn introsort_loop<T, F, R>(
    mut v: &mut [T],
    mut depth_limit: usize,
    sample: MedianSample,
    is_less: &mut F,
    rec: &R,
) where
    F: FnMut(&T, &T) -> bool,
    R: Recorder + ?Sized,
{
    while v.len() > DEFAULT_INSERTION_THRESHOLD {
        if depth_limit != 0 {
            depth_limit -= 1;
        } else {
            rec.branch_event(EventClass::IfNotTaken, 1);
            heap_sort(v, is_less, rec);
            return;
        }
        rec.partition_called();
        let len = v.len();
        match sample {
            MedianSample::FirstMiddleLast => {
                move_median_first(v, 0, len / 2, len - 1, is_less, rec)
            }
            MedianSample::SecondMiddleLast => {
                move_median_first(v, 1, len / 2, len - 1, is_less, rec)
            }
        }
        let cut = unguarded_partition(v, is_less, rec);
        let (left, right) = std::mem::take(&mut v).split_at_mut(cut);
        introsort_loop(right, depth_limit, sample, is_less, rec);
        v = left;
    }
    rec.branch_event(EventClass::LoopExit, 1);
}

/// Moves the median of `v[a]`, `v[b]`, `v[c]` to `v[0]` with nested branches.
fn move_median_first<T, F, R>(v: &mut [T], a: usize, b: usize, c: usize, is_less: &mut F, rec: &R)
where
    F: FnMut(&T, &T) -> bool,
    R: Recorder + ?Sized,
{
    let mut miss = 0;
    let median = if is_less(&v[a], &v[b]) {
        if is_less(&v[b], &v[c]) {
            b
        } else {
            miss += 1;
            if is_less(&v[a], &v[c]) {
                c
            } else {
                miss += 1;
                a
            }
        }
    } else {
        miss += 1;
        if is_less(&v[a], &v[c]) {
            a
        } else {
            miss += 1;
            if is_less(&v[b], &v[c]) {
                c
            } else {
                miss += 1;
                b
            }
        }
    };
    rec.branch_event(EventClass::IfNotTaken, miss);
    if median != 0 {
        v.swap(0, median);
        rec.swapped(1);
    }
}

/// Partitions `v[1..]` around the pivot `v[0]` without bounds checks in the
/// scanning loops. Returns the start of the right part (at least 1).
///
/// Needs an element `>= pivot` and one `<= pivot` in `v[1..]`. The other two
/// sampled elements left behind by [`move_median_first`] are exactly that.
fn unguarded_partition<T, F, R>(v: &mut [T], is_less: &mut F, rec: &R) -> usize
where
    F: FnMut(&T, &T) -> bool,
    R: Recorder + ?Sized,
{
    let len = v.len();
    let (head, rest) = v.split_at_mut(1);
    let pivot = &head[0];
    let base = rest.as_mut_ptr();
    let mut first = 0;
    let mut last = len - 1;
    let mut swaps = 0;
    // SAFETY: in the first round the two sampled non-medians stop the scans
    // inside `rest`. After a swap, `rest[first - 1] <= pivot` and
    // `rest[last] >= pivot` stop the following round. The debug assertions
    // check these bounds.
    let cut = unsafe {
        loop {
            while is_less(&*base.add(first), pivot) {
                first += 1;
                debug_assert!(first < len - 1);
            }
            rec.branch_event(EventClass::LoopExit, 1);
            last -= 1;
            while is_less(pivot, &*base.add(last)) {
                debug_assert!(last > 0);
                last -= 1;
            }
            rec.branch_event(EventClass::LoopExit, 1);
            if first < last {
                ptr::swap_nonoverlapping(base.add(first), base.add(last), 1);
                swaps += 1;
                first += 1;
            } else {
                rec.branch_event(EventClass::IfNotTaken, 1);
                break first;
            }
        }
    };
    rec.swapped(swaps);
    cut + 1
}

/// Lomuto partition around `v[pivot_index]`: elements strictly less than the
/// pivot end up before the returned cut, the pivot at the cut, the rest after.
///
/// The comparison result advances the store index directly; every element is
/// swapped unconditionally, which counts as one swap each.
pub fn lomuto_partition_branchless<T, F, R>(
    v: &mut [T],
    pivot_index: usize,
    is_less: &mut F,
    rec: &R,
) -> usize
where
    F: FnMut(&T, &T) -> bool,
    R: Recorder + ?Sized,
{
    assert!(pivot_index < v.len());
    rec.partition_called();
    let last = v.len() - 1;
    v.swap(pivot_index, last);
    let (rest, tail) = v.split_at_mut(last);
    let pivot = &tail[0];
    let base = rest.as_mut_ptr();
    let mut store = 0;
    for i in 0..last {
        // SAFETY: `store <= i < last`; when they coincide the swap is a no-op.
        unsafe {
            let less = is_less(&*base.add(i), pivot);
            ptr::swap(base.add(store), base.add(i));
            store += less as usize;
        }
    }
    rec.branch_event(EventClass::LoopExit, 1);
    v.swap(store, last);
    rec.swapped(last as u64 + 2);
    store
}

fn lomuto_sort_impl<T, F, R>(v: &mut [T], is_less: &mut F, rec: &R)
where
    F: FnMut(&T, &T) -> bool,
    R: Recorder + ?Sized,
{
    let limit = crate::config::depth_limit_of(v.len());
    drive(
        v,
        DEFAULT_INSERTION_THRESHOLD,
        limit,
        is_less,
        rec,
        |view, is_less, rec| {
            let len = view.len();
            let mid = median_of_3(view, 0, len / 2, len - 1, is_less);
            EqualRange::single(lomuto_partition_branchless(view, mid, is_less, rec))
        },
    );
}

/// Quicksort with the branchless Lomuto partitioner, median-of-three pivots
/// and the same explicit-stack driver as the block sorter.
pub fn tuned_quicksort_lomuto<T, F>(v: &mut [T], is_less: F, stats: &SortStats)
where
    F: FnMut(&T, &T) -> bool,
{
    let mut is_less = counting_comparator(is_less, stats);
    lomuto_sort_impl(v, &mut is_less, stats);
}

/// Uninstrumented [`tuned_quicksort_lomuto`].
pub fn tuned_quicksort_lomuto_by<T, F>(v: &mut [T], mut is_less: F)
where
    F: FnMut(&T, &T) -> bool,
{
    lomuto_sort_impl(v, &mut is_less, &());
}

/// Quicksort with Hoare partitioning on the block sorter's driver: same
/// median-of-three (with sorted ends excluded), same cutoffs. Differs from
/// [`block_quicksort`](crate::block_quicksort) only in the partitioner.
pub fn quicksort_hoare<T, F>(v: &mut [T], is_less: F, stats: &SortStats)
where
    F: FnMut(&T, &T) -> bool,
{
    let mut is_less = counting_comparator(is_less, stats);
    let limit = crate::config::depth_limit_of(v.len());
    drive(
        v,
        DEFAULT_INSERTION_THRESHOLD,
        limit,
        &mut is_less,
        stats,
        |view, is_less, rec| {
            rec.partition_called();
            let len = view.len();
            let mid = median_of_3(view, 0, len / 2, len - 1, is_less);
            let cut = 1 + hoare_partition(&mut view[1..len - 1], mid - 1, is_less, rec);
            EqualRange::single(cut)
        },
    );
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::tests::assert_partitioned;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn lt(a: &i32, b: &i32) -> bool {
        a < b
    }

    #[test]
    fn introsort_small() {
        let mut v = [3, 1, 2];
        introsort_classic(&mut v, lt, &SortStats::new());
        assert_eq!(v, [1, 2, 3]);
    }

    #[test]
    fn introsort_reversed_4096() {
        let mut v: Vec<i32> = (1..=4096).rev().collect();
        let stats = SortStats::new();
        introsort_classic(&mut v, lt, &stats);
        assert_eq!(v, (1..=4096).collect::<Vec<_>>());
        assert!(stats.comparisons() > 4096);
        assert!(stats.partition_calls() > 0);
    }

    #[test]
    fn lomuto_examples() {
        let mut v = [1, 2, 3];
        assert_eq!(lomuto_partition_branchless(&mut v, 1, &mut lt, &()), 1);
        assert_eq!(v, [1, 2, 3]);
        let mut v = [7; 64];
        assert_eq!(lomuto_partition_branchless(&mut v, 13, &mut lt, &()), 0);
    }

    #[test]
    fn lomuto_random_256_strict_predicate() {
        let mut rng = ChaCha8Rng::seed_from_u64(256);
        let mut v: Vec<i32> = (0..256).collect();
        v.shuffle(&mut rng);
        let pivot = v[77];
        let cut = lomuto_partition_branchless(&mut v, 77, &mut lt, &());
        assert_eq!(v[cut], pivot);
        assert!(v[..cut].iter().all(|&x| x < pivot));
        assert!(v[cut + 1..].iter().all(|&x| x >= pivot));
    }

    #[test]
    fn lomuto_sort_on_few_keys_degrades() {
        let n = 1 << 14;
        let root = 128;
        let mut v: Vec<i32> = (0..n).map(|i| i % root).collect();
        let stats = SortStats::new();
        tuned_quicksort_lomuto(&mut v, lt, &stats);
        assert!(v.windows(2).all(|w| w[0] <= w[1]));
        let nlogn = n as f64 * 14.0;
        assert!(stats.heapsort_calls() > 0 || stats.comparisons() as f64 > 1.2 * nlogn);
    }

    #[test]
    fn lomuto_sort_empty() {
        let mut v: [i32; 0] = [];
        tuned_quicksort_lomuto(&mut v, lt, &SortStats::new());
    }

    proptest! {
        #[test]
        fn baselines_sort(v in proptest::collection::vec(-50i32..50, 0..1500)) {
            let mut expected = v.clone();
            expected.sort();
            let mut a = v.clone();
            introsort_classic(&mut a, lt, &SortStats::new());
            prop_assert_eq!(&a, &expected);
            let mut b = v.clone();
            tuned_quicksort_lomuto(&mut b, lt, &SortStats::new());
            prop_assert_eq!(&b, &expected);
            let mut c = v.clone();
            quicksort_hoare(&mut c, lt, &SortStats::new());
            prop_assert_eq!(&c, &expected);
        }

        #[test]
        fn unguarded_partition_predicate(mut v in proptest::collection::vec(-20i32..20, 17..400)) {
            let len = v.len();
            move_median_first(&mut v, 0, len / 2, len - 1, &mut lt, &());
            let pivot = v[0];
            let cut = unguarded_partition(&mut v, &mut lt, &());
            prop_assert!(cut >= 1 && cut < len);
            prop_assert!(v[..cut].iter().all(|&x| x <= pivot));
            prop_assert!(v[cut..].iter().all(|&x| x >= pivot));
            let _ = assert_partitioned::<i32>;
        }
    }
}
