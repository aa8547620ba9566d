//! Pivot selection.
//!
//! Small samples are sorted in place by branchless compare-exchange networks.
//! Larger samples are gathered to the front of the view and their median is
//! found by quickselect.

use std::mem::{self, MaybeUninit};
use std::ptr;

use crate::config::PivotStrategy;
use crate::partition::hoare_partition;
use crate::small::insertion_sort;

/// Views shorter than this are handed to MoSqrtN's fallback.
pub const SQRT_SAMPLE_MIN_LEN: usize = 20_000;

/// Result of pivot selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PivotChoice {
    pub index: usize,
    /// The median of three equals one of its neighbours in the sorted sample.
    /// Only computed for median-of-three when asked for.
    pub duplicate_in_sample: bool,
    /// `v[0] <= v[index] <= v[len - 1]` is known, so the ends need no partitioning.
    pub ends_sorted: bool,
}

/// Puts `v[a]` and `v[b]` in order by selecting sources from the comparison
/// result instead of branching on it.
pub fn sort_pair_branchless<T, F>(v: &mut [T], a: usize, b: usize, is_less: &mut F)
where
    F: FnMut(&T, &T) -> bool,
{
    assert!(a != b && a < v.len() && b < v.len());
    let base = v.as_mut_ptr();
    // SAFETY: both positions are distinct and in bounds. Both values are read
    // out bitwise and written back exactly once, so nothing is duplicated or
    // dropped. The comparator runs before any element is moved.
    unsafe {
        let pa = base.add(a);
        let pb = base.add(b);
        let swap = is_less(&*pb, &*pa);
        let lo_src = if swap { pb } else { pa };
        let hi_src = if swap { pa } else { pb };
        let mut lo = MaybeUninit::<T>::uninit();
        let mut hi = MaybeUninit::<T>::uninit();
        ptr::copy_nonoverlapping(lo_src, lo.as_mut_ptr(), 1);
        ptr::copy_nonoverlapping(hi_src, hi.as_mut_ptr(), 1);
        ptr::copy_nonoverlapping(lo.as_ptr(), pa, 1);
        ptr::copy_nonoverlapping(hi.as_ptr(), pb, 1);
    }
}

/// Sorts the elements at positions `a`, `b`, `c` among themselves; returns `b`.
pub fn median_of_3<T, F>(v: &mut [T], a: usize, b: usize, c: usize, is_less: &mut F) -> usize
where
    F: FnMut(&T, &T) -> bool,
{
    sort_pair_branchless(v, a, b, is_less);
    sort_pair_branchless(v, b, c, is_less);
    sort_pair_branchless(v, a, b, is_less);
    b
}

/// Nine-comparator sorting network for five elements.
pub(crate) const SORT5_NETWORK: [(usize, usize); 9] = [
    (0, 1),
    (3, 4),
    (2, 4),
    (2, 3),
    (1, 4),
    (0, 3),
    (0, 2),
    (1, 3),
    (1, 2),
];

/// Sorts the elements at the five positions among themselves; returns `p[2]`.
pub fn median_of_5<T, F>(v: &mut [T], p: [usize; 5], is_less: &mut F) -> usize
where
    F: FnMut(&T, &T) -> bool,
{
    for (i, j) in SORT5_NETWORK {
        sort_pair_branchless(v, p[i], p[j], is_less);
    }
    p[2]
}

/// `k` positions spread evenly over `0..len`, including both ends.
fn spread<const K: usize>(len: usize) -> [usize; K] {
    std::array::from_fn(|i| i * (len - 1) / (K - 1))
}

fn median_of_medians_3x3<T, F>(v: &mut [T], is_less: &mut F) -> usize
where
    F: FnMut(&T, &T) -> bool,
{
    let p = spread::<9>(v.len());
    let m: [usize; 3] =
        std::array::from_fn(|g| median_of_3(v, p[3 * g], p[3 * g + 1], p[3 * g + 2], is_less));
    median_of_3(v, m[0], m[1], m[2], is_less)
}

fn median_of_medians_3x5<T, F>(v: &mut [T], is_less: &mut F) -> usize
where
    F: FnMut(&T, &T) -> bool,
{
    let p = spread::<15>(v.len());
    let m: [usize; 3] = std::array::from_fn(|g| {
        median_of_5(
            v,
            [
                p[5 * g],
                p[5 * g + 1],
                p[5 * g + 2],
                p[5 * g + 3],
                p[5 * g + 4],
            ],
            is_less,
        )
    });
    median_of_3(v, m[0], m[1], m[2], is_less)
}

fn median_of_medians_5x5<T, F>(v: &mut [T], is_less: &mut F) -> usize
where
    F: FnMut(&T, &T) -> bool,
{
    let p = spread::<25>(v.len());
    let m: [usize; 5] = std::array::from_fn(|g| {
        median_of_5(
            v,
            [
                p[5 * g],
                p[5 * g + 1],
                p[5 * g + 2],
                p[5 * g + 3],
                p[5 * g + 4],
            ],
            is_less,
        )
    });
    median_of_5(v, m, is_less)
}

/// Moves `k` evenly spread elements to `v[..k]`.
fn gather_sample<T>(v: &mut [T], k: usize) {
    let len = v.len();
    debug_assert!(2 <= k && k <= len);
    for i in 0..k {
        // positions are strictly increasing and never below `i`
        v.swap(i, i * (len - 1) / (k - 1));
    }
}

/// Rearranges `v` so that `v[k]` holds the element of rank `k`, with smaller
/// or equal elements before it and larger or equal ones after.
pub fn select_nth<T, F>(mut v: &mut [T], mut k: usize, is_less: &mut F)
where
    F: FnMut(&T, &T) -> bool,
{
    assert!(k < v.len());
    loop {
        let len = v.len();
        if len <= 16 {
            insertion_sort(v, is_less, &());
            return;
        }
        let mid = median_of_3(v, 0, len / 2, len - 1, is_less);
        let cut = hoare_partition(v, mid, is_less, &());
        if k == cut {
            return;
        }
        let whole = mem::take(&mut v);
        if k < cut {
            v = &mut whole[..cut];
        } else {
            v = &mut whole[cut + 1..];
            k -= cut + 1;
        }
    }
}

/// Median of `ceil(sqrt(len))` evenly spread elements, gathered to the front.
/// Returns the index of the median, which is `ceil(sqrt(len)) / 2`.
pub fn median_of_sqrt_sample<T, F>(v: &mut [T], is_less: &mut F) -> usize
where
    F: FnMut(&T, &T) -> bool,
{
    let k = ceil_sqrt(v.len()).max(3);
    gather_sample(v, k);
    select_nth(&mut v[..k], k / 2, is_less);
    k / 2
}

fn ceil_sqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r > n {
        r -= 1;
    }
    while r * r < n {
        r += 1;
    }
    r
}

/// Returns the index of the chosen pivot in `v`.
///
/// Every strategy falls back to median-of-three when the view is shorter than
/// its sample; MoSqrtN falls back to Mo5xMo5 below [`SQRT_SAMPLE_MIN_LEN`].
pub fn select_pivot<T, F>(v: &mut [T], strategy: PivotStrategy, is_less: &mut F) -> usize
where
    F: FnMut(&T, &T) -> bool,
{
    choose_pivot(v, strategy, false, is_less).index
}

/// [`select_pivot`] plus what the driver needs to know about the sample.
pub fn choose_pivot<T, F>(
    v: &mut [T],
    strategy: PivotStrategy,
    detect_duplicates: bool,
    is_less: &mut F,
) -> PivotChoice
where
    F: FnMut(&T, &T) -> bool,
{
    let len = v.len();
    assert!(len >= 3, "pivot selection needs at least 3 elements");
    let other = |index| PivotChoice {
        index,
        duplicate_in_sample: false,
        ends_sorted: false,
    };
    match strategy {
        PivotStrategy::Mo5 if len >= 5 => {
            let p = spread::<5>(len);
            other(median_of_5(v, p, is_less))
        }
        PivotStrategy::Mo3xMo3 if len >= 9 => other(median_of_medians_3x3(v, is_less)),
        PivotStrategy::Mo3xMo5 if len >= 15 => other(median_of_medians_3x5(v, is_less)),
        PivotStrategy::Mo5xMo5 if len >= 25 => other(median_of_medians_5x5(v, is_less)),
        PivotStrategy::Mo23 if len >= 23 => {
            gather_sample(v, 23);
            select_nth(&mut v[..23], 11, is_less);
            other(11)
        }
        PivotStrategy::MoSqrtN if len >= SQRT_SAMPLE_MIN_LEN => {
            other(median_of_sqrt_sample(v, is_less))
        }
        PivotStrategy::MoSqrtN => {
            choose_pivot(v, PivotStrategy::Mo5xMo5, detect_duplicates, is_less)
        }
        PivotStrategy::Skewed(k) => {
            let rank = (len / k.max(1) as usize).min(len - 1);
            select_nth(v, rank, is_less);
            other(rank)
        }
        _ => {
            let mid = median_of_3(v, 0, len / 2, len - 1, is_less);
            let duplicate_in_sample =
                detect_duplicates && (!is_less(&v[0], &v[mid]) | !is_less(&v[mid], &v[len - 1]));
            PivotChoice {
                index: mid,
                duplicate_in_sample,
                ends_sorted: true,
            }
        }
    }
}
