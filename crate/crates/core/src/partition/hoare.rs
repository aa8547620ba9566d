use crate::stats::{EventClass, Recorder};

/// Classic two-pointer partitioning of `v` around `pivot`, which lives outside `v`.
///
/// Returns `k` such that `v[..k] <= pivot` and `v[k..] >= pivot`.
pub(crate) fn hoare_split<T, F, R>(v: &mut [T], pivot: &T, is_less: &mut F, rec: &R) -> usize
where
    F: FnMut(&T, &T) -> bool,
    R: Recorder + ?Sized,
{
    if v.is_empty() {
        return 0;
    }
    let mut l = 0;
    let mut r = v.len() - 1;
    let mut swaps = 0;
    loop {
        while l <= r && is_less(&v[l], pivot) {
            l += 1;
        }
        rec.branch_event(EventClass::LoopExit, 1);
        while r > l && is_less(pivot, &v[r]) {
            r -= 1;
        }
        rec.branch_event(EventClass::LoopExit, 1);
        if l < r {
            v.swap(l, r);
            swaps += 1;
            l += 1;
            r -= 1;
        } else {
            rec.branch_event(EventClass::IfNotTaken, 1);
            break;
        }
    }
    rec.branch_event(EventClass::LoopExit, 1);
    rec.swapped(swaps);
    l
}

/// Hoare partitioning of `v` around the element at `pivot_index`.
///
/// The pivot is parked in the last slot, the rest is partitioned with two
/// converging pointers, and the pivot is then swapped into the cut. Returns the
/// cut: `v[..cut] <= v[cut] <= v[cut + 1..]`.
pub fn hoare_partition<T, F, R>(v: &mut [T], pivot_index: usize, is_less: &mut F, rec: &R) -> usize
where
    F: FnMut(&T, &T) -> bool,
    R: Recorder + ?Sized,
{
    assert!(pivot_index < v.len(), "pivot index out of bounds");
    let last = v.len() - 1;
    v.swap(pivot_index, last);
    let (rest, tail) = v.split_at_mut(last);
    let cut = hoare_split(rest, &tail[0], is_less, rec);
    v.swap(cut, last);
    rec.swapped(2);
    cut
}
