//! Gathering pivot-equal elements after a partition.

use crate::stats::{EventClass, Recorder};

/// Inclusive index range `lo..=hi` of elements equal to the pivot, `lo <= cut <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EqualRange {
    pub lo: usize,
    pub hi: usize,
}

impl EqualRange {
    pub fn single(cut: usize) -> Self {
        EqualRange { lo: cut, hi: cut }
    }
}

/// Scans the larger side of a partitioned `v` outward from the pivot at `cut`,
/// moving elements equal to the pivot next to it.
///
/// The side is already known to be `>= pivot` (or `<= pivot`), so one `is_less`
/// per element decides equality. The scan stops as soon as fewer than one in
/// four scanned elements were equal.
pub fn duplicate_check<T, F, R>(v: &mut [T], cut: usize, is_less: &mut F, rec: &R) -> EqualRange
where
    F: FnMut(&T, &T) -> bool,
    R: Recorder + ?Sized,
{
    assert!(cut < v.len());
    let right_len = v.len() - cut - 1;
    let (left, rest) = v.split_at_mut(cut);
    let (pivot, right) = rest.split_first_mut().unwrap();
    let (equal, scanned) = if right_len >= cut {
        let mut equal = 0;
        let mut scanned = 0;
        while scanned < right.len() {
            let eq = !is_less(pivot, &right[scanned]);
            right.swap(equal, scanned);
            equal += eq as usize;
            scanned += 1;
            if 4 * equal < scanned {
                break;
            }
        }
        (equal, scanned)
    } else {
        // mirror image: walk leftwards, collecting equal elements at the right end
        let last = left.len() - 1;
        let mut equal = 0;
        let mut scanned = 0;
        while scanned < left.len() {
            let eq = !is_less(&left[last - scanned], pivot);
            left.swap(last - equal, last - scanned);
            equal += eq as usize;
            scanned += 1;
            if 4 * equal < scanned {
                break;
            }
        }
        (equal, scanned)
    };
    rec.branch_event(EventClass::LoopExit, 1);
    rec.swapped(scanned as u64);
    if right_len >= cut {
        EqualRange {
            lo: cut,
            hi: cut + equal,
        }
    } else {
        EqualRange {
            lo: cut - equal,
            hi: cut,
        }
    }
}
