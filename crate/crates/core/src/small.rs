//! Insertion sort for short subarrays and heapsort for the depth-limit fallback.

use std::mem::ManuallyDrop;
use std::ptr;

use crate::stats::{EventClass, Recorder};

/// Writes `value` into `dest` on drop, so a panicking comparator cannot leave a
/// duplicated element behind.
struct Hole<T> {
    value: ManuallyDrop<T>,
    dest: *mut T,
}

impl<T> Drop for Hole<T> {
    fn drop(&mut self) {
        // SAFETY: `dest` always points at the single vacated slot of the slice.
        unsafe { ptr::copy_nonoverlapping(&*self.value, self.dest, 1) }
    }
}

/// Sorts `v` by straight insertion.
///
/// Model accounting: one loop exit per inserted element (leaving the search
/// for its position) and one for leaving the outer loop. A view of `m >= 1`
/// elements therefore costs exactly `m` events; an empty one costs none.
pub fn insertion_sort<T, F, R>(v: &mut [T], is_less: &mut F, rec: &R)
where
    F: FnMut(&T, &T) -> bool,
    R: Recorder + ?Sized,
{
    rec.insertion_called();
    let len = v.len();
    if len == 0 {
        return;
    }
    let mut shifts = 0u64;
    for i in 1..len {
        shifts += insert_tail(&mut v[..=i], is_less);
    }
    rec.swapped(shifts);
    rec.insertion_event(len as u64);
}

/// Moves the last element of `v` left until `v` is sorted, assuming `v[..len - 1]`
/// already is. Returns the number of positions it moved.
fn insert_tail<T, F>(v: &mut [T], is_less: &mut F) -> u64
where
    F: FnMut(&T, &T) -> bool,
{
    let last = v.len() - 1;
    if !is_less(&v[last], &v[last - 1]) {
        return 0;
    }
    let base = v.as_mut_ptr();
    // SAFETY: indices stay within `0..=last`. The hole guard writes the saved
    // element back exactly once, also on unwind.
    unsafe {
        let mut hole = Hole {
            value: ManuallyDrop::new(ptr::read(base.add(last))),
            dest: base.add(last - 1),
        };
        ptr::copy_nonoverlapping(base.add(last - 1), base.add(last), 1);
        let mut moved = 1;
        let mut j = last - 1;
        while j > 0 && is_less(&*hole.value, &*base.add(j - 1)) {
            ptr::copy_nonoverlapping(base.add(j - 1), base.add(j), 1);
            hole.dest = base.add(j - 1);
            j -= 1;
            moved += 1;
        }
        moved
    }
}

/// In-place heapsort.
pub fn heap_sort<T, F, R>(v: &mut [T], is_less: &mut F, rec: &R)
where
    F: FnMut(&T, &T) -> bool,
    R: Recorder + ?Sized,
{
    rec.heapsort_called();
    let len = v.len();
    let mut swaps = 0u64;
    for node in (0..len / 2).rev() {
        swaps += sift_down(v, node, is_less, rec);
    }
    rec.branch_event(EventClass::LoopExit, 1);
    for end in (1..len).rev() {
        v.swap(0, end);
        swaps += 1 + sift_down(&mut v[..end], 0, is_less, rec);
    }
    rec.branch_event(EventClass::LoopExit, 1);
    rec.swapped(swaps);
}

fn sift_down<T, F, R>(v: &mut [T], mut node: usize, is_less: &mut F, rec: &R) -> u64
where
    F: FnMut(&T, &T) -> bool,
    R: Recorder + ?Sized,
{
    let mut swaps = 0;
    loop {
        let mut child = 2 * node + 1;
        if child >= v.len() {
            break;
        }
        if child + 1 < v.len() {
            child += is_less(&v[child], &v[child + 1]) as usize;
        }
        if !is_less(&v[node], &v[child]) {
            break;
        }
        v.swap(node, child);
        swaps += 1;
        node = child;
    }
    rec.branch_event(EventClass::LoopExit, 1);
    swaps
}
