//! Block partitioning.
//!
//! Instead of stopping at each misplaced element like Hoare's scheme, the
//! scanning phase compares a whole block with the pivot and records the offsets
//! of misplaced elements. The buffer counter advances by the integer value of
//! each comparison, so the scan has no data-dependent jumps. The rearrangement
//! phase then exchanges recorded elements pairwise from both sides.

use std::mem::ManuallyDrop;
use std::ptr;

use super::hoare_split;
use crate::config::{SortConfig, Variant};
use crate::stats::{EventClass, Recorder};

/// Offset buffers and cursors for one side each.
///
/// `offsets_l` holds offsets (from the left cursor) of elements `>= pivot`,
/// `offsets_r` offsets (from the right cursor, counting leftwards) of elements
/// `<= pivot`. The live entries of a side are `offsets[start..start + num]`.
#[derive(Debug, Clone)]
pub struct BlockBuffers {
    offsets_l: Vec<u32>,
    offsets_r: Vec<u32>,
    start_l: usize,
    start_r: usize,
    num_l: usize,
    num_r: usize,
}

impl BlockBuffers {
    pub fn new(block_size: usize) -> Self {
        assert!(block_size >= 2, "block size must be at least 2");
        BlockBuffers {
            offsets_l: vec![0; block_size],
            offsets_r: vec![0; block_size],
            start_l: 0,
            start_r: 0,
            num_l: 0,
            num_r: 0,
        }
    }

    pub fn block_size(&self) -> usize {
        self.offsets_l.len()
    }

    pub fn left_pending(&self) -> &[u32] {
        &self.offsets_l[self.start_l..self.start_l + self.num_l]
    }

    pub fn right_pending(&self) -> &[u32] {
        &self.offsets_r[self.start_r..self.start_r + self.num_r]
    }

    /// Cursor bounds, strictly increasing live offsets, and at most one side non-empty.
    pub fn check_invariants(&self) -> bool {
        let b = self.block_size();
        self.start_l + self.num_l <= b
            && self.start_r + self.num_r <= b
            && self.left_pending().windows(2).all(|w| w[0] < w[1])
            && self.right_pending().windows(2).all(|w| w[0] < w[1])
            && self.num_l.min(self.num_r) == 0
    }

    fn reset(&mut self) {
        self.start_l = 0;
        self.start_r = 0;
        self.num_l = 0;
        self.num_r = 0;
    }

    #[inline(always)]
    fn after_rearrangement(&self) {
        debug_assert!(self.start_l + self.num_l <= self.block_size());
        debug_assert!(self.start_r + self.num_r <= self.block_size());
        debug_assert!(self.num_l == 0 || self.num_r == 0);
        #[cfg(test)]
        assert!(self.check_invariants());
    }

    /// Exchanges the first `num` live elements of both sides.
    ///
    /// # Safety
    ///
    /// Every live left offset `o` must satisfy `left.add(o)` in bounds, every
    /// live right offset `o` must satisfy `right.sub(o)` in bounds, and the two
    /// position sets must be disjoint.
    #[inline(always)]
    unsafe fn rearrange<T, R, const CYCLIC: bool>(
        &mut self,
        left: *mut T,
        right: *mut T,
        num: usize,
        rec: &R,
    ) where
        R: Recorder + ?Sized,
    {
        let ol = self.offsets_l.as_ptr().add(self.start_l);
        let or = self.offsets_r.as_ptr().add(self.start_r);
        let l_at = |j: usize| left.add(*ol.add(j) as usize);
        let r_at = |j: usize| right.sub(*or.add(j) as usize);
        if CYCLIC {
            // One cycle through a single temporary: 2 * num + 1 moves instead of 3 * num.
            if num > 0 {
                let tmp = ManuallyDrop::new(ptr::read(l_at(0)));
                ptr::copy_nonoverlapping(r_at(0), l_at(0), 1);
                for j in 1..num {
                    ptr::copy_nonoverlapping(l_at(j), r_at(j - 1), 1);
                    ptr::copy_nonoverlapping(r_at(j), l_at(j), 1);
                }
                ptr::copy_nonoverlapping(&*tmp, r_at(num - 1), 1);
            } else {
                rec.branch_event(EventClass::IfNotTaken, 1);
            }
        } else {
            for j in 0..num {
                ptr::swap_nonoverlapping(l_at(j), r_at(j), 1);
            }
        }
        rec.branch_event(EventClass::LoopExit, 1);
        rec.swapped(num as u64);
        self.num_l -= num;
        self.num_r -= num;
        self.start_l += num;
        self.start_r += num;
    }
}

macro_rules! scan_step {
    ($offsets:ident, $num:ident, $j:expr, $misplaced:expr) => {
        *$offsets.add($num) = $j as u32;
        $num += $misplaced as usize;
    };
}

/// Scans `count` elements from `first` rightwards, recording offsets of elements `>= pivot`.
///
/// # Safety
///
/// `first..first + count` must be readable and `offsets` must have room for `count` entries.
#[inline(always)]
unsafe fn scan_forward<T, F, const UNROLL: bool>(
    first: *const T,
    count: usize,
    pivot: &T,
    offsets: *mut u32,
    is_less: &mut F,
) -> usize
where
    F: FnMut(&T, &T) -> bool,
{
    let mut num = 0;
    let mut j = 0;
    if UNROLL {
        while j + 4 <= count {
            scan_step!(offsets, num, j, !is_less(&*first.add(j), pivot));
            scan_step!(offsets, num, j + 1, !is_less(&*first.add(j + 1), pivot));
            scan_step!(offsets, num, j + 2, !is_less(&*first.add(j + 2), pivot));
            scan_step!(offsets, num, j + 3, !is_less(&*first.add(j + 3), pivot));
            j += 4;
        }
    }
    while j < count {
        scan_step!(offsets, num, j, !is_less(&*first.add(j), pivot));
        j += 1;
    }
    num
}

/// Scans `count` elements from `last` leftwards, recording offsets of elements `<= pivot`.
///
/// # Safety
///
/// `last - count + 1..=last` must be readable and `offsets` must have room for `count` entries.
#[inline(always)]
unsafe fn scan_backward<T, F, const UNROLL: bool>(
    last: *const T,
    count: usize,
    pivot: &T,
    offsets: *mut u32,
    is_less: &mut F,
) -> usize
where
    F: FnMut(&T, &T) -> bool,
{
    let mut num = 0;
    let mut j = 0;
    if UNROLL {
        while j + 4 <= count {
            scan_step!(offsets, num, j, !is_less(pivot, &*last.sub(j)));
            scan_step!(offsets, num, j + 1, !is_less(pivot, &*last.sub(j + 1)));
            scan_step!(offsets, num, j + 2, !is_less(pivot, &*last.sub(j + 2)));
            scan_step!(offsets, num, j + 3, !is_less(pivot, &*last.sub(j + 3)));
            j += 4;
        }
    }
    while j < count {
        scan_step!(offsets, num, j, !is_less(pivot, &*last.sub(j)));
        j += 1;
    }
    num
}

/// Block main loop: runs while more than two blocks remain unclassified.
///
/// Returns `(l, r)`: everything before `l` is `<= pivot`, everything from `r`
/// on is `>= pivot`, and the buffers describe partially processed blocks at the
/// edges of `l..r`.
fn main_loop<T, F, R, const TUNED: bool>(
    v: &mut [T],
    pivot: &T,
    bufs: &mut BlockBuffers,
    is_less: &mut F,
    rec: &R,
) -> (usize, usize)
where
    F: FnMut(&T, &T) -> bool,
    R: Recorder + ?Sized,
{
    let b = bufs.block_size();
    let base = v.as_mut_ptr();
    let mut l = 0;
    let mut r = v.len();
    bufs.reset();
    while r - l > 2 * b {
        // SAFETY: `r - l > 2b`, so the blocks `l..l + b` and `r - b..r` are
        // disjoint and inside `v`; buffers hold `b` entries.
        unsafe {
            if bufs.num_l == 0 {
                bufs.start_l = 0;
                bufs.num_l = scan_forward::<T, F, TUNED>(
                    base.add(l),
                    b,
                    pivot,
                    bufs.offsets_l.as_mut_ptr(),
                    is_less,
                );
                rec.branch_event(EventClass::LoopExit, 1);
            } else {
                rec.branch_event(EventClass::IfNotTaken, 1);
            }
            if bufs.num_r == 0 {
                bufs.start_r = 0;
                bufs.num_r = scan_backward::<T, F, TUNED>(
                    base.add(r - 1),
                    b,
                    pivot,
                    bufs.offsets_r.as_mut_ptr(),
                    is_less,
                );
                rec.branch_event(EventClass::LoopExit, 1);
            } else {
                rec.branch_event(EventClass::IfNotTaken, 1);
            }
            let num = bufs.num_l.min(bufs.num_r);
            if !TUNED {
                rec.branch_event(EventClass::MinSelect, 1);
            }
            bufs.rearrange::<T, R, TUNED>(base.add(l), base.add(r - 1), num, rec);
        }
        if TUNED {
            l += b * (bufs.num_l == 0) as usize;
            r -= b * (bufs.num_r == 0) as usize;
        } else {
            if bufs.num_l == 0 {
                l += b;
            } else {
                rec.branch_event(EventClass::IfNotTaken, 1);
            }
            if bufs.num_r == 0 {
                r -= b;
            } else {
                rec.branch_event(EventClass::IfNotTaken, 1);
            }
        }
        bufs.after_rearrangement();
    }
    rec.branch_event(EventClass::LoopExit, 1);
    (l, r)
}

/// Scans what the main loop left over as one or two short blocks, rearranges,
/// then moves the elements still recorded in the non-empty buffer to the
/// boundary. Returns the split point.
fn finish_blocks<T, F, R, const TUNED: bool>(
    v: &mut [T],
    pivot: &T,
    bufs: &mut BlockBuffers,
    mut l: usize,
    mut r: usize,
    is_less: &mut F,
    rec: &R,
) -> usize
where
    F: FnMut(&T, &T) -> bool,
    R: Recorder + ?Sized,
{
    let b = bufs.block_size();
    let base = v.as_mut_ptr();
    let w = r - l;
    debug_assert!(w <= 2 * b);
    let shift_l;
    let shift_r;
    // SAFETY: all positions touched lie in `l..r`, which is inside `v`. The
    // left block is `l..l + shift_l`, the right block `r - shift_r..r`, and
    // `shift_l + shift_r == w`, so they are disjoint. No buffer receives more
    // than `b` entries because `w <= 2b`.
    unsafe {
        if bufs.num_l == 0 && bufs.num_r == 0 {
            shift_l = w / 2;
            shift_r = w - shift_l;
            bufs.start_l = 0;
            bufs.start_r = 0;
            let ol = bufs.offsets_l.as_mut_ptr();
            let or = bufs.offsets_r.as_mut_ptr();
            let (mut num_l, mut num_r) = (0, 0);
            for j in 0..shift_l {
                scan_step!(ol, num_l, j, !is_less(&*base.add(l + j), pivot));
                scan_step!(or, num_r, j, !is_less(pivot, &*base.add(r - 1 - j)));
            }
            rec.branch_event(EventClass::LoopExit, 1);
            if shift_l < shift_r {
                scan_step!(
                    or,
                    num_r,
                    shift_r - 1,
                    !is_less(pivot, &*base.add(r - shift_r))
                );
            } else {
                rec.branch_event(EventClass::IfNotTaken, 1);
            }
            bufs.num_l = num_l;
            bufs.num_r = num_r;
        } else if bufs.num_r != 0 {
            rec.branch_event(EventClass::IfNotTaken, 1);
            shift_l = w - b;
            shift_r = b;
            bufs.start_l = 0;
            bufs.num_l = scan_forward::<T, F, false>(
                base.add(l),
                shift_l,
                pivot,
                bufs.offsets_l.as_mut_ptr(),
                is_less,
            );
            rec.branch_event(EventClass::LoopExit, 1);
        } else {
            rec.branch_event(EventClass::IfNotTaken, 2);
            shift_l = b;
            shift_r = w - b;
            bufs.start_r = 0;
            bufs.num_r = scan_backward::<T, F, false>(
                base.add(r - 1),
                shift_r,
                pivot,
                bufs.offsets_r.as_mut_ptr(),
                is_less,
            );
            rec.branch_event(EventClass::LoopExit, 1);
        }

        let num = bufs.num_l.min(bufs.num_r);
        if !TUNED {
            rec.branch_event(EventClass::MinSelect, 1);
        }
        // `r` may be 0 only when `w == 0`, in which case nothing is dereferenced.
        bufs.rearrange::<T, R, TUNED>(base.add(l), base.add(r).wrapping_sub(1), num, rec);
    }
    if TUNED {
        l += shift_l * (bufs.num_l == 0) as usize;
        r -= shift_r * (bufs.num_r == 0) as usize;
    } else {
        if bufs.num_l == 0 {
            l += shift_l;
        } else {
            rec.branch_event(EventClass::IfNotTaken, 1);
        }
        if bufs.num_r == 0 {
            r -= shift_r;
        } else {
            rec.branch_event(EventClass::IfNotTaken, 1);
        }
    }
    bufs.after_rearrangement();

    // Compact what is left in one buffer towards the far end of its block,
    // Lomuto style, without further comparisons.
    let mut swaps = 0;
    let split = if bufs.num_l != 0 {
        let mut lower = bufs.start_l + bufs.num_l;
        let mut upper = r - l;
        while lower > bufs.start_l && bufs.offsets_l[lower - 1] as usize == upper - 1 {
            upper -= 1;
            lower -= 1;
        }
        rec.branch_event(EventClass::LoopExit, 1);
        while lower > bufs.start_l {
            v.swap(l + upper - 1, l + bufs.offsets_l[lower - 1] as usize);
            swaps += 1;
            upper -= 1;
            lower -= 1;
        }
        rec.branch_event(EventClass::LoopExit, 1);
        l + upper
    } else if bufs.num_r != 0 {
        rec.branch_event(EventClass::IfNotTaken, 1);
        let mut lower = bufs.start_r + bufs.num_r;
        let mut upper = r - l;
        while lower > bufs.start_r && bufs.offsets_r[lower - 1] as usize == upper - 1 {
            upper -= 1;
            lower -= 1;
        }
        rec.branch_event(EventClass::LoopExit, 1);
        while lower > bufs.start_r {
            v.swap(r - upper, r - 1 - bufs.offsets_r[lower - 1] as usize);
            swaps += 1;
            upper -= 1;
            lower -= 1;
        }
        rec.branch_event(EventClass::LoopExit, 1);
        r - upper
    } else {
        rec.branch_event(EventClass::IfNotTaken, 2);
        l
    };
    rec.swapped(swaps);
    bufs.reset();
    split
}

/// Partitions `v` around the element at `pivot_index` using the block scheme
/// selected by `cfg.variant`, and returns the final position of the pivot.
///
/// On return `v[..cut] <= v[cut] <= v[cut + 1..]`. The Simple and Tuned
/// variants compare every non-pivot element with the pivot exactly once.
pub fn block_partition<T, F, R>(
    v: &mut [T],
    pivot_index: usize,
    cfg: &SortConfig,
    is_less: &mut F,
    rec: &R,
) -> usize
where
    F: FnMut(&T, &T) -> bool,
    R: Recorder + ?Sized,
{
    let mut bufs = BlockBuffers::new(cfg.block_size);
    block_partition_with(v, pivot_index, cfg.variant, &mut bufs, is_less, rec)
}

/// Like [`block_partition`], reusing caller-owned buffers.
pub fn block_partition_with<T, F, R>(
    v: &mut [T],
    pivot_index: usize,
    variant: Variant,
    bufs: &mut BlockBuffers,
    is_less: &mut F,
    rec: &R,
) -> usize
where
    F: FnMut(&T, &T) -> bool,
    R: Recorder + ?Sized,
{
    assert!(pivot_index < v.len(), "pivot index out of bounds");
    rec.partition_called();
    let last = v.len() - 1;
    v.swap(pivot_index, last);
    let before = rec.comparisons();
    let (rest, tail) = v.split_at_mut(last);
    let pivot = &tail[0];
    let cut = match variant {
        Variant::Simple => {
            let (l, r) = main_loop::<T, F, R, false>(rest, pivot, bufs, is_less, rec);
            finish_blocks::<T, F, R, false>(rest, pivot, bufs, l, r, is_less, rec)
        }
        Variant::Tuned => {
            let (l, r) = main_loop::<T, F, R, true>(rest, pivot, bufs, is_less, rec);
            finish_blocks::<T, F, R, true>(rest, pivot, bufs, l, r, is_less, rec)
        }
        Variant::HoareFinish => {
            let (l, r) = main_loop::<T, F, R, false>(rest, pivot, bufs, is_less, rec);
            bufs.reset();
            l + hoare_split(&mut rest[l..r], pivot, is_less, rec)
        }
    };
    if variant != Variant::HoareFinish {
        rec.partition_audit(last as u64, rec.comparisons() - before);
    }
    v.swap(cut, last);
    rec.swapped(2);
    cut
}
