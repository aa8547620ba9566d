//! Counters and the static branch predictor model.
//!
//! The model charges one misprediction each time execution leaves a loop, one
//! each time the then-branch of an `if` is not taken, and one per
//! straightforward `min`. Sorting routines place the calls; this module only
//! keeps the tallies.
//!
//! All counters live in [`Cell`]s so a single `&SortStats` can be shared by the
//! counting comparator and the algorithm that drives it.

use std::cell::Cell;
use std::fmt;

/// Kinds of modeled branch mispredictions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventClass {
    LoopExit,
    IfNotTaken,
    MinSelect,
}

impl EventClass {
    pub const ALL: [EventClass; 3] = [
        EventClass::LoopExit,
        EventClass::IfNotTaken,
        EventClass::MinSelect,
    ];

    fn slot(self) -> usize {
        match self {
            EventClass::LoopExit => 0,
            EventClass::IfNotTaken => 1,
            EventClass::MinSelect => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EventClass::LoopExit => "loop_exit",
            EventClass::IfNotTaken => "if_not_taken",
            EventClass::MinSelect => "min_select",
        }
    }
}

impl fmt::Display for EventClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sink for everything the sorting routines report.
///
/// `()` implements it as a no-op, which is what the uninstrumented entry points
/// use; every call then compiles away.
pub trait Recorder {
    #[inline(always)]
    fn compared(&self) {}

    /// Comparisons seen so far, or 0 when nothing is counted.
    #[inline(always)]
    fn comparisons(&self) -> u64 {
        0
    }

    #[inline(always)]
    fn swapped(&self, _count: u64) {}

    #[inline(always)]
    fn branch_event(&self, _class: EventClass, _times: u64) {}

    /// A loop exit charged to insertion sort.
    #[inline(always)]
    fn insertion_event(&self, _times: u64) {}

    #[inline(always)]
    fn partition_called(&self) {}

    #[inline(always)]
    fn insertion_called(&self) {}

    #[inline(always)]
    fn heapsort_called(&self) {}

    #[inline(always)]
    fn stack_depth(&self, _frames: usize) {}

    /// Reports how many comparisons a partitioner that promises exactly
    /// `expected` comparisons actually made.
    #[inline(always)]
    fn partition_audit(&self, _expected: u64, _observed: u64) {}
}

impl Recorder for () {}

/// Per-run tallies. One instance per sort; use [`SortStats::merge`] to combine.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SortStats {
    comparisons: Cell<u64>,
    swaps: Cell<u64>,
    partition_calls: Cell<u64>,
    insertionsort_calls: Cell<u64>,
    heapsort_calls: Cell<u64>,
    modeled_misses: [Cell<u64>; 3],
    insertion_misses: Cell<u64>,
    max_stack_depth: Cell<u64>,
    audited_partitions: Cell<u64>,
    exactness_violations: Cell<u64>,
}

#[inline(always)]
fn bump(cell: &Cell<u64>, by: u64) {
    cell.set(cell.get() + by);
}

impl SortStats {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn comparisons(&self) -> u64 {
        self.comparisons.get()
    }

    /// Element exchanges. A cyclic rearrangement of `k` left/right pairs counts
    /// as `k`, the number of swaps it replaces.
    pub fn swaps(&self) -> u64 {
        self.swaps.get()
    }

    /// Element loads: every comparison plus two reloads per swap.
    pub fn scanned_elements(&self) -> u64 {
        self.comparisons() + 2 * self.swaps()
    }

    pub fn partition_calls(&self) -> u64 {
        self.partition_calls.get()
    }

    pub fn insertionsort_calls(&self) -> u64 {
        self.insertionsort_calls.get()
    }

    pub fn heapsort_calls(&self) -> u64 {
        self.heapsort_calls.get()
    }

    pub fn modeled_misses(&self, class: EventClass) -> u64 {
        self.modeled_misses[class.slot()].get()
    }

    pub fn modeled_misses_total(&self) -> u64 {
        self.modeled_misses.iter().map(Cell::get).sum()
    }

    /// The part of [`modeled_misses_total`](Self::modeled_misses_total) charged to insertion sort.
    pub fn insertion_misses(&self) -> u64 {
        self.insertion_misses.get()
    }

    /// High-water mark of the driver's explicit stack, in frames.
    pub fn max_stack_depth(&self) -> u64 {
        self.max_stack_depth.get()
    }

    /// Number of partition calls whose comparison count was checked.
    pub fn audited_partitions(&self) -> u64 {
        self.audited_partitions.get()
    }

    /// Audited partition calls whose comparison count was off.
    pub fn exactness_violations(&self) -> u64 {
        self.exactness_violations.get()
    }

    /// Adds `other` into `self`. The stack high-water mark takes the maximum.
    pub fn merge(&self, other: &SortStats) {
        bump(&self.comparisons, other.comparisons());
        bump(&self.swaps, other.swaps());
        bump(&self.partition_calls, other.partition_calls());
        bump(&self.insertionsort_calls, other.insertionsort_calls());
        bump(&self.heapsort_calls, other.heapsort_calls());
        for (mine, theirs) in self.modeled_misses.iter().zip(&other.modeled_misses) {
            bump(mine, theirs.get());
        }
        bump(&self.insertion_misses, other.insertion_misses());
        self.max_stack_depth
            .set(self.max_stack_depth().max(other.max_stack_depth()));
        bump(&self.audited_partitions, other.audited_partitions());
        bump(&self.exactness_violations, other.exactness_violations());
    }
}

impl Recorder for SortStats {
    #[inline(always)]
    fn compared(&self) {
        bump(&self.comparisons, 1);
    }

    #[inline(always)]
    fn comparisons(&self) -> u64 {
        self.comparisons.get()
    }

    #[inline(always)]
    fn swapped(&self, count: u64) {
        bump(&self.swaps, count);
    }

    #[inline(always)]
    fn branch_event(&self, class: EventClass, times: u64) {
        record_branch_event(self, class, times);
    }

    #[inline(always)]
    fn insertion_event(&self, times: u64) {
        record_branch_event(self, EventClass::LoopExit, times);
        bump(&self.insertion_misses, times);
    }

    #[inline(always)]
    fn partition_called(&self) {
        bump(&self.partition_calls, 1);
    }

    #[inline(always)]
    fn insertion_called(&self) {
        bump(&self.insertionsort_calls, 1);
    }

    #[inline(always)]
    fn heapsort_called(&self) {
        bump(&self.heapsort_calls, 1);
    }

    #[inline(always)]
    fn stack_depth(&self, frames: usize) {
        let frames = frames as u64;
        if frames > self.max_stack_depth.get() {
            self.max_stack_depth.set(frames);
        }
    }

    #[inline(always)]
    fn partition_audit(&self, expected: u64, observed: u64) {
        bump(&self.audited_partitions, 1);
        bump(&self.exactness_violations, (expected != observed) as u64);
    }
}

pub fn record_branch_event(stats: &SortStats, class: EventClass, times: u64) {
    bump(&stats.modeled_misses[class.slot()], times);
}

/// Wraps `inner` so that every call is counted on `rec` before delegating.
pub fn counting_comparator<'a, T, F, R>(mut inner: F, rec: &'a R) -> impl FnMut(&T, &T) -> bool + 'a
where
    F: FnMut(&T, &T) -> bool + 'a,
    R: Recorder + ?Sized,
    T: ?Sized,
{
    move |a, b| {
        rec.compared();
        inner(a, b)
    }
}

/// Misprediction budget of a completed block quicksort run:
/// `(6 / B) * comparisons + 3 * n`.
///
/// The first term covers the partitioner's main loop (at most six events per
/// iteration, each iteration doing at least `B` comparisons), the second the
/// per-partition constant plus insertion sort.
pub fn misprediction_bound(stats: &SortStats, block_size: usize, n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    6.0 / block_size as f64 * stats.comparisons() as f64 + 3.0 * n as f64
}
