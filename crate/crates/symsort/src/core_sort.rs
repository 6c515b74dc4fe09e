//! The core in-place sort.
//!
//! A sorted block is grown round by round: it is split at its median, the two
//! halves are parked at both ends of a proportionally sized window, and the
//! window's middle is three-way partitioned around the median. Because ordered
//! items bound the window on both sides, the partition scans need no index
//! bounds tests. The two partitioned sides are finished recursively; the last
//! recursive call of each round is unrolled into a loop.

use core::cmp::Ordering;

use crate::metrics::MetricCounters;

/// Windows shorter than this are finished by insertion sort.
const INSERTION_CUTOFF: usize = 8;
/// A sorted block of `m` items is extended over a window of `16*m - 1` items.
const EXTEND_FACTOR: usize = 16;
/// Once the sorted block exceeds `n / 256`, the window covers the whole range.
const WHOLE_WINDOW_DIVISOR: usize = 256;
/// Seeding covers the whole range below this size, else a fixed-size window.
const SEED_WHOLE_BELOW: usize = 512;
/// Seed window size for ranges of at least `SEED_WHOLE_BELOW` items.
const SEED_WINDOW: usize = 63;

/// Length and side of the already-sorted block at one end of a window.
///
/// A prefix value means the block occupies the window's first `len` positions,
/// a suffix value its last `len` positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct SignedPrefix(isize);

impl SignedPrefix {
    pub(crate) fn prefix(len: usize) -> Self {
        SignedPrefix(len as isize)
    }

    pub(crate) fn suffix(len: usize) -> Self {
        SignedPrefix(-(len as isize))
    }

    pub(crate) fn len(self) -> usize {
        self.0.unsigned_abs()
    }

    pub(crate) fn is_suffix(self) -> bool {
        self.0 < 0
    }
}

/// Size of the combined block-plus-extension window for one round.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct ExtensionPlan {
    pub(crate) v: usize,
    pub(crate) whole: bool,
}

/// Picks the window size for a sorted block of `m` items inside a range of
/// `n`: the whole range once `m > n / 256`, else `16*m - 1` items.
pub(crate) fn plan_extension(m: usize, n: usize) -> ExtensionPlan {
    debug_assert!(m >= 3 && n > m);
    let v = if m > n / WHOLE_WINDOW_DIVISOR {
        n
    } else {
        EXTEND_FACTOR * m - 1
    };
    ExtensionPlan { v, whole: v == n }
}

/// Region boundaries produced by the three-way partition.
///
/// The partitioned region starts at the pivot's original index; `lt_end` and
/// `eq_end` are the exclusive ends of the less-than and equal blocks. The
/// equal block always holds at least the pivot itself. The item at `eq_end`
/// where the two scans met may itself still equal the pivot (it is sorted as
/// part of the greater side); everything past it is strictly greater.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct PartitionLayout {
    pub(crate) lt_end: usize,
    pub(crate) eq_end: usize,
}

/// Window state after seeding or block relocation: `left` sorted items sit
/// below the pivot, `right` sorted items at the window's top, and the
/// unpartitioned middle is `(pivot, last]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Placement {
    pub(crate) v: usize,
    pub(crate) left: usize,
    pub(crate) right: usize,
    pub(crate) pivot: usize,
    pub(crate) last: usize,
}

/// Sort state over one slice: the items, the comparator and the counters.
///
/// All index arithmetic is absolute into `a`; recursive calls pass a window
/// base instead of reborrowing subslices.
pub(crate) struct Engine<'a, T, C> {
    pub(crate) a: &'a mut [T],
    cmp: C,
    pub(crate) metrics: MetricCounters,
    depth: usize,
    pub(crate) max_depth: usize,
    /// Re-check pre/post conditions of every round with uncounted
    /// comparisons. Only the verification sweep and tests turn this on.
    pub(crate) validate: bool,
}

impl<'a, T, C: FnMut(&T, &T) -> Ordering> Engine<'a, T, C> {
    pub(crate) fn new(a: &'a mut [T], cmp: C) -> Self {
        Engine {
            a,
            cmp,
            metrics: MetricCounters::new(),
            depth: 0,
            max_depth: 0,
            validate: false,
        }
    }

    fn compare(&mut self, i: usize, j: usize) -> Ordering {
        self.metrics.comparisons += 1;
        (self.cmp)(&self.a[i], &self.a[j])
    }

    /// Counted comparator sign: -1, 0 or 1.
    pub(crate) fn sign(&mut self, i: usize, j: usize) -> i32 {
        match self.compare(i, j) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    /// Uncounted comparison, used only by validation.
    fn raw(&mut self, i: usize, j: usize) -> Ordering {
        (self.cmp)(&self.a[i], &self.a[j])
    }

    pub(crate) fn swap(&mut self, i: usize, j: usize) {
        self.metrics.swaps += 1;
        self.a.swap(i, j);
    }

    /// Swaps `len` item pairs starting at `dst` and `src`, one at a time in
    /// ascending order; counts `len` swaps. The ranges may overlap, in which
    /// case the pairwise order cycles the gap items past the moved block.
    fn block_swap(&mut self, dst: usize, src: usize, len: usize) {
        for k in 0..len {
            self.swap(dst + k, src + k);
        }
    }

    /// Insertion sort over `[start, end)`: each item is sifted left by
    /// adjacent swaps while strictly smaller than its left neighbor.
    pub(crate) fn insertion_sort(&mut self, start: usize, end: usize) {
        for i in start + 1..end {
            let mut p = i;
            while self.compare(p - 1, p) == Ordering::Greater {
                self.swap(p, p - 1);
                p -= 1;
                if p == start {
                    break;
                }
            }
        }
    }

    /// Seeds a window whose sorted block is still trivial: the middle item is
    /// moved to index 1, then the first, second and last window items are
    /// ordered with at most three comparisons. Leaves a two-item block (pivot
    /// at `base + 1`) on the left and a one-item block at the window's top.
    pub(crate) fn seed_triple(&mut self, base: usize, n: usize) -> Placement {
        debug_assert!(n >= INSERTION_CUTOFF);
        let v = if n < SEED_WHOLE_BELOW { n } else { SEED_WINDOW };
        let top = base + v - 1;
        let pm = base + 1;
        self.swap(pm, base + v / 2);
        if self.compare(base, pm) == Ordering::Greater {
            self.swap(base, pm);
        }
        if self.compare(pm, top) == Ordering::Greater {
            self.swap(pm, top);
            if self.compare(base, pm) == Ordering::Greater {
                self.swap(base, pm);
            }
        }
        Placement {
            v,
            left: 1,
            right: 1,
            pivot: pm,
            last: top - 1,
        }
    }

    /// Fills the window slots `[base+m, base+v)` by swapping in items picked
    /// at equal strides of `n / v` from the unsorted range, starting at the
    /// first unsorted position.
    pub(crate) fn uniform_sample(&mut self, base: usize, m: usize, v: usize, n: usize) {
        debug_assert!(v < n);
        let stride = n / v;
        let mut src = base + m;
        for slot in base + m..base + v {
            debug_assert!(src < base + n);
            self.swap(slot, src);
            src += stride;
        }
    }

    /// Parks the sorted block's halves at both window ends. A sorted suffix is
    /// first brought to the front (wholly when the window leaves a tail,
    /// otherwise split in one block swap); a sorted prefix then has its upper
    /// half shifted item by item to the window's top, after the window slots
    /// have been filled by [`Self::uniform_sample`] when a tail remains. The
    /// pivot is the last item of the left half.
    pub(crate) fn relocate_sorted_block(
        &mut self,
        base: usize,
        s: SignedPrefix,
        n: usize,
        plan: ExtensionPlan,
    ) -> Placement {
        let m = s.len();
        debug_assert!(m >= 3);
        let v = plan.v;
        let mut left;
        let mut right = 0;
        let mut from_suffix = s.is_suffix();
        if from_suffix {
            if v < n {
                left = m;
                from_suffix = false;
            } else {
                left = (m + 1) / 2;
                right = m / 2;
            }
            self.block_swap(base, base + n - m, left);
            left -= 1;
        } else {
            left = 0;
        }
        if !from_suffix {
            let mut lo = base + m;
            let mut hi = base + v;
            if v < n {
                self.uniform_sample(base, m, v, n);
            }
            right = m / 2;
            let mut i = right;
            loop {
                lo -= 1;
                hi -= 1;
                self.swap(lo, hi);
                i -= 1;
                if i == 0 {
                    break;
                }
            }
            left = (m - 1) / 2;
        }
        let pivot = base + left;
        Placement {
            v,
            left,
            right,
            pivot,
            last: pivot + (v - m),
        }
    }

    /// Three-way partition of `(pivot, last]` around the item at `pivot`.
    ///
    /// The pivot itself bounds the backward scan and the first item of the
    /// right sorted block (at `last + 1`) bounds the forward scan, so the
    /// inner loops run without index tests. Equal items are parked at the
    /// region's left edge during the scan and afterwards exchanged to sit
    /// next to the pivot, moving whichever of the equal and less-than blocks
    /// is smaller.
    pub(crate) fn fat_partition(&mut self, pivot: usize, last: usize) -> PartitionLayout {
        let mut lo = pivot + 1;
        let mut park = pivot + 1;
        let mut hi = last;
        loop {
            let mut rc = self.compare(lo, pivot);
            while rc == Ordering::Less {
                lo += 1;
                rc = self.compare(lo, pivot);
            }
            debug_assert!(lo <= last + 1, "forward scan passed the right sentinel");
            if lo >= hi {
                break;
            }
            if rc == Ordering::Equal {
                if park != lo {
                    self.swap(lo, park);
                }
                park += 1;
                lo += 1;
                continue;
            }
            let mut rc_hi = self.compare(hi, pivot);
            while rc_hi == Ordering::Greater {
                hi -= 1;
                rc_hi = self.compare(hi, pivot);
            }
            debug_assert!(hi >= pivot, "backward scan passed the pivot");
            if lo >= hi {
                break;
            }
            self.swap(lo, hi);
            if rc_hi == Ordering::Equal {
                if park != lo {
                    self.swap(lo, park);
                }
                park += 1;
            }
            lo += 1;
            hi -= 1;
            if lo > hi {
                break;
            }
        }
        let eq = park - pivot;
        let ineq = lo - park;
        let moved = eq.min(ineq);
        let mut src = pivot;
        let mut dst = lo;
        for _ in 0..moved {
            dst -= 1;
            self.swap(dst, src);
            src += 1;
        }
        let layout = PartitionLayout {
            lt_end: pivot + ineq,
            eq_end: lo,
        };
        if self.validate {
            self.check_layout(pivot, last, layout);
        }
        layout
    }

    /// Validation: the final region must read less | equal | greater around
    /// the key now stored at `lt_end`, allowing the one unparked equal the
    /// scans may leave at `eq_end`.
    fn check_layout(&mut self, start: usize, last: usize, layout: PartitionLayout) {
        let PartitionLayout { lt_end, eq_end } = layout;
        assert!(start <= lt_end && lt_end < eq_end && eq_end <= last + 1);
        for i in start..lt_end {
            assert_eq!(self.raw(i, lt_end), Ordering::Less, "less block broken at {i}");
        }
        for i in lt_end..eq_end {
            assert_eq!(self.raw(i, lt_end), Ordering::Equal, "equal block broken at {i}");
        }
        for i in eq_end..=last {
            let rc = self.raw(i, lt_end);
            if i == eq_end {
                assert_ne!(rc, Ordering::Less, "greater block broken at {i}");
            } else {
                assert_eq!(rc, Ordering::Greater, "greater block broken at {i}");
            }
        }
    }

    /// Validation: items below the pivot never exceed it, items in the right
    /// block never fall below it, and both end blocks are sorted.
    fn check_bracketing(&mut self, base: usize, p: Placement) {
        for i in base..p.pivot {
            assert_ne!(self.raw(i, p.pivot), Ordering::Greater, "left block exceeds pivot");
        }
        for i in p.last + 1..base + p.v {
            assert_ne!(self.raw(i, p.pivot), Ordering::Less, "right block below pivot");
        }
        self.check_sorted(base, p.pivot + 1);
        self.check_sorted(p.last + 1, base + p.v);
    }

    fn check_sorted(&mut self, start: usize, end: usize) {
        for i in start + 1..end {
            assert_ne!(self.raw(i - 1, i), Ordering::Greater, "block not sorted at {i}");
        }
    }

    /// Sorts the window `[base, base + n)` given that the `s.len()` items at
    /// the side encoded by `s` are already sorted.
    ///
    /// Small windows go straight to insertion sort. A trivial block (two or
    /// fewer items) is re-seeded from scratch; otherwise the block is parked
    /// at both ends of the planned window, the middle is partitioned, and the
    /// greater side (with the right block as its sorted suffix) and the lesser
    /// side (with the left block as its sorted prefix) are finished
    /// recursively, except that the final call of each round continues the
    /// loop with a grown block instead of recursing.
    pub(crate) fn sym_sort(&mut self, base: usize, s: SignedPrefix, n: usize) {
        let mut s = s;
        let mut n = n;
        if self.validate {
            let m = s.len();
            assert!(m <= n);
            if s.is_suffix() {
                self.check_sorted(base + n - m, base + n);
            } else {
                self.check_sorted(base, base + m);
            }
        }
        loop {
            if n < INSERTION_CUTOFF {
                self.insertion_sort(base, base + n);
                return;
            }
            let m = s.len();
            let place = if m <= 2 {
                self.seed_triple(base, n)
            } else {
                let plan = plan_extension(m, n);
                self.relocate_sorted_block(base, s, n, plan)
            };
            if self.validate {
                self.check_bracketing(base, place);
            }
            let layout = self.fat_partition(place.pivot, place.last);
            let Placement { v, left, right, .. } = place;
            let below_gt = layout.eq_end - base;
            if right < v - below_gt {
                self.recurse(layout.eq_end, SignedPrefix::suffix(right), v - below_gt);
            }
            let below_eq = layout.lt_end - base;
            if v < n {
                if left < below_eq {
                    self.recurse(base, SignedPrefix::prefix(left), below_eq);
                }
                s = SignedPrefix::prefix(v);
            } else {
                if left >= below_eq {
                    return;
                }
                s = SignedPrefix::prefix(left);
                n = below_eq;
            }
        }
    }

    fn recurse(&mut self, base: usize, s: SignedPrefix, n: usize) {
        self.depth += 1;
        if self.depth > self.max_depth {
            self.max_depth = self.depth;
        }
        self.sym_sort(base, s, n);
        self.depth -= 1;
    }
}

/// Runs the core sort over a whole slice and reports its counters and the
/// deepest recursion reached.
pub(crate) fn run_core<T, C: FnMut(&T, &T) -> Ordering>(
    v: &mut [T],
    cmp: C,
    validate: bool,
) -> (MetricCounters, usize) {
    let n = v.len();
    if n <= 1 {
        return (MetricCounters::new(), 0);
    }
    let mut eng = Engine::new(v, cmp);
    eng.validate = validate;
    eng.sym_sort(0, SignedPrefix::prefix(1), n);
    (eng.metrics, eng.max_depth)
}
