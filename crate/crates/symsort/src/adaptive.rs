//! Adaptive front end for the core sort.
//!
//! Before sorting, the input's leading monotone run is measured and a sparse
//! sample of adjacent pairs estimates how ordered the rest is. Inputs that
//! look random skip straight to the core sort. Otherwise further runs are
//! hunted down with a skip-ahead scan, spliced onto the collected prefix by
//! head-tail elimination, the prefix is reversed if it is descending, and the
//! core sort finishes from that prefix.

use core::cmp::Ordering;

use crate::core_sort::{Engine, SignedPrefix};
use crate::metrics::MetricCounters;

/// Distance from the previous run's tail to the next scan anchor.
const RUN_SKIP: usize = 10;
/// Runs shorter than this are abandoned.
const MIN_RUN: usize = 4;
/// One adjacent pair in this many items is sampled for the order estimate.
const SAMPLE_STRIDE: usize = 97;
/// The preprocess engages when |sampled order surplus| exceeds `n` over this.
const RANDOM_DIVISOR: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Direction {
    Ascending,
    Descending,
}

fn direction_of(rev: i32) -> Direction {
    if rev < 0 {
        Direction::Descending
    } else {
        Direction::Ascending
    }
}

/// A detected monotone run: half-open index interval plus direction. Equal
/// neighbors extend a run in either direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct RunSpan {
    pub(crate) start: usize,
    pub(crate) end: usize,
    pub(crate) direction: Direction,
}

/// Signed surplus of ascending over descending sampled pairs, seeded with the
/// first run's signed length, and the engagement threshold `n / 512`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct RandomnessEstimate {
    pub(crate) d_inv: i64,
    pub(crate) threshold: i64,
}

impl RandomnessEstimate {
    pub(crate) fn non_random(&self) -> bool {
        self.d_inv.abs() > self.threshold
    }
}

/// Result of one skip-ahead scan: the run if one long enough was found, and
/// how far the forward scan got (the next anchor starts from there).
#[derive(Clone, Copy, Debug)]
pub(crate) struct RunScan {
    pub(crate) run: Option<RunSpan>,
    pub(crate) forward_end: usize,
}

impl<'a, T, C: FnMut(&T, &T) -> Ordering> Engine<'a, T, C> {
    /// Maximal run starting at index 0. The direction is fixed by the first
    /// strictly unequal adjacent pair; equal pairs extend the run. Returns the
    /// span and the raw direction sign (0 when no unequal pair was seen).
    pub(crate) fn find_first_run(&mut self) -> (RunSpan, i32) {
        let n = self.a.len();
        if n == 0 {
            return (
                RunSpan { start: 0, end: 0, direction: Direction::Ascending },
                0,
            );
        }
        let mut rev = 0i32;
        let mut i = 1;
        while i < n {
            let s = self.sign(i - 1, i);
            if s != 0 {
                if rev == 0 {
                    rev = -s;
                } else if s * rev > 0 {
                    break;
                }
            }
            i += 1;
        }
        (
            RunSpan { start: 0, end: i, direction: direction_of(rev) },
            rev,
        )
    }

    /// Samples one adjacent pair every 97 items beyond the first run and
    /// accumulates +1 per ascending pair, -1 per descending pair (ties count
    /// nothing) on top of the first run's signed length.
    pub(crate) fn estimate_randomness(
        &mut self,
        first_run_end: usize,
        rev: i32,
    ) -> RandomnessEstimate {
        let n = self.a.len();
        let mut d_inv = rev as i64 * first_run_end as i64;
        let mut j = first_run_end + 1;
        while j < n {
            let s = self.sign(j - 1, j);
            if s < 0 {
                d_inv += 1;
            }
            if s > 0 {
                d_inv -= 1;
            }
            j += SAMPLE_STRIDE;
        }
        RandomnessEstimate {
            d_inv,
            threshold: (n / RANDOM_DIVISOR) as i64,
        }
    }

    /// Scans forward from `anchor` and backward toward the collected prefix
    /// while adjacent pairs follow `rev` (ties included). Runs shorter than
    /// [`MIN_RUN`] are rejected; `forward_end` always reports the forward
    /// scan's stop so the caller can place the next anchor.
    pub(crate) fn find_next_run(
        &mut self,
        anchor: usize,
        prefix_tail: usize,
        rev: i32,
    ) -> RunScan {
        let n = self.a.len();
        debug_assert!(anchor > prefix_tail && anchor < n);
        let mut fwd = anchor;
        while fwd < n && rev * self.sign(fwd - 1, fwd) <= 0 {
            fwd += 1;
        }
        // The backward scan stops short of the prefix tail item itself; a run
        // reaching it is recognized by the knot search as an in-place
        // extension rather than swallowing the tail into the run.
        let floor = if prefix_tail == 0 { 0 } else { prefix_tail + 1 };
        let mut back = anchor - 1;
        while back > floor && rev * self.sign(back - 1, back) <= 0 {
            back -= 1;
        }
        let run = if fwd - back < MIN_RUN {
            None
        } else {
            Some(RunSpan { start: back, end: fwd, direction: direction_of(rev) })
        };
        RunScan { run, forward_end: fwd }
    }

    /// Splices `run` onto the sorted prefix ending at `prefix_tail`.
    ///
    /// A knot offset `i` is searched within `min(run_len/2, prefix_tail/4)`
    /// such that the prefix item `i` back from its tail precedes the run item
    /// `i` in from its start; the items between the knots are eliminated. No
    /// knot within the budget discards the run. The surviving run portion is
    /// swapped item by item to just after the prefix knot; displaced items
    /// land in the gap and stay unsorted. Returns the new prefix tail.
    pub(crate) fn merge_runs(&mut self, prefix_tail: usize, run: RunSpan, rev: i32) -> usize {
        let mut dst = prefix_tail;
        let mut src = run.start;
        let end = run.end;
        if dst != 0 {
            let budget = ((end - src) / 2).min(dst / 4);
            let mut i = 0;
            while i < budget {
                if rev * self.sign(dst - i, src + i) <= 0 {
                    break;
                }
                i += 1;
            }
            if i >= budget {
                return prefix_tail;
            }
            dst = dst + 1 - i;
            src += i;
        }
        if src != dst {
            while src < end {
                self.swap(dst, src);
                dst += 1;
                src += 1;
            }
        } else {
            dst = end;
        }
        dst - 1
    }

    /// The adaptive sort: collect the longest prefix run the input affords,
    /// normalize its direction, then hand it to the core sort.
    pub(crate) fn adp_sort(&mut self) {
        let n = self.a.len();
        if n <= 1 {
            return;
        }
        let (first, mut rev) = self.find_first_run();
        let est = self.estimate_randomness(first.end, rev);
        let mut tail = first.end - 1;
        if est.non_random() {
            if (rev as i64) * est.d_inv < 0 {
                // first run points against the sampled trend: restart the
                // prefix at the first item with the direction flipped
                tail = 0;
                rev = -rev;
            }
            let mut from = tail;
            loop {
                let anchor = from + RUN_SKIP;
                if anchor >= n {
                    break;
                }
                let scan = self.find_next_run(anchor, tail, rev);
                from = scan.forward_end;
                if let Some(run) = scan.run {
                    tail = self.merge_runs(tail, run, rev);
                }
            }
        }
        let prefix = tail + 1;
        if rev == -1 {
            let (mut lo, mut hi) = (0, tail);
            while lo < hi {
                self.swap(lo, hi);
                lo += 1;
                hi -= 1;
            }
        }
        if prefix < n {
            self.sym_sort(0, SignedPrefix::prefix(prefix), n);
        }
    }
}

/// Runs the adaptive sort over a whole slice and reports its counters and the
/// deepest recursion reached.
pub(crate) fn run_adp<T, C: FnMut(&T, &T) -> Ordering>(
    v: &mut [T],
    cmp: C,
    validate: bool,
) -> (MetricCounters, usize) {
    let mut eng = Engine::new(v, cmp);
    eng.validate = validate;
    eng.adp_sort();
    (eng.metrics, eng.max_depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::reference_sort;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn engine(v: &mut [i64]) -> Engine<'_, i64, fn(&i64, &i64) -> Ordering> {
        Engine::new(v, i64::cmp)
    }

    #[test]
    fn first_run_basic() {
        let mut v = vec![1i64, 2, 3, 2, 1];
        let (run, rev) = engine(&mut v).find_first_run();
        assert_eq!((run.start, run.end), (0, 3));
        assert_eq!(run.direction, Direction::Ascending);
        assert_eq!(rev, 1);
    }

    #[test]
    fn first_run_equal_pairs_defer_direction() {
        let mut v = vec![5i64, 5, 5, 1];
        let (run, rev) = engine(&mut v).find_first_run();
        assert_eq!((run.start, run.end), (0, 4));
        assert_eq!(run.direction, Direction::Descending);
        assert_eq!(rev, -1);
    }

    #[test]
    fn first_run_whole_and_singleton() {
        let mut v: Vec<i64> = (0..50).collect();
        let (run, _) = engine(&mut v).find_first_run();
        assert_eq!(run.end, 50);

        let mut v = vec![9i64];
        let (run, rev) = engine(&mut v).find_first_run();
        assert_eq!((run.start, run.end), (0, 1));
        assert_eq!(run.direction, Direction::Ascending);
        assert_eq!(rev, 0);
    }

    #[test]
    fn estimate_on_sorted_input_is_n() {
        let n = 100_000usize;
        let mut v: Vec<i64> = (0..n as i64).collect();
        let mut e = engine(&mut v);
        let (run, rev) = e.find_first_run();
        let est = e.estimate_randomness(run.end, rev);
        assert_eq!(est.d_inv, n as i64);
        assert_eq!(est.threshold, (n / 512) as i64);
        assert!(est.non_random());
    }

    #[test]
    fn estimate_threshold_floors_to_zero_below_512() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut v: Vec<i64> = (0..300).map(|_| rng.gen_range(0..1000)).collect();
        let mut e = engine(&mut v);
        let (run, rev) = e.find_first_run();
        let est = e.estimate_randomness(run.end, rev);
        assert_eq!(est.threshold, 0);
        assert_eq!(est.non_random(), est.d_inv != 0);
    }

    #[test]
    fn estimate_aborts_on_random_inputs() {
        // engagement should be rare on i.i.d. random inputs at this size
        let n = 100_000usize;
        let mut aborts = 0;
        for seed in 0..100u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut v: Vec<i64> = (0..n).map(|_| rng.gen::<i64>()).collect();
            let mut e = engine(&mut v);
            let (run, rev) = e.find_first_run();
            let est = e.estimate_randomness(run.end, rev);
            if !est.non_random() {
                aborts += 1;
            }
        }
        assert!(aborts >= 95, "only {aborts}/100 random inputs aborted");
    }

    #[test]
    fn next_run_rejects_short_runs() {
        // anchor lands in the 3-item run at [12, 15), bounded by strict drops
        let mut v = vec![
            0i64, 1, 2, 3, 30, 20, 10, 9, 8, 7, 6, 200, 100, 101, 102, 5, 3, 2, 1, 0,
        ];
        let mut e = engine(&mut v);
        let scan = e.find_next_run(13, 3, 1);
        assert!(scan.run.is_none());
        assert_eq!(scan.forward_end, 15);
    }

    #[test]
    fn next_run_takes_sorted_tail_clipped_at_end() {
        let mut v: Vec<i64> = vec![9, 8, 7, 6, 5];
        v.extend(0..50i64);
        let n = v.len();
        let mut e = engine(&mut v);
        let scan = e.find_next_run(15, 4, 1);
        let run = scan.run.expect("tail run found");
        assert_eq!(run.end, n);
        assert_eq!(run.start, 5);
    }

    #[test]
    fn merge_runs_knot_example() {
        // prefix ends ...1,3,5,20,21 ; next run 2,4,9,10,11,12 further right
        let mut v: Vec<i64> = (-8..=0).collect(); // 9 items
        v.extend([1, 3, 5, 20, 21]); // prefix tail at index 13
        v.extend([500, 400, 300, 200, 100, 600]); // gap junk
        v.extend([2, 4, 9, 10, 11, 12]); // run at [20, 26)
        let mut e = engine(&mut v);
        let run = RunSpan { start: 20, end: 26, direction: Direction::Ascending };
        let tail = e.merge_runs(13, run, 1);
        assert_eq!(tail, 15);
        assert_eq!(
            v[..=tail],
            [-8, -7, -6, -5, -4, -3, -2, -1, 0, 1, 3, 5, 9, 10, 11, 12]
        );
    }

    #[test]
    fn merge_runs_discards_beyond_budget() {
        // knot budget is min(|run|/2, tail/4) = min(2, 3) = 2; the run sits
        // entirely below the reachable prefix items, so no knot fits
        let mut v: Vec<i64> = (100..114).collect(); // prefix tail at 13
        v.extend([0, 0, 0, 0, 0, 0]); // junk
        v.extend([1, 2, 3, 4]); // run at [20, 24)
        let before = v.clone();
        let mut e = engine(&mut v);
        let run = RunSpan { start: 20, end: 24, direction: Direction::Ascending };
        let tail = e.merge_runs(13, run, 1);
        assert_eq!(tail, 13);
        assert_eq!(v, before);
    }

    #[test]
    fn merge_runs_plain_concatenation() {
        // adjacent run strictly above the prefix tail: knot offset 0
        let mut v: Vec<i64> = (0..14).collect();
        v.extend([20, 21, 22, 23, 24, 25]);
        let mut e = engine(&mut v);
        let run = RunSpan { start: 14, end: 20, direction: Direction::Ascending };
        let tail = e.merge_runs(13, run, 1);
        assert_eq!(tail, 19);
        assert_eq!(e.metrics.swaps, 0, "in-place extension needs no swaps");
    }

    #[test]
    fn adp_sorted_input_costs_n_minus_one() {
        let n = 10_000usize;
        let mut v: Vec<i64> = (0..n as i64).collect();
        let (m, _) = run_adp(&mut v, i64::cmp, false);
        assert_eq!(m.comparisons, (n - 1) as u64);
        assert_eq!(m.swaps, 0);
    }

    #[test]
    fn adp_reverse_input_reverses_in_place() {
        let n = 10_001usize;
        let mut v: Vec<i64> = (0..n as i64).rev().collect();
        let (m, _) = run_adp(&mut v, i64::cmp, false);
        assert_eq!(m.comparisons, (n - 1) as u64);
        assert_eq!(m.swaps, (n / 2) as u64);
        assert!(v.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn adp_all_equal_costs_n_minus_one() {
        let n = 5000usize;
        let mut v = vec![7i64; n];
        let (m, _) = run_adp(&mut v, i64::cmp, false);
        assert_eq!(m.comparisons, (n - 1) as u64);
        assert_eq!(m.swaps, 0);
    }

    #[test]
    fn adp_matches_reference_on_random_and_structured() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..200 {
            let n = rng.gen_range(0..3000usize);
            let mut v: Vec<i64> = match rng.gen_range(0..4) {
                0 => (0..n).map(|_| rng.gen_range(-50..50)).collect(),
                1 => (0..n as i64).collect(),
                2 => (0..n as i64).rev().collect(),
                _ => {
                    let mut v: Vec<i64> = (0..n as i64).collect();
                    for _ in 0..n / 10 {
                        let i = rng.gen_range(0..n.max(1));
                        v[i] = rng.gen_range(-1000..1000);
                    }
                    v
                }
            };
            let expect = reference_sort(&v);
            run_adp(&mut v, i64::cmp, true);
            assert_eq!(v, expect);
        }
    }

    #[test]
    fn adp_degenerate_inputs_touch_nothing() {
        let mut empty: Vec<i64> = vec![];
        let (m, _) = run_adp(&mut empty, i64::cmp, false);
        assert_eq!(m, MetricCounters::new());
        let mut one = vec![1i64];
        let (m, _) = run_adp(&mut one, i64::cmp, false);
        assert_eq!(m, MetricCounters::new());
    }

    #[test]
    fn preprocess_overhead_is_exact_when_it_aborts_early() {
        // pick random inputs whose first run is exactly two ascending items
        // and whose estimate aborts: the adaptive entry then costs exactly
        // the first run find (2) plus the sampled pairs on top of the core
        // sort, and touches nothing (a descending run would be reversed)
        let n = 20_000usize;
        let mut checked = 0;
        for seed in 0..40u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let v: Vec<i64> = (0..n).map(|_| rng.gen::<i64>()).collect();

            let mut probe = v.clone();
            let mut e = engine(&mut probe);
            let (run, rev) = e.find_first_run();
            let est = e.estimate_randomness(run.end, rev);
            if run.end != 2 || rev != 1 || est.non_random() {
                continue;
            }
            let samples = {
                let mut c = 0u64;
                let mut j = run.end + 1;
                while j < n {
                    c += 1;
                    j += 97;
                }
                c
            };

            let mut adp = v.clone();
            let (adp_m, _) = run_adp(&mut adp, i64::cmp, false);
            let mut core = v.clone();
            let (core_m, _) = crate::core_sort::run_core(&mut core, i64::cmp, false);
            assert_eq!(adp_m.comparisons, core_m.comparisons + 2 + samples);
            assert_eq!(adp_m.swaps, core_m.swaps);
            checked += 1;
        }
        assert!(checked >= 5, "too few qualifying seeds: {checked}");
    }
}
