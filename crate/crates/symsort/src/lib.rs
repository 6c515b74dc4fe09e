//! Symmetry partition sort: an in-place, comparator-driven library sort.
//!
//! The core routine grows a sorted block by proportional extension, parking
//! the block's halves at both ends of each partition window so the three-way
//! partition scans run without bounds tests. The adaptive entry points first
//! collect the longest sorted prefix the input affords (run detection plus
//! head-tail run splicing) and engage only when a sparse order estimate says
//! the input is not random.
//!
//! ```
//! let mut v = vec![3, 1, 4, 1, 5, 9, 2, 6];
//! symsort::adp_sort(&mut v);
//! assert_eq!(v, vec![1, 1, 2, 3, 4, 5, 6, 9]);
//! ```
//!
//! Every entry point has a `_with_metrics` variant that reports how many
//! comparator calls and item swaps the run needed. The sorts are not stable.
//! There is no global state: concurrent calls on disjoint slices are safe.
//!
//! The [`generators`] module produces the seeded benchmark input families,
//! [`oracle`] holds the independent reference implementations the sorts are
//! validated against, and [`verify`] bundles both into a randomized property
//! sweep.

mod adaptive;
mod core_sort;
pub mod generators;
pub mod metrics;
pub mod oracle;
pub mod verify;

pub use metrics::MetricCounters;

use core::cmp::Ordering;

/// Sorts `v` in place with `T`'s natural order.
pub fn sort<T: Ord>(v: &mut [T]) {
    sort_by(v, T::cmp);
}

/// Sorts `v` in place with the given comparator.
pub fn sort_by<T, F: FnMut(&T, &T) -> Ordering>(v: &mut [T], cmp: F) {
    core_sort::run_core(v, cmp, false);
}

/// Like [`sort`], returning the comparison and swap counts.
pub fn sort_with_metrics<T: Ord>(v: &mut [T]) -> MetricCounters {
    sort_by_with_metrics(v, T::cmp)
}

/// Like [`sort_by`], returning the comparison and swap counts.
pub fn sort_by_with_metrics<T, F: FnMut(&T, &T) -> Ordering>(
    v: &mut [T],
    cmp: F,
) -> MetricCounters {
    core_sort::run_core(v, cmp, false).0
}

/// Sorts `v` in place with `T`'s natural order, collecting presorted runs
/// into a prefix before the core sort runs.
pub fn adp_sort<T: Ord>(v: &mut [T]) {
    adp_sort_by(v, T::cmp);
}

/// Adaptive sort with the given comparator.
pub fn adp_sort_by<T, F: FnMut(&T, &T) -> Ordering>(v: &mut [T], cmp: F) {
    adaptive::run_adp(v, cmp, false);
}

/// Like [`adp_sort`], returning the comparison and swap counts.
pub fn adp_sort_with_metrics<T: Ord>(v: &mut [T]) -> MetricCounters {
    adp_sort_by_with_metrics(v, T::cmp)
}

/// Like [`adp_sort_by`], returning the comparison and swap counts.
pub fn adp_sort_by_with_metrics<T, F: FnMut(&T, &T) -> Ordering>(
    v: &mut [T],
    cmp: F,
) -> MetricCounters {
    adaptive::run_adp(v, cmp, false).0
}
