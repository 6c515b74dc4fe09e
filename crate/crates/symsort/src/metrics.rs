//! Counters attached to a single sort invocation.

/// Comparison and swap counts for one sort call.
///
/// Both counters start at zero and only increase while the sort runs. A block
/// move of `k` items counts as `k` swaps; every call into the comparator
/// counts as one comparison.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MetricCounters {
    pub comparisons: u64,
    pub swaps: u64,
}

impl MetricCounters {
    pub fn new() -> Self {
        Self::default()
    }
}
