//! Independent reference implementations used to validate the sorts and the
//! input generators: a plain mergesort, the two presortedness measures, and a
//! comparator call counter.

use core::cmp::Ordering;
use std::cell::Cell;

/// Sorted copy of `input` by plain top-down mergesort. Stable; used as ground
/// truth and structurally unrelated to the partition sort it checks.
pub fn reference_sort<T: Clone + Ord>(input: &[T]) -> Vec<T> {
    let mut out = input.to_vec();
    let mut scratch = out.clone();
    merge_sort(&mut out, &mut scratch);
    out
}

fn merge_sort<T: Clone + Ord>(v: &mut [T], scratch: &mut [T]) {
    let n = v.len();
    if n <= 1 {
        return;
    }
    let mid = n / 2;
    {
        let (a, b) = v.split_at_mut(mid);
        let (sa, sb) = scratch.split_at_mut(mid);
        merge_sort(a, sa);
        merge_sort(b, sb);
    }
    scratch[..n].clone_from_slice(v);
    let (left, right) = scratch[..n].split_at(mid);
    let (mut i, mut j) = (0, 0);
    for slot in v.iter_mut() {
        if i < left.len() && (j >= right.len() || left[i] <= right[j]) {
            *slot = left[i].clone();
            i += 1;
        } else {
            *slot = right[j].clone();
            j += 1;
        }
    }
}

/// Presortedness: `n` minus the length of the longest nondecreasing
/// subsequence, by the patience method in O(n log n).
pub fn rem_of<T: Ord>(seq: &[T]) -> usize {
    let mut tails: Vec<&T> = Vec::new();
    for x in seq {
        // replace the first tail strictly greater than x; ties extend
        let pos = tails.partition_point(|t| **t <= *x);
        if pos == tails.len() {
            tails.push(x);
        } else {
            tails[pos] = x;
        }
    }
    seq.len() - tails.len()
}

/// Presortedness: the number of index pairs `i < j` with `seq[i] > seq[j]`,
/// by merge counting in O(n log n).
pub fn inv_of<T: Clone + Ord>(seq: &[T]) -> u64 {
    let mut v = seq.to_vec();
    let mut scratch = v.clone();
    count_inversions(&mut v, &mut scratch)
}

fn count_inversions<T: Clone + Ord>(v: &mut [T], scratch: &mut [T]) -> u64 {
    let n = v.len();
    if n <= 1 {
        return 0;
    }
    let mid = n / 2;
    let mut count = {
        let (a, b) = v.split_at_mut(mid);
        let (sa, sb) = scratch.split_at_mut(mid);
        count_inversions(a, sa) + count_inversions(b, sb)
    };
    scratch[..n].clone_from_slice(v);
    let (left, right) = scratch[..n].split_at(mid);
    let (mut i, mut j) = (0, 0);
    for slot in v.iter_mut() {
        if i < left.len() && (j >= right.len() || left[i] <= right[j]) {
            *slot = left[i].clone();
            i += 1;
        } else {
            // every item still waiting on the left is an inversion partner
            count += (left.len() - i) as u64;
            *slot = right[j].clone();
            j += 1;
        }
    }
    count
}

/// Wraps a comparator so that every invocation bumps `counter`.
pub fn counting_comparator<'a, T, C>(
    mut inner: C,
    counter: &'a Cell<u64>,
) -> impl FnMut(&T, &T) -> Ordering + 'a
where
    C: FnMut(&T, &T) -> Ordering + 'a,
{
    move |a, b| {
        counter.set(counter.get() + 1);
        inner(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{inv_brute, rem_exhaustive};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn reference_sort_basics() {
        assert_eq!(reference_sort::<i64>(&[]), Vec::<i64>::new());
        assert_eq!(reference_sort(&[2i64, 1, 1]), vec![1, 1, 2]);
    }

    #[test]
    fn reference_sort_is_stable() {
        let input: Vec<(i64, usize)> = vec![(2, 0), (1, 1), (2, 2), (1, 3), (2, 4)];
        let by_key: Vec<(i64, usize)> = {
            #[derive(Clone, PartialEq, Eq)]
            struct KeyOnly(i64, usize);
            impl PartialOrd for KeyOnly {
                fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
                    Some(self.cmp(o))
                }
            }
            impl Ord for KeyOnly {
                fn cmp(&self, o: &Self) -> Ordering {
                    self.0.cmp(&o.0)
                }
            }
            let wrapped: Vec<KeyOnly> = input.iter().map(|&(k, i)| KeyOnly(k, i)).collect();
            reference_sort(&wrapped).into_iter().map(|k| (k.0, k.1)).collect()
        };
        assert_eq!(by_key, vec![(1, 1), (1, 3), (2, 0), (2, 2), (2, 4)]);
    }

    #[test]
    fn rem_basics() {
        assert_eq!(rem_of::<i64>(&[]), 0);
        assert_eq!(rem_of(&[1i64, 2, 3]), 0);
        assert_eq!(rem_of(&[3i64, 1, 2]), 1);
        assert_eq!(rem_of(&[2i64, 2, 2]), 0);
    }

    #[test]
    fn rem_matches_exhaustive_up_to_len_12() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for len in 0..=12usize {
            for _ in 0..200 {
                let v: Vec<i64> = (0..len).map(|_| rng.gen_range(-4..5)).collect();
                assert_eq!(rem_of(&v), rem_exhaustive(&v), "seq {v:?}");
            }
        }
    }

    #[test]
    fn inv_basics() {
        assert_eq!(inv_of(&[1i64, 2, 3]), 0);
        let n = 100i64;
        let rev: Vec<i64> = (0..n).rev().collect();
        assert_eq!(inv_of(&rev), (n * (n - 1) / 2) as u64);
    }

    #[test]
    fn inv_matches_brute_force_up_to_len_200() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for len in [0usize, 1, 2, 3, 10, 50, 128, 200] {
            for _ in 0..30 {
                let v: Vec<i64> = (0..len).map(|_| rng.gen_range(-20..20)).collect();
                assert_eq!(inv_of(&v), inv_brute(&v));
            }
        }
    }

    #[test]
    fn counting_comparator_counts_calls() {
        use std::cell::Cell;
        let calls = Cell::new(0u64);
        let mut one = [5i64];
        crate::sort_by(&mut one, counting_comparator(i64::cmp, &calls));
        assert_eq!(calls.get(), 0);

        let calls = Cell::new(0u64);
        let mut sorted: Vec<i64> = (0..7).collect();
        crate::sort_by(&mut sorted, counting_comparator(i64::cmp, &calls));
        assert_eq!(calls.get(), 6, "insertion pass over a sorted range");

        let calls = Cell::new(0u64);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut v: Vec<i64> = (0..5000).map(|_| rng.gen_range(0..100_000)).collect();
        let m = crate::sort_by_with_metrics(&mut v, counting_comparator(i64::cmp, &calls));
        assert_eq!(calls.get(), m.comparisons, "internal counter disagrees");
    }
}
