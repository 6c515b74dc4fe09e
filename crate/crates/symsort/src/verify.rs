//! Randomized property sweep over the library: end-to-end sort correctness
//! with the internal round invariants re-checked, permutation preservation,
//! recursion depth, and self-consistency of the measure oracles. The bench
//! CLI's `verify` subcommand and the acceptance suite both run this.

use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::generators::{gen_inv_blocks, gen_mod_k, gen_random_distinct, gen_rem, Key, RemDirection};
use crate::oracle::{counting_comparator, inv_of, reference_sort, rem_of};
use crate::{adaptive, core_sort};

#[derive(Clone, Copy, Debug, Default)]
pub struct SweepSummary {
    pub sort_cases: usize,
    pub oracle_cases: usize,
}

/// Longest nondecreasing subsequence by full subset enumeration; feasible up
/// to length 16. The independent check for [`rem_of`].
pub(crate) fn rem_exhaustive(seq: &[Key]) -> usize {
    let n = seq.len();
    assert!(n <= 16);
    let mut best = 0usize;
    for mask in 0u32..(1 << n) {
        let mut prev: Option<Key> = None;
        let mut len = 0usize;
        let mut ok = true;
        for (i, &x) in seq.iter().enumerate() {
            if mask & (1 << i) != 0 {
                if let Some(p) = prev {
                    if p > x {
                        ok = false;
                        break;
                    }
                }
                prev = Some(x);
                len += 1;
            }
        }
        if ok && len > best {
            best = len;
        }
    }
    n - best
}

/// Quadratic inversion count. The independent check for [`inv_of`].
pub(crate) fn inv_brute(seq: &[Key]) -> u64 {
    let mut c = 0u64;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                c += 1;
            }
        }
    }
    c
}

fn panic_text(e: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = e.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = e.downcast_ref::<String>() {
        s.clone()
    } else {
        "panic".to_string()
    }
}

fn build_case(rng: &mut ChaCha8Rng, idx: usize) -> (String, Vec<Key>) {
    let n = match idx % 4 {
        0 => rng.gen_range(0..=16usize),
        1 => *[63usize, 64, 511, 512, 513].iter().nth(idx / 4 % 5).unwrap(),
        2 => rng.gen_range(0..2048usize),
        _ => rng.gen_range(0..16384usize),
    };
    let seed = rng.gen::<u64>();
    match idx % 9 {
        0 => (format!("random_distinct n={n}"), gen_random_distinct(n, seed)),
        1 => {
            let k = *[1u64, 2, 7, n.max(1) as u64].iter().nth(idx / 9 % 4).unwrap();
            (format!("mod_k k={k} n={n}"), gen_mod_k(n, k, seed))
        }
        2 => {
            let rem = if n == 0 { 0 } else { rng.gen_range(0..=n / 2) };
            (
                format!("rem_nearly_sorted rem={rem} n={n}"),
                gen_rem(n, rem, RemDirection::Ascending, seed),
            )
        }
        3 => {
            let rem = if n == 0 { 0 } else { rng.gen_range(0..=n / 2) };
            (
                format!("rem_nearly_reverse rem={rem} n={n}"),
                gen_rem(n, rem, RemDirection::Descending, seed),
            )
        }
        4 => {
            let k = rng.gen_range(1..=n.max(1));
            (format!("inv_blocks k={k} n={n}"), gen_inv_blocks(n, k, seed))
        }
        5 => (format!("sorted n={n}"), (0..n as Key).collect()),
        6 => (format!("reverse n={n}"), (0..n as Key).rev().collect()),
        7 => (format!("all_equal n={n}"), vec![3; n]),
        _ => {
            let mut v: Vec<Key> = (0..n as Key / 2).collect();
            v.extend((0..(n as Key + 1) / 2).rev());
            (format!("organ_pipe n={n}"), v)
        }
    }
}

fn check_sorted_output(label: &str, entry: &str, got: &[Key], expect: &[Key]) -> Result<(), String> {
    if got != expect {
        return Err(format!("{entry} output mismatch on {label}"));
    }
    Ok(())
}

fn run_one_case(label: &str, keys: &[Key]) -> Result<(), String> {
    let expect = reference_sort(keys);
    let n = keys.len();

    let adp = catch_unwind(AssertUnwindSafe(|| {
        let mut work = keys.to_vec();
        let (m, depth) = adaptive::run_adp(&mut work, Key::cmp, true);
        (work, m, depth)
    }))
    .map_err(|e| format!("adaptive invariant broken on {label}: {}", panic_text(e)))?;
    check_sorted_output(label, "adp_sort", &adp.0, &expect)?;

    let core = catch_unwind(AssertUnwindSafe(|| {
        let mut work = keys.to_vec();
        let (m, depth) = core_sort::run_core(&mut work, Key::cmp, true);
        (work, m, depth)
    }))
    .map_err(|e| format!("core invariant broken on {label}: {}", panic_text(e)))?;
    check_sorted_output(label, "sort", &core.0, &expect)?;

    if label.starts_with("random_distinct") && n >= 8 {
        let lg = (n as f64).log2().ceil() as usize;
        for (entry, depth) in [("adp_sort", adp.2), ("sort", core.2)] {
            if depth > 4 * lg {
                return Err(format!(
                    "{entry} recursion depth {depth} exceeds 4*lg(n)={} on {label}",
                    4 * lg
                ));
            }
        }
    }
    Ok(())
}

fn oracle_checks(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let mut cases = 0usize;

    for len in 0..=12usize {
        for _ in 0..40 {
            let v: Vec<Key> = (0..len).map(|_| rng.gen_range(-4..5)).collect();
            if rem_of(&v) != rem_exhaustive(&v) {
                return Err(format!("rem_of disagrees with exhaustive search on {v:?}"));
            }
            cases += 1;
        }
    }

    for len in [0usize, 1, 2, 3, 17, 100, 200] {
        for _ in 0..20 {
            let v: Vec<Key> = (0..len).map(|_| rng.gen_range(-30..30)).collect();
            if inv_of(&v) != inv_brute(&v) {
                return Err(format!("inv_of disagrees with brute force at n={len}"));
            }
            cases += 1;
        }
    }

    // the external comparator counter must agree with the internal one
    let calls = std::cell::Cell::new(0u64);
    let mut v = gen_mod_k(4096, 50, rng.gen());
    let m = crate::sort_by_with_metrics(&mut v, counting_comparator(Key::cmp, &calls));
    if calls.get() != m.comparisons {
        return Err(format!(
            "comparator counter {} disagrees with internal count {}",
            calls.get(),
            m.comparisons
        ));
    }
    cases += 1;

    Ok(cases)
}

/// Runs `sort_cases` randomized end-to-end cases plus the oracle checks.
/// Returns the first failure as a message.
pub fn property_sweep(seed: u64, sort_cases: usize) -> Result<SweepSummary, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summary = SweepSummary::default();
    for idx in 0..sort_cases {
        let (label, keys) = build_case(&mut rng, idx);
        run_one_case(&label, &keys)?;
        summary.sort_cases += 1;
    }
    summary.oracle_cases = oracle_checks(&mut rng)?;
    Ok(summary)
}
