//! Deterministic, seeded generators for the benchmark input families.
//!
//! Every generator is a pure function of its parameters: the same spec always
//! yields the bit-identical key sequence. Keys are emitted as `i64`. The
//! stream cipher generator (ChaCha8) is stable across platforms and releases.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracle::rem_of;

pub type Key = i64;

/// Side the near-sorted construction leans toward.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RemDirection {
    Ascending,
    Descending,
}

/// One generated input with a stable display name.
#[derive(Clone, Debug)]
pub struct NamedInput {
    pub name: String,
    pub keys: Vec<Key>,
}

/// Input family plus its parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    RandomDistinct,
    ModK { k: u64 },
    RemNearlySorted { rem: usize },
    RemNearlyReverse { rem: usize },
    InvBlocks { block: usize },
    BmTestbed,
}

/// A fully determined generator invocation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
}

impl GeneratorSpec {
    /// All instances this spec expands to. Scalar families yield exactly one;
    /// the certification testbed yields its whole sweep lazily.
    pub fn instances(&self) -> Box<dyn Iterator<Item = NamedInput> + '_> {
        let (n, seed) = (self.n, self.seed);
        match self.family {
            Family::RandomDistinct => Box::new(std::iter::once(NamedInput {
                name: "random_distinct".to_string(),
                keys: gen_random_distinct(n, seed),
            })),
            Family::ModK { k } => Box::new(std::iter::once(NamedInput {
                name: format!("mod_k:k={k}"),
                keys: gen_mod_k(n, k, seed),
            })),
            Family::RemNearlySorted { rem } => Box::new(std::iter::once(NamedInput {
                name: format!("rem_nearly_sorted:rem={rem}"),
                keys: gen_rem(n, rem, RemDirection::Ascending, seed),
            })),
            Family::RemNearlyReverse { rem } => Box::new(std::iter::once(NamedInput {
                name: format!("rem_nearly_reverse:rem={rem}"),
                keys: gen_rem(n, rem, RemDirection::Descending, seed),
            })),
            Family::InvBlocks { block } => Box::new(std::iter::once(NamedInput {
                name: format!("inv_blocks:k={block}"),
                keys: gen_inv_blocks(n, block, seed),
            })),
            Family::BmTestbed => Box::new(bm_testbed(n, seed)),
        }
    }
}

/// Uniformly random permutation of `0..n` (Fisher-Yates).
pub fn gen_random_distinct(n: usize, seed: u64) -> Vec<Key> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut keys: Vec<Key> = (0..n as Key).collect();
    keys.shuffle(&mut rng);
    keys
}

/// `n` independent uniform draws from `0..k`.
pub fn gen_mod_k(n: usize, k: u64, seed: u64) -> Vec<Key> {
    assert!(k >= 1, "modulus must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen_range(0..k) as Key).collect()
}

/// Nearly sorted sequence with exactly `rem` items off a sorted subsequence.
///
/// Starts from the ascending run `1..=n`, overwrites `rem` random positions
/// with draws from a range ten times wider, redrawing until each replacement
/// breaks order with a neighbor, and accepts the instance only once the
/// measured presortedness equals `rem` exactly. The descending direction is
/// the mirrored construction (the whole sequence reversed).
///
/// Panics if `rem > n` or when `rem` is unattainable (for example `rem == n`
/// with nonempty input, since one item always remains in order).
pub fn gen_rem(n: usize, rem: usize, direction: RemDirection, seed: u64) -> Vec<Key> {
    assert!(rem <= n, "rem parameter exceeds n");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let wide = (10 * n as Key).max(10);
    for _attempt in 0..64 {
        let mut keys: Vec<Key> = (1..=n as Key).collect();
        let positions = rand::seq::index::sample(&mut rng, n, rem);
        for p in positions.iter() {
            for _redraw in 0..100 {
                let val = rng.gen_range(1..=wide);
                let breaks_left = p > 0 && keys[p - 1] > val;
                let breaks_right = p + 1 < n && val > keys[p + 1];
                keys[p] = val;
                if breaks_left || breaks_right {
                    break;
                }
            }
        }
        if rem_of(&keys) == rem {
            if direction == RemDirection::Descending {
                keys.reverse();
            }
            return keys;
        }
    }
    panic!("presortedness target rem={rem} not attainable at n={n}");
}

/// Sorted sequence whose consecutive blocks of `block` items are each
/// independently shuffled, keeping the total inversion count below
/// `block * n / 2`.
pub fn gen_inv_blocks(n: usize, block: usize, seed: u64) -> Vec<Key> {
    assert!(block >= 1, "block size must be at least 1");
    assert!(n == 0 || block <= n, "block size exceeds n");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut keys: Vec<Key> = (1..=n as Key).collect();
    for chunk in keys.chunks_mut(block) {
        chunk.shuffle(&mut rng);
    }
    keys
}

const BM_DISTRIBUTIONS: [&str; 5] = ["sawtooth", "random", "stagger", "plateau", "shuffle"];
const BM_TRANSFORMS: [&str; 6] = ["ident", "reverse", "rev_front", "rev_back", "sorted", "dither"];

/// Lazy sweep over the certification testbed: for every modulus `m` in the
/// powers of two below `2n`, five base distributions, each put through six
/// transforms. At `n = 50000` the sweep holds 510 instances.
pub fn bm_testbed(n: usize, seed: u64) -> BmTestbed {
    BmTestbed {
        n,
        rng: ChaCha8Rng::seed_from_u64(seed),
        m: 1,
        dist: 0,
        transform: 0,
        base: Vec::new(),
        done: n == 0,
    }
}

pub struct BmTestbed {
    n: usize,
    rng: ChaCha8Rng,
    m: u64,
    dist: usize,
    transform: usize,
    base: Vec<Key>,
    done: bool,
}

impl BmTestbed {
    fn build_base(&mut self) {
        let n = self.n;
        let m = self.m;
        self.base = match self.dist {
            // sawtooth: i mod m
            0 => (0..n).map(|i| (i as u64 % m) as Key).collect(),
            // random: uniform draw mod m
            1 => (0..n).map(|_| self.rng.gen_range(0..m) as Key).collect(),
            // stagger: (i*m + i) mod n
            2 => (0..n)
                .map(|i| ((i as u64 * m + i as u64) % n as u64) as Key)
                .collect(),
            // plateau: min(i, m)
            3 => (0..n).map(|i| (i as u64).min(m) as Key).collect(),
            // shuffle: interleave two ascending strands chosen by rand mod m
            4 => {
                let mut even: Key = 0;
                let mut odd: Key = 1;
                (0..n)
                    .map(|_| {
                        if self.rng.gen_range(0..m) != 0 {
                            even += 2;
                            even
                        } else {
                            odd += 2;
                            odd
                        }
                    })
                    .collect()
            }
            _ => unreachable!(),
        };
    }
}

impl Iterator for BmTestbed {
    type Item = NamedInput;

    fn next(&mut self) -> Option<NamedInput> {
        if self.done {
            return None;
        }
        if self.transform == 0 {
            self.build_base();
        }
        let name = format!(
            "{}:m={}:{}",
            BM_DISTRIBUTIONS[self.dist], self.m, BM_TRANSFORMS[self.transform]
        );
        let mut keys = self.base.clone();
        let n = self.n;
        match self.transform {
            0 => {}
            1 => keys.reverse(),
            2 => keys[..n / 2].reverse(),
            3 => keys[n / 2..].reverse(),
            4 => keys.sort_unstable(),
            5 => {
                for (i, x) in keys.iter_mut().enumerate() {
                    *x += (i % 5) as Key;
                }
            }
            _ => unreachable!(),
        }
        self.transform += 1;
        if self.transform == BM_TRANSFORMS.len() {
            self.transform = 0;
            self.dist += 1;
            if self.dist == BM_DISTRIBUTIONS.len() {
                self.dist = 0;
                self.m *= 2;
                if self.m >= 2 * self.n as u64 {
                    self.done = true;
                }
            }
        }
        Some(NamedInput { name, keys })
    }
}
