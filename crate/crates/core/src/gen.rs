//! Seeded instance generators.
//!
//! All randomness comes from PCG64 (`pcg_xsl_rr_128_64`, the LCG128/XSL-RR
//! variant) seeded as `Pcg64::new(seed, STREAM)`. Bounded integers use the
//! multiply-shift reduction `(x as u128 * n) >> 64` on each 64-bit output, so
//! any implementation of the same generator reproduces the same instances.

use rand_core::Rng;
use rand_pcg::Pcg64;

use crate::dag::NodeWeightedDag;
use crate::knapsack::KnapsackInstance;
use crate::sequence::Ext;

const STREAM: u128 = 0x0a02_bdbf_7bb3_c0a7_ac28_fa16_a64a_bf96;

/// Deterministic 64-bit generator used by every instance family.
#[derive(Clone, Debug)]
pub struct Rng64(Pcg64);

impl Rng64 {
    pub fn new(seed: u64) -> Self {
        Rng64(Pcg64::new(seed as u128, STREAM))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `0..n`; `n` must be positive.
    #[inline]
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        ((self.next_u64() as u128 * n as u128) >> 64) as u64
    }

    /// Uniform in `lo..=hi`.
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi, "empty range");
        let span = (hi as i128 - lo as i128 + 1) as u128;
        if span > u64::MAX as u128 {
            return self.next_u64() as i64;
        }
        (lo as i128 + self.below(span as u64) as i128) as i64
    }

    /// Uniform in `lo..=hi`.
    pub fn range_usize(&mut self, lo: usize, hi: usize) -> usize {
        self.range_i64(lo as i64, hi as i64) as usize
    }

    /// True with probability `num / den`.
    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }

    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            xs.swap(i, j);
        }
    }
}

/// `n` uniform rewards in `lo..=hi`.
pub fn rewards(rng: &mut Rng64, n: usize, lo: i64, hi: i64) -> Vec<Ext<i64>> {
    (0..n).map(|_| Ext::Finite(rng.range_i64(lo, hi))).collect()
}

/// Edge `i -> j` exactly when `j - i >= delta`.
pub fn separated_dense_dag(n: usize, delta: usize, rewards: Vec<Ext<i64>>) -> NodeWeightedDag<i64> {
    let edges = (0..n).flat_map(|i| (i + delta.max(1)..n).map(move |j| (i, j))).collect();
    NodeWeightedDag::new(rewards, edges, true).expect("valid by construction")
}

/// Complete DAG on `n` vertices.
pub fn complete_dag(n: usize, rewards: Vec<Ext<i64>>) -> NodeWeightedDag<i64> {
    separated_dense_dag(n, 1, rewards)
}

/// Semiorder: random points on a line, `i -> j` when point `j` exceeds
/// point `i` by at least `gap`. Always has the 2-path property.
pub fn semiorder_dag(rng: &mut Rng64, n: usize, spread: i64, gap: i64) -> NodeWeightedDag<i64> {
    let mut x: Vec<i64> = (0..n).map(|_| rng.range_i64(0, spread)).collect();
    x.sort_unstable();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if x[j] - x[i] >= gap {
                edges.push((i, j));
            }
        }
    }
    NodeWeightedDag::new(vec![Ext::Finite(0); n], edges, true).expect("valid by construction")
}

/// Interval order: random intervals, `i -> j` when interval `i` ends before
/// interval `j` starts. Transitive, but the 2-path property may fail.
pub fn interval_order_dag(rng: &mut Rng64, n: usize, spread: i64, max_len: i64) -> NodeWeightedDag<i64> {
    let mut iv: Vec<(i64, i64)> = (0..n)
        .map(|_| {
            let l = rng.range_i64(0, spread);
            (l, l + rng.range_i64(0, max_len))
        })
        .collect();
    iv.sort_unstable_by_key(|&(l, r)| (r, l));
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if iv[i].1 < iv[j].0 {
                edges.push((i, j));
            }
        }
    }
    NodeWeightedDag::new(vec![Ext::Finite(0); n], edges, true).expect("valid by construction")
}

/// Closure of a random DAG with edge probability `num / den`.
pub fn random_transitive_dag(rng: &mut Rng64, n: usize, num: u64, den: u64) -> NodeWeightedDag<i64> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.chance(num, den) {
                edges.push((i, j));
            }
        }
    }
    NodeWeightedDag::new(vec![Ext::Finite(0); n], edges, false).expect("valid by construction").transitive_closure()
}

/// Knapsack instance families in the style of the classic benchmark sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnapsackFamily {
    /// Weights drawn from `distinct` fixed values, values uniform.
    FewDistinct { distinct: usize },
    /// Weights at most `max_weight`, values uniform up to `range`.
    SmallM { max_weight: usize },
    /// Values at most `max_value`, weights uniform up to `range`.
    SmallV { max_value: i64 },
    /// Weights and values independent and uniform up to `range`.
    Uncorrelated,
}

impl KnapsackFamily {
    pub fn name(&self) -> &'static str {
        match self {
            KnapsackFamily::FewDistinct { .. } => "few-distinct",
            KnapsackFamily::SmallM { .. } => "small-M",
            KnapsackFamily::SmallV { .. } => "small-V",
            KnapsackFamily::Uncorrelated => "uncorrelated",
        }
    }
}

/// `n` items from `family` with coordinates up to `range` (where the family
/// does not pin them) and the given capacity.
pub fn knapsack_items(rng: &mut Rng64, family: KnapsackFamily, n: usize, range: usize) -> Vec<(usize, i64)> {
    let range = range.max(1);
    match family {
        KnapsackFamily::FewDistinct { distinct } => {
            let pool: Vec<usize> = (0..distinct.max(1)).map(|_| rng.range_usize(1, range)).collect();
            (0..n).map(|_| (pool[rng.below(pool.len() as u64) as usize], rng.range_i64(1, range as i64))).collect()
        }
        KnapsackFamily::SmallM { max_weight } => {
            (0..n).map(|_| (rng.range_usize(1, max_weight.max(1)), rng.range_i64(1, range as i64))).collect()
        }
        KnapsackFamily::SmallV { max_value } => {
            (0..n).map(|_| (rng.range_usize(1, range), rng.range_i64(1, max_value.max(1)))).collect()
        }
        KnapsackFamily::Uncorrelated => {
            (0..n).map(|_| (rng.range_usize(1, range), rng.range_i64(1, range as i64))).collect()
        }
    }
}

/// A validated instance from [`knapsack_items`].
pub fn knapsack_instance(
    rng: &mut Rng64,
    family: KnapsackFamily,
    n: usize,
    range: usize,
    capacity: usize,
) -> KnapsackInstance<i64> {
    KnapsackInstance::new(knapsack_items(rng, family, n, range), capacity).expect("generated items are valid")
}

/// Random `rows x cols` matrix satisfying
/// `A[i][j] + A[i+1][j+1] >= A[i+1][j] + A[i][j+1]`: 2-D prefix sums of
/// sparse nonnegative increments up to `spread`, plus random row and column
/// offsets.
pub fn random_monge_matrix(rng: &mut Rng64, rows: usize, cols: usize, spread: i64) -> Vec<Vec<i64>> {
    let row_off: Vec<i64> = (0..rows).map(|_| rng.range_i64(-4 * spread, 4 * spread)).collect();
    let col_off: Vec<i64> = (0..cols).map(|_| rng.range_i64(-4 * spread, 4 * spread)).collect();
    let mut p = vec![vec![0i64; cols + 1]; rows + 1];
    let mut a = vec![vec![0i64; cols]; rows];
    for i in 0..rows {
        for j in 0..cols {
            let d = if rng.below(3) == 0 { rng.range_i64(0, spread) } else { 0 };
            p[i + 1][j + 1] = p[i][j + 1] + p[i + 1][j] - p[i][j] + d;
            a[i][j] = p[i + 1][j + 1] + row_off[i] + col_off[j];
        }
    }
    a
}
