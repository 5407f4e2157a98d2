//! Unbounded knapsack with running time independent of the capacity.
//!
//! Any multiset of items can be split into two halves whose weights differ by
//! at most the largest weight `M`. Hence `a[s]`, the best value within
//! capacity `s`, is `max_i a[i] + a[s-i]` over `i` within `M/2` of `s/2`, and
//! the profile is superadditive, so extra pairs never overshoot. Knowing
//! `a` on a window of half-width `M+1` around `⌊c/2⌋` is enough to recover it
//! on the same-size window around `c`; halving from `T` down to a directly
//! computed prefix and squaring back up costs O(M² log T).
//!
//! The value-domain solver runs the same recursion on the minimum weight
//! needed to reach *at least* a given value, whose split argument is the
//! mirror image with `V` in place of `M`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::knapsack::check_magnitudes;
use crate::scalar::{within_guard, Scalar};
use crate::sequence::{Ext, ValueProfile};

/// Environment variable that lifts the oracle size guards when set to `1`.
pub const GUARD_OVERRIDE_ENV: &str = "CAPDP_GUARD_OVERRIDE";

/// Largest `n * T` the DP oracle accepts without the override.
pub const DP_GUARD: u128 = 100_000_000;

pub(crate) fn guard_overridden() -> bool {
    std::env::var(GUARD_OVERRIDE_ENV).is_ok_and(|v| v == "1")
}

/// A validated unbounded knapsack instance.
///
/// Items are deduplicated by weight, keeping the most valuable, and items
/// heavier than the capacity are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnboundedInstance<S> {
    /// Sorted by weight, one item per weight.
    items: Vec<(usize, S)>,
    capacity: usize,
}

impl<S: Scalar> UnboundedInstance<S> {
    pub fn new(items: Vec<(usize, S)>, capacity: usize) -> Result<Self> {
        let mut best: BTreeMap<usize, S> = BTreeMap::new();
        for (i, &(w, v)) in items.iter().enumerate() {
            if w == 0 {
                return Err(Error::InvalidInput(format!("item {i} has weight 0")));
            }
            if v < S::one() {
                return Err(Error::InvalidInput(format!("item {i} has nonpositive value {v}")));
            }
            if w <= capacity {
                let e = best.entry(w).or_insert(v);
                *e = (*e).max(v);
            }
        }
        let items: Vec<(usize, S)> = best.into_iter().collect();
        let max_v = items.iter().map(|&(_, v)| v.to_wide()).max().unwrap_or(0);
        let max_w = items.last().map_or(0, |&(w, _)| w as i128);
        check_magnitudes::<S>(items.len().max(1), max_v, max_w)?;
        // Window sums reach twice the optimum, which is at most T * V.
        if !within_guard::<S>((capacity as i128).checked_mul(max_v).and_then(|x| x.checked_mul(2))) {
            return Err(Error::Overflow(format!("2 * T * V exceeds 2^{}", S::guard_limit().trailing_zeros())));
        }
        Ok(UnboundedInstance { items, capacity })
    }

    /// `(weight, value)` pairs, sorted by weight.
    pub fn items(&self) -> &[(usize, S)] {
        &self.items
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn max_weight(&self) -> usize {
        self.items.last().map_or(0, |&(w, _)| w)
    }

    pub fn max_value(&self) -> S {
        self.items.iter().map(|&(_, v)| v).max().unwrap_or_else(S::zero)
    }

    fn with_capacity(&self, capacity: usize) -> Self {
        let items = self.items.iter().copied().filter(|&(w, _)| w <= capacity).collect();
        UnboundedInstance { items, capacity }
    }

    /// Item with the highest value-to-weight ratio; ties go to the smaller
    /// weight. `None` when no item fits.
    pub fn champion(&self) -> Option<DensityChampion<S>> {
        let mut best: Option<DensityChampion<S>> = None;
        for (index, &(weight, value)) in self.items.iter().enumerate() {
            let better = match &best {
                None => true,
                // v / w > bv / bw; equal weights cannot occur after dedup.
                Some(b) => value.to_wide() * b.weight as i128 > b.value.to_wide() * weight as i128,
            };
            if better {
                best = Some(DensityChampion { index, weight, value });
            }
        }
        best
    }
}

/// The densest item; `index` refers to [`UnboundedInstance::items`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DensityChampion<S> {
    pub index: usize,
    pub weight: usize,
    pub value: S,
}

/// Best value for every capacity `0..len`, by `⌈log2(len-1)⌉` rounds of
/// truncated self-convolution. A weight-1 value-0 filler makes every entry
/// an "at most this capacity" optimum.
fn doubling_prefix<S: Scalar>(items: &[(usize, S)], len: usize) -> Vec<S> {
    let mut v: Vec<Ext<S>> = vec![Ext::Bottom; len];
    if len == 0 {
        return Vec::new();
    }
    v[0] = Ext::Finite(S::zero());
    if len > 1 {
        v[1] = Ext::Finite(S::zero());
    }
    for &(w, val) in items {
        if w < len && Ext::Finite(val) > v[w] {
            v[w] = Ext::Finite(val);
        }
    }
    let mut reach = 1usize;
    while reach + 1 < len {
        let mut next = vec![Ext::Bottom; len];
        for i in 0..len {
            let Ext::Finite(x) = v[i] else { continue };
            for j in i..len - i {
                let cand = v[j].plus(x);
                if cand > next[i + j] {
                    next[i + j] = cand;
                }
            }
        }
        v = next;
        reach *= 2;
    }
    v.into_iter().map(|e| e.finite().expect("filler keeps every capacity reachable")).collect()
}

/// Best value for every capacity `0..=M`.
pub fn base_window<S: Scalar>(inst: &UnboundedInstance<S>) -> ValueProfile<S> {
    doubling_prefix(inst.items(), inst.max_weight() + 1).into_iter().map(Ext::Finite).collect()
}

/// Consecutive entries of a profile starting at `start`.
struct Window<S> {
    start: usize,
    vals: Vec<S>,
}

/// Computes `s ↦ best_{i+j=s} w[i] + w[j]` for `s` in `lo..=hi`, with both
/// `i` and `j` inside the window.
fn square_window<S: Scalar>(w: &Window<S>, lo: usize, hi: usize, better: fn(S, S) -> S) -> Window<S> {
    let mut vals = Vec::with_capacity(hi + 1 - lo);
    let end = w.start + w.vals.len();
    for s in lo..=hi {
        // i <= j = s - i, both in [start, end).
        let i_lo = w.start.max((s + 1).saturating_sub(end));
        let i_hi = (s / 2).min(end - 1);
        assert!(i_lo <= i_hi && s - i_lo < end, "window halves always cover the split");
        let (left, right) =
            (&w.vals[i_lo - w.start..=i_hi - w.start], &w.vals[s - i_hi - w.start..=s - i_lo - w.start]);
        let acc = left.iter().zip(right.iter().rev()).map(|(&x, &y)| x + y).reduce(better).unwrap();
        vals.push(acc);
    }
    Window { start: lo, vals }
}

/// Shared descent/ascent: `base(len)` must return the profile on `0..len`;
/// returns the profile on `[c - h, c + h]` (clipped at 0).
fn windowed<S: Scalar>(c: usize, h: usize, base: impl Fn(usize) -> Vec<S>, better: fn(S, S) -> S) -> Window<S> {
    let limit = 4 * h + 4;
    let mut centers = vec![c];
    while centers.last().unwrap() + h > limit {
        let next = centers.last().unwrap() / 2;
        centers.push(next);
    }
    let bottom = *centers.last().unwrap();
    let prefix = base(bottom + h + 1);
    let lo = bottom.saturating_sub(h);
    let mut win = Window { start: lo, vals: prefix[lo..].to_vec() };
    for &ci in centers.iter().rev().skip(1) {
        win = square_window(&win, ci - h, ci + h, better);
    }
    win
}

/// Optimal value at capacity `T` in O(M² log T).
pub fn solve_unbounded_doubling<S: Scalar>(inst: &UnboundedInstance<S>) -> Result<S> {
    let (_, win) = unbounded_doubling_window(inst)?;
    Ok(win.max_entry().finite().unwrap_or_else(S::zero))
}

/// The final window `a[T-M..=T]` of the doubling solver, with its start.
pub fn unbounded_doubling_window<S: Scalar>(inst: &UnboundedInstance<S>) -> Result<(usize, ValueProfile<S>)> {
    let cap = inst.capacity();
    let m = inst.max_weight();
    let lo = cap.saturating_sub(m);
    let win = windowed(cap, m + 1, |len| doubling_prefix(inst.items(), len), |a, b| a.max(b));
    let vals = win.vals[lo - win.start..=cap - win.start].iter().map(|&v| Ext::Finite(v)).collect();
    Ok((lo, vals))
}

/// Commits copies of the densest item until the residual capacity is at
/// most `M²`, then runs the doubling solver on the rest: O(M² log M).
pub fn solve_unbounded_steinitz<S: Scalar>(inst: &UnboundedInstance<S>) -> Result<S> {
    let m = inst.max_weight();
    let cap = inst.capacity();
    let Some(champ) = inst.champion() else {
        return Ok(S::zero());
    };
    if cap <= m * m {
        return solve_unbounded_doubling(inst);
    }
    let copies = (cap - m * m).div_ceil(champ.weight);
    let residual = inst.with_capacity(cap - copies * champ.weight);
    Ok(S::from_count(copies) * champ.value + solve_unbounded_doubling(&residual)?)
}

/// Minimum weight reaching value at least `x`, for `x` in `0..len`, by the
/// O(n·len) recurrence `g[x] = min_i w_i + g[x - v_i]` (clamped at 0).
fn min_weight_prefix<S: Scalar>(items: &[(usize, S)], len: usize) -> Vec<S> {
    let mut g: Vec<S> = Vec::with_capacity(len);
    for x in 0..len {
        if x == 0 {
            g.push(S::zero());
            continue;
        }
        let best = items
            .iter()
            .map(|&(w, v)| {
                let v = v.to_usize().unwrap_or(usize::MAX);
                S::from_count(w) + g[x.saturating_sub(v)]
            })
            .reduce(|a, b| a.min(b))
            .expect("some item reaches every value in range");
        g.push(best);
    }
    g
}

/// Optimal value via minimum weight per value, in O(V² log V).
///
/// With the densest item `j` and `k = ⌊T/w_j⌋ + 1`, the optimum lies in
/// `[(k-1)·v_j, k·v_j)` and some optimal solution uses at least `k - V`
/// copies of `j`; fixing those leaves a value window of width `v_j` below
/// `V·v_j`.
pub fn solve_unbounded_value_domain<S: Scalar>(inst: &UnboundedInstance<S>) -> Result<S> {
    let Some(champ) = inst.champion() else {
        return Ok(S::zero());
    };
    let cap = inst.capacity();
    let big_v = inst.max_value().to_usize().ok_or_else(|| Error::InvalidInput("value too large".into()))?;
    let vj = champ.value.to_usize().unwrap();
    let k = cap / champ.weight + 1;
    let base = k.saturating_sub(big_v);
    let budget = S::from_count(cap - base * champ.weight);
    let lo = (k - 1 - base) * vj;
    let hi = (k - base) * vj - 1;
    let win = windowed((lo + hi) / 2, big_v + 1, |len| min_weight_prefix(inst.items(), len), |a, b| a.min(b));
    let best = (lo..=hi)
        .rev()
        .find(|&x| win.vals[x - win.start] <= budget)
        .expect("k-1 copies of the densest item always fit");
    Ok(S::from_count(base) * champ.value + S::from_count(best))
}

/// Textbook O(n·T) oracle; refuses `n·T > 10^8` unless the guard override
/// environment variable is set.
pub fn solve_unbounded_dp<S: Scalar>(inst: &UnboundedInstance<S>) -> Result<ValueProfile<S>> {
    let cap = inst.capacity();
    let work = inst.items().len() as u128 * cap as u128;
    if work > DP_GUARD && !guard_overridden() {
        return Err(Error::GuardViolation(format!("n*T = {work} exceeds {DP_GUARD}")));
    }
    let mut a = vec![S::zero(); cap + 1];
    for t in 1..=cap {
        let mut best = S::zero();
        for &(w, v) in inst.items() {
            if w > t {
                break;
            }
            best = best.max(a[t - w] + v);
        }
        a[t] = best;
    }
    Ok(a.into_iter().map(Ext::Finite).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::Rng64;
    use proptest::prelude::*;

    fn inst(items: &[(usize, i64)], cap: usize) -> UnboundedInstance<i64> {
        UnboundedInstance::new(items.to_vec(), cap).unwrap()
    }

    fn dp_at(u: &UnboundedInstance<i64>) -> i64 {
        solve_unbounded_dp(u).unwrap().at(u.capacity()).finite().unwrap()
    }

    /// Best value by enumerating item multiplicities.
    fn enumerate(items: &[(usize, i64)], cap: usize) -> i64 {
        fn go(items: &[(usize, i64)], cap: usize) -> i64 {
            let Some((&(w, v), rest)) = items.split_first() else { return 0 };
            (0..=cap / w).map(|c| c as i64 * v + go(rest, cap - c * w)).max().unwrap()
        }
        go(items, cap)
    }

    fn random_instance(rng: &mut Rng64, max_w: usize, max_v: i64, cap: usize) -> UnboundedInstance<i64> {
        let n = rng.range_usize(1, 8);
        let items = (0..n).map(|_| (rng.range_usize(1, max_w), rng.range_i64(1, max_v))).collect();
        UnboundedInstance::new(items, rng.range_usize(0, cap)).unwrap()
    }

    #[test]
    fn dedup_and_filter() {
        let u = inst(&[(3, 5), (3, 7), (9, 100), (1, 1)], 5);
        assert_eq!(u.items(), &[(1, 1), (3, 7)]);
        assert_eq!(u.max_weight(), 3);
        assert_eq!(u.max_value(), 7);
    }

    #[test]
    fn base_window_examples() {
        let u = inst(&[(3, 5), (5, 9)], 11);
        assert_eq!(base_window(&u), ValueProfile::from_finite([0, 0, 0, 5, 5, 9]));
        let unit = inst(&[(1, 1)], 30);
        assert_eq!(base_window(&unit), ValueProfile::from_finite([0, 1]));
    }

    #[test]
    fn worked_examples() {
        let u = inst(&[(3, 5), (5, 9)], 11);
        assert_eq!(solve_unbounded_doubling(&u).unwrap(), 19);
        assert_eq!(solve_unbounded_steinitz(&u).unwrap(), 19);
        assert_eq!(solve_unbounded_value_domain(&u).unwrap(), 19);
        assert_eq!(dp_at(&u), 19);
        assert_eq!(enumerate(u.items(), 11), 19);
        let two = inst(&[(2, 3)], 7);
        assert_eq!(solve_unbounded_doubling(&two).unwrap(), 9);
        let unit = inst(&[(1, 1)], 5);
        assert_eq!(solve_unbounded_value_domain(&unit).unwrap(), 5);
    }

    #[test]
    fn trivial_dp() {
        let none = inst(&[], 4);
        assert_eq!(solve_unbounded_dp(&none).unwrap(), ValueProfile::zeros(5));
        assert_eq!(solve_unbounded_doubling(&none).unwrap(), 0);
        assert_eq!(solve_unbounded_steinitz(&none).unwrap(), 0);
        assert_eq!(solve_unbounded_value_domain(&none).unwrap(), 0);
        let zero = inst(&[(1, 3)], 0);
        assert_eq!(solve_unbounded_dp(&zero).unwrap(), ValueProfile::zeros(1));
        assert_eq!(solve_unbounded_doubling(&zero).unwrap(), 0);
    }

    #[test]
    fn dp_matches_enumeration() {
        let mut rng = Rng64::new(17);
        for _ in 0..300 {
            let u = random_instance(&mut rng, 6, 20, 15);
            let a = solve_unbounded_dp(&u).unwrap();
            for t in 0..=u.capacity() {
                assert_eq!(a.at(t), Ext::Finite(enumerate(u.items(), t)));
            }
        }
    }

    #[test]
    fn steinitz_on_large_capacity() {
        let u = inst(&[(2, 3), (3, 4)], 10_000);
        assert_eq!(u.champion().unwrap().weight, 2);
        assert_eq!(solve_unbounded_steinitz(&u).unwrap(), solve_unbounded_doubling(&u).unwrap());
        assert_eq!(solve_unbounded_doubling(&u).unwrap(), 15_000);
    }

    #[test]
    fn champion_ties_prefer_smaller_weight() {
        let u = inst(&[(4, 6), (2, 3), (3, 4)], 10);
        let c = u.champion().unwrap();
        assert_eq!((c.weight, c.value), (2, 3));
    }

    #[test]
    fn profile_is_superadditive_and_splits_near_half() {
        let mut rng = Rng64::new(23);
        for _ in 0..50 {
            let u = random_instance(&mut rng, 12, 30, 400);
            let m = u.max_weight() as i64;
            let a: Vec<i64> = solve_unbounded_dp(&u).unwrap().iter().map(|e| e.finite().unwrap()).collect();
            let cap = a.len() as i64 - 1;
            for _ in 0..40 {
                let s = rng.range_i64(0, cap);
                let t = rng.range_i64(0, cap - s);
                assert!(a[(s + t) as usize] >= a[s as usize] + a[t as usize]);
                // Best split restricted to i within M/2 + 1 of s/2.
                let lo = (s / 2 - m / 2 - 1).max(0);
                let hi = (s / 2 + m / 2 + 1).min(s);
                let best = (lo..=hi).map(|i| a[i as usize] + a[(s - i) as usize]).max().unwrap();
                assert_eq!(best, a[s as usize], "s={s}");
            }
        }
    }

    #[test]
    fn dp_guard() {
        let u = inst(&[(1, 1), (2, 3)], 60_000_000);
        if !guard_overridden() {
            assert!(matches!(solve_unbounded_dp(&u), Err(Error::GuardViolation(_))));
        }
        assert_eq!(solve_unbounded_doubling(&u).unwrap(), 90_000_000);
        assert_eq!(solve_unbounded_value_domain(&u).unwrap(), 90_000_000);
    }

    #[test]
    fn overflow_guard() {
        assert!(matches!(UnboundedInstance::new(vec![(1, 1i64 << 40)], 1 << 20), Err(Error::Overflow(_))));
    }

    #[test]
    fn window_covers_final_capacities() {
        let u = inst(&[(3, 5), (5, 9), (7, 13)], 1000);
        let (start, w) = unbounded_doubling_window(&u).unwrap();
        assert_eq!(start, 993);
        let a = solve_unbounded_dp(&u).unwrap();
        assert_eq!(w.as_slice(), &a[993..=1000]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn solvers_agree_with_dp(
            items in prop::collection::vec((1usize..=40, 1i64..=60), 1..10),
            cap in 0usize..=5000,
        ) {
            let u = UnboundedInstance::new(items, cap).unwrap();
            let want = dp_at(&u);
            prop_assert_eq!(solve_unbounded_doubling(&u).unwrap(), want);
            prop_assert_eq!(solve_unbounded_steinitz(&u).unwrap(), want);
            prop_assert_eq!(solve_unbounded_value_domain(&u).unwrap(), want);
        }

        #[test]
        fn value_domain_small_values(
            items in prop::collection::vec((1usize..=40, 1i64..=12), 1..10),
            cap in 0usize..=3000,
        ) {
            let u = UnboundedInstance::new(items, cap).unwrap();
            prop_assert_eq!(solve_unbounded_value_domain(&u).unwrap(), solve_unbounded_doubling(&u).unwrap());
        }
    }
}
