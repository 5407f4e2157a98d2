//! 0/1 knapsack over all capacities.
//!
//! Items sharing a weight form a class whose best selections are greedy: the
//! `j` most valuable items. Its profile over capacity is therefore step
//! concave with step equal to the weight, and folding the `D` class profiles
//! with [`conv_kstep_concave_prefix`] gives every capacity's optimum in
//! O(T·D).

use std::collections::BTreeMap;

use crate::concave::{conv_kstep_concave_prefix, strided_unchecked};
use crate::error::{Error, Result};
use crate::scalar::{within_guard, Scalar};
use crate::sequence::{Ext, ValueProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Item<S> {
    pub weight: usize,
    pub value: S,
}

/// A validated 0/1 knapsack instance.
///
/// Items with weight above the capacity are kept (they matter to the oracle
/// only as no-ops) but excluded from the statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnapsackInstance<S> {
    items: Vec<Item<S>>,
    capacity: usize,
    /// Total value of zero-weight items accepted in lax mode.
    offset: S,
}

pub(crate) fn check_magnitudes<S: Scalar>(count: usize, max_value: i128, max_weight: i128) -> Result<()> {
    let bound = (count as i128).checked_mul(max_value + max_weight);
    if within_guard::<S>(bound) {
        Ok(())
    } else {
        Err(Error::Overflow(format!("n * (max value + max weight) exceeds 2^{}", S::guard_limit().trailing_zeros())))
    }
}

impl<S: Scalar> KnapsackInstance<S> {
    /// Requires every weight and value to be at least 1.
    pub fn new(items: Vec<(usize, S)>, capacity: usize) -> Result<Self> {
        for (i, &(w, v)) in items.iter().enumerate() {
            if w == 0 {
                return Err(Error::InvalidInput(format!("item {i} has weight 0")));
            }
            if v < S::one() {
                return Err(Error::InvalidInput(format!("item {i} has nonpositive value {v}")));
            }
        }
        Self::build(items, capacity, S::zero())
    }

    /// Accepts zero weights and zero values: zero-value items are dropped and
    /// zero-weight items are always packed, contributing a constant offset.
    pub fn new_lax(items: Vec<(usize, S)>, capacity: usize) -> Result<Self> {
        let mut kept = Vec::with_capacity(items.len());
        let mut offset = S::zero();
        for (i, &(w, v)) in items.iter().enumerate() {
            if v < S::zero() {
                return Err(Error::InvalidInput(format!("item {i} has negative value {v}")));
            }
            if v.is_zero() {
                continue;
            }
            if w == 0 {
                offset = offset.checked_add(&v).ok_or_else(|| Error::Overflow("zero-weight offset".into()))?;
            } else {
                kept.push((w, v));
            }
        }
        Self::build(kept, capacity, offset)
    }

    fn build(items: Vec<(usize, S)>, capacity: usize, offset: S) -> Result<Self> {
        let max_v = items.iter().map(|&(_, v)| v.to_wide()).max().unwrap_or(0) + offset.to_wide();
        let max_w = items.iter().map(|&(w, _)| w as i128).max().unwrap_or(0).max(capacity as i128);
        check_magnitudes::<S>(items.len().max(1), max_v, max_w)?;
        let items = items.into_iter().map(|(weight, value)| Item { weight, value }).collect();
        Ok(KnapsackInstance { items, capacity, offset })
    }

    pub fn items(&self) -> &[Item<S>] {
        &self.items
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn offset(&self) -> S {
        self.offset
    }

    fn fitting(&self) -> impl Iterator<Item = &Item<S>> {
        self.items.iter().filter(move |it| it.weight <= self.capacity)
    }

    /// Number of distinct weights among items that fit.
    pub fn distinct_weights(&self) -> usize {
        self.by_weight().len()
    }

    /// Largest weight among items that fit (0 if none).
    pub fn max_weight(&self) -> usize {
        self.fitting().map(|it| it.weight).max().unwrap_or(0)
    }

    /// Largest value among items that fit (0 if none).
    pub fn max_value(&self) -> S {
        self.fitting().map(|it| it.value).max().unwrap_or_else(S::zero)
    }

    /// Values of fitting items, grouped by weight.
    pub fn by_weight(&self) -> BTreeMap<usize, Vec<S>> {
        let mut classes: BTreeMap<usize, Vec<S>> = BTreeMap::new();
        for it in self.fitting() {
            classes.entry(it.weight).or_default().push(it.value);
        }
        classes
    }
}

/// Profile of a single weight class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightClassProfile<S> {
    pub weight: usize,
    pub profile: ValueProfile<S>,
}

/// `profile[t]` is the sum of the `floor(t / weight)` largest values (all of
/// them once the class is exhausted), for `t` in `0..=capacity`.
pub fn greedy_class_profile<S: Scalar>(values: &[S], weight: usize, capacity: usize) -> WeightClassProfile<S> {
    assert!(weight >= 1, "class weight must be positive");
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut prefix = Vec::with_capacity(sorted.len() + 1);
    prefix.push(S::zero());
    for v in sorted {
        prefix.push(*prefix.last().unwrap() + v);
    }
    let top = prefix.len() - 1;
    let profile = (0..=capacity).map(|t| Ext::Finite(prefix[(t / weight).min(top)])).collect();
    WeightClassProfile { weight, profile }
}

fn with_offset<S: Scalar>(p: ValueProfile<S>, offset: S) -> ValueProfile<S> {
    if offset.is_zero() {
        p
    } else {
        p.iter().map(|e| e.plus(offset)).collect()
    }
}

/// Optimal value for every capacity `0..=T`, in O(T·D).
pub fn solve_knapsack_td<S: Scalar>(inst: &KnapsackInstance<S>) -> Result<ValueProfile<S>> {
    let cap = inst.capacity();
    let mut s = ValueProfile::zeros(cap + 1);
    for (w, values) in inst.by_weight() {
        let class = greedy_class_profile(&values, w, cap);
        s = conv_kstep_concave_prefix(&s, &class.profile, w, cap + 1)?;
    }
    Ok(with_offset(s, inst.offset()))
}

/// Textbook O(n·T) dynamic program.
pub fn solve_knapsack_bellman<S: Scalar>(inst: &KnapsackInstance<S>) -> Result<ValueProfile<S>> {
    let cap = inst.capacity();
    let mut s = vec![S::zero(); cap + 1];
    for it in inst.fitting() {
        let (w, v) = (it.weight, it.value);
        // Walk down in blocks of `w`; each block reads only the block below
        // it, which has not been updated yet.
        let mut hi = cap + 1;
        while hi > w {
            let lo = hi.saturating_sub(w).max(w);
            let (below, here) = s.split_at_mut(lo);
            let src = &below[lo - w..hi - w];
            for (dst, &prev) in here[..hi - lo].iter_mut().zip(src) {
                let cand = prev + v;
                if cand > *dst {
                    *dst = cand;
                }
            }
            hi = lo;
        }
    }
    Ok(with_offset(s.into_iter().map(Ext::Finite).collect(), inst.offset()))
}

/// Optimal value at capacity `T` via minimum weight per exact total value.
///
/// Items sharing a value form classes whose cheapest selections are greedy
/// by weight; their min-weight profiles are convex at stride equal to the
/// value, so each fold is a strided concave convolution of negated weights.
/// Runs in O(D_v · Σv) where `D_v` counts distinct values.
pub fn solve_knapsack_value_domain<S: Scalar>(inst: &KnapsackInstance<S>) -> Result<S> {
    let cap = inst.capacity();
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for it in inst.fitting() {
        let v =
            it.value.to_usize().ok_or_else(|| Error::InvalidInput("value too large for the value domain".into()))?;
        classes.entry(v).or_default().push(it.weight);
    }
    // neg[x] = -(minimum weight of a subset with total value exactly x).
    let mut neg: Vec<Ext<S>> = vec![Ext::Finite(S::zero())];
    for (v, mut weights) in classes {
        weights.sort_unstable();
        let mut core = Vec::with_capacity(weights.len() + 1);
        let mut acc = S::zero();
        core.push(Ext::Finite(acc));
        for w in weights {
            acc = acc - S::from_count(w);
            core.push(Ext::Finite(acc));
        }
        let len = neg.len() + (core.len() - 1) * v;
        neg = strided_unchecked(&neg, &core, v, len);
    }
    let limit = S::from_count(cap);
    let best = neg
        .iter()
        .enumerate()
        .rev()
        .find(|(_, e)| e.finite().is_some_and(|x| -x <= limit))
        .map(|(x, _)| x)
        .unwrap_or(0);
    Ok(S::from_count(best) + inst.offset())
}
