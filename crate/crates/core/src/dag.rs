//! Maximum-reward paths with a hop budget in node-weighted DAGs.
//!
//! A path's value is the sum of the rewards of every vertex on it, endpoints
//! included; constructions that need unrewarded endpoints give them reward 0.
//! Hops are edges. In a transitive DAG where every 2-edge path `u1 -> u2 ->
//! u3` and every other vertex `v` have `u1 -> v` or `v -> u3`, the best value
//! over exactly `k` hops is concave in `k` for all rewards, and a penalty
//! search answers budgeted queries with O(log(nM)) unconstrained passes.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::knapsack::KnapsackInstance;
use crate::lagrange::{penalty_search, BudgetMode, LagrangianOutcome, LagrangianSolution};
use crate::scalar::{within_guard, Scalar};
use crate::sequence::{max_abs, Ext, ValueProfile};

/// A DAG whose vertex indices are a topological order, with a reward per
/// vertex (`Bottom` marks a vertex no path may use).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeWeightedDag<S> {
    rewards: Vec<Ext<S>>,
    out_start: Vec<usize>,
    out_dst: Vec<usize>,
    in_start: Vec<usize>,
    in_src: Vec<usize>,
    transitive: bool,
}

fn csr(n: usize, pairs: &[(usize, usize)]) -> (Vec<usize>, Vec<usize>) {
    let mut start = vec![0usize; n + 1];
    for &(u, _) in pairs {
        start[u + 1] += 1;
    }
    for i in 0..n {
        start[i + 1] += start[i];
    }
    let dst = pairs.iter().map(|&(_, v)| v).collect();
    (start, dst)
}

impl<S: Scalar> NodeWeightedDag<S> {
    /// Every edge `(u, v)` needs `u < v < n`; duplicates are merged.
    /// `transitive` is a claim checked by [`Self::is_transitively_closed`],
    /// not here.
    pub fn new(rewards: Vec<Ext<S>>, mut edges: Vec<(usize, usize)>, transitive: bool) -> Result<Self> {
        let n = rewards.len();
        for &(u, v) in &edges {
            if v >= n {
                return Err(Error::InvalidInput(format!(
                    "edge {u} -> {v} names a vertex beyond {}",
                    n.saturating_sub(1)
                )));
            }
            if u >= v {
                return Err(Error::InvalidInput(format!("edge {u} -> {v} does not follow the vertex order")));
            }
        }
        if !within_guard::<S>((n as i128).checked_mul(max_abs(&rewards))) {
            return Err(Error::Overflow("n * max |reward| exceeds the guard".into()));
        }
        edges.sort_unstable();
        edges.dedup();
        let (out_start, out_dst) = csr(n, &edges);
        let mut rev: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (v, u)).collect();
        rev.sort_unstable();
        let (in_start, in_src) = csr(n, &rev);
        Ok(NodeWeightedDag { rewards, out_start, out_dst, in_start, in_src, transitive })
    }

    pub fn n(&self) -> usize {
        self.rewards.len()
    }

    pub fn m(&self) -> usize {
        self.out_dst.len()
    }

    pub fn reward(&self, v: usize) -> Ext<S> {
        self.rewards[v]
    }

    pub fn rewards(&self) -> &[Ext<S>] {
        &self.rewards
    }

    /// Successors of `u`, ascending.
    pub fn successors(&self, u: usize) -> &[usize] {
        &self.out_dst[self.out_start[u]..self.out_start[u + 1]]
    }

    /// Predecessors of `v`, ascending.
    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.in_src[self.in_start[v]..self.in_start[v + 1]]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.successors(u).binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| self.successors(u).iter().map(move |&v| (u, v)))
    }

    /// Whether the graph was declared transitive.
    pub fn is_transitive(&self) -> bool {
        self.transitive
    }

    /// Same graph with different rewards.
    pub fn with_rewards(&self, rewards: Vec<Ext<S>>) -> Result<Self> {
        if rewards.len() != self.n() {
            return Err(Error::InvalidInput(format!("expected {} rewards, got {}", self.n(), rewards.len())));
        }
        NodeWeightedDag::new(rewards, self.edges().collect(), self.transitive)
    }

    fn out_sets(&self) -> Vec<FixedBitSet> {
        (0..self.n())
            .map(|u| {
                let mut b = FixedBitSet::with_capacity(self.n());
                b.extend(self.successors(u).iter().copied());
                b
            })
            .collect()
    }

    fn in_sets(&self) -> Vec<FixedBitSet> {
        (0..self.n())
            .map(|v| {
                let mut b = FixedBitSet::with_capacity(self.n());
                b.extend(self.predecessors(v).iter().copied());
                b
            })
            .collect()
    }

    /// Checks that `u -> v -> w` always implies `u -> w`. O(n·m/64).
    pub fn is_transitively_closed(&self) -> bool {
        let out = self.out_sets();
        self.edges().all(|(u, v)| out[v].is_subset(&out[u]))
    }

    /// The transitive closure, flagged transitive.
    pub fn transitive_closure(&self) -> Self {
        let n = self.n();
        let mut reach = self.out_sets();
        for u in (0..n).rev() {
            let mut acc = reach[u].clone();
            for &v in self.successors(u) {
                acc.union_with(&reach[v]);
            }
            reach[u] = acc;
        }
        let edges = (0..n).flat_map(|u| reach[u].ones().map(move |v| (u, v)).collect::<Vec<_>>()).collect();
        NodeWeightedDag::new(self.rewards.clone(), edges, true).expect("closure keeps the vertex order")
    }

    /// Adds a reward-0 source before and sink after every vertex, joined to
    /// all of them and to each other. Returns the graph and the two new
    /// indices. Transitivity and the 2-path property are preserved.
    pub fn with_universal_endpoints(&self) -> (Self, usize, usize) {
        let n = self.n();
        let (s, t) = (0, n + 1);
        let mut rewards = Vec::with_capacity(n + 2);
        rewards.push(Ext::Finite(S::zero()));
        rewards.extend_from_slice(&self.rewards);
        rewards.push(Ext::Finite(S::zero()));
        let mut edges: Vec<(usize, usize)> = self.edges().map(|(u, v)| (u + 1, v + 1)).collect();
        edges.extend((1..=n).flat_map(|v| [(s, v), (v, t)]));
        edges.push((s, t));
        let g = NodeWeightedDag::new(rewards, edges, self.transitive).expect("shifted edges stay ordered");
        (g, s, t)
    }

    fn check_endpoints(&self, s: usize, t: usize) -> Result<()> {
        if s >= self.n() || t >= self.n() {
            return Err(Error::InvalidInput(format!("endpoint out of range for {} vertices", self.n())));
        }
        if s > t {
            return Err(Error::InvalidInput(format!("source {s} comes after sink {t}")));
        }
        Ok(())
    }
}

/// Best value per exact hop count, with an "at most" view.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopProfile<S> {
    exact: ValueProfile<S>,
}

impl<S: Scalar> HopProfile<S> {
    pub fn new(exact: ValueProfile<S>) -> Self {
        HopProfile { exact }
    }

    /// Entry `k`: best value over paths with exactly `k` hops.
    pub fn exact(&self) -> &ValueProfile<S> {
        &self.exact
    }

    /// Entry `k`: best value over paths with at most `k` hops.
    pub fn at_most(&self) -> ValueProfile<S> {
        self.exact.prefix_max()
    }
}

/// Exact dynamic program over (vertex, hops) for hop counts `0..=max_hops`,
/// in O(max_hops · m).
pub fn dp_hop_profile<S: Scalar>(g: &NodeWeightedDag<S>, s: usize, t: usize, max_hops: usize) -> Result<HopProfile<S>> {
    g.check_endpoints(s, t)?;
    let mut cur = vec![Ext::Bottom; g.n()];
    cur[s] = g.reward(s);
    let mut exact = vec![cur[t]];
    for _ in 0..max_hops {
        let mut next = vec![Ext::Bottom; g.n()];
        for (v, slot) in next.iter_mut().enumerate().take(t + 1).skip(s + 1) {
            let Ext::Finite(r) = g.reward(v) else { continue };
            let best = g.predecessors(v).iter().filter(|&&u| u >= s).map(|&u| cur[u]).max();
            if let Some(b) = best {
                *slot = b.plus(r);
            }
        }
        cur = next;
        exact.push(cur[t]);
    }
    Ok(HopProfile::new(exact.into()))
}

/// Result of [`check_property_p`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropertyPWitness {
    Holds,
    /// `u1 -> u2 -> u3` is a path and `v` has neither `u1 -> v` nor `v -> u3`.
    Counterexample {
        u1: usize,
        u2: usize,
        u3: usize,
        v: usize,
    },
}

impl PropertyPWitness {
    pub fn holds(&self) -> bool {
        matches!(self, PropertyPWitness::Holds)
    }
}

/// Tests the 2-path property on a transitive DAG.
pub fn check_property_p<S: Scalar>(g: &NodeWeightedDag<S>) -> Result<PropertyPWitness> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let n = g.n();
    let out = g.out_sets();
    let inn = g.in_sets();
    let mut cover = FixedBitSet::with_capacity(n);
    for u2 in 0..n {
        for &u1 in g.predecessors(u2) {
            for &u3 in g.successors(u2) {
                cover.clone_from(&out[u1]);
                cover.union_with(&inn[u3]);
                cover.insert(u1);
                cover.insert(u3);
                if let Some(v) = cover.zeroes().next() {
                    debug_assert!(g.has_edge(u1, u2) && g.has_edge(u2, u3));
                    debug_assert!(!g.has_edge(u1, v) && !g.has_edge(v, u3));
                    return Ok(PropertyPWitness::Counterexample { u1, u2, u3, v });
                }
            }
        }
    }
    Ok(PropertyPWitness::Holds)
}

/// Rewards that break concavity around a counterexample: 1000 on `u1`,
/// `u2`, `u3`, 1001 on `v`, and `Bottom` everywhere else. With universal
/// endpoints added, the best paths over 2, 3 and 4 hops are `v` alone
/// (1001), two of the `u`s (2000) and all three (3000), and 2000 lies below
/// the chord. Returns `None` when the property holds.
pub fn counterexample_rewards<S: Scalar>(n: usize, witness: PropertyPWitness) -> Option<Vec<Ext<S>>> {
    let PropertyPWitness::Counterexample { u1, u2, u3, v } = witness else { return None };
    let mut rewards = vec![Ext::Bottom; n];
    for u in [u1, u2, u3] {
        rewards[u] = Ext::Finite(S::from_count(1000));
    }
    rewards[v] = Ext::Finite(S::from_count(1001));
    Some(rewards)
}

/// One unconstrained pass: maximizes `value - lambda * units` over `s -> t`
/// paths, where each vertex after `s` costs `units(v)`. Returns `None` if
/// `t` is unreachable.
fn weighted_probe<S: Scalar>(
    g: &NodeWeightedDag<S>,
    s: usize,
    t: usize,
    lambda: i128,
    units: impl Fn(usize) -> usize,
) -> Option<LagrangianOutcome> {
    // (penalized value, fewest units, most units) per vertex.
    let mut state: Vec<Option<(i128, usize, usize)>> = vec![None; t + 1 - s];
    state[0] = g.reward(s).finite().map(|r| (r.to_wide(), 0, 0));
    for v in s + 1..=t {
        let Ext::Finite(r) = g.reward(v) else { continue };
        let c = units(v);
        let gain = r.to_wide() - lambda * c as i128;
        let mut acc: Option<(i128, usize, usize)> = None;
        for &u in g.predecessors(v) {
            if u < s {
                continue;
            }
            let Some((b, lo, hi)) = state[u - s] else { continue };
            acc = Some(match acc {
                Some((a, alo, ahi)) if a > b => (a, alo, ahi),
                Some((a, alo, ahi)) if a == b => (a, alo.min(lo), ahi.max(hi)),
                _ => (b, lo, hi),
            });
        }
        state[v - s] = acc.map(|(b, lo, hi)| (b + gain, lo + c, hi + c));
    }
    state[t - s].map(|(best, k_min, k_max)| LagrangianOutcome { lambda, best, k_min, k_max })
}

/// Probe with every hop penalized by `lambda`.
pub fn lagrangian_probe<S: Scalar>(
    g: &NodeWeightedDag<S>,
    s: usize,
    t: usize,
    lambda: i128,
) -> Option<LagrangianOutcome> {
    weighted_probe(g, s, t, lambda, |_| 1)
}

fn penalty_bound(n: usize, max_abs: i128) -> i128 {
    2 * n as i128 * max_abs.max(1) + 1
}

/// Best value over `s -> t` paths with at most `k` hops, by penalty search.
///
/// Exact when the exact-hop profile is concave on its feasible range, which
/// holds on transitive graphs with the 2-path property. Otherwise the search
/// may report [`Error::ConcavityViolation`] or return the penalty bound
/// `max_j f(j) - λ·(j - k)`, which can exceed the true optimum.
pub fn solve_lagrangian<S: Scalar>(g: &NodeWeightedDag<S>, s: usize, t: usize, k: usize) -> Result<LagrangianSolution> {
    g.check_endpoints(s, t)?;
    let bound = penalty_bound(g.n(), max_abs(g.rewards()));
    penalty_search(k, BudgetMode::AtMost, bound, |lambda| lagrangian_probe(g, s, t, lambda))
}

/// Sparse graph whose source-sink paths pick entries of `a` at least
/// `delta` apart: source 0, then `u_i = 2i+1` (reward `a[i]`, one unit) and
/// `v_i = 2i+2` (reward 0, no units), sink `2n+1`. Edges are `S -> u_i`,
/// `u_i -> v_i`, `v_i -> v_{i+1}`, `v_i -> u_{i+delta}`, `v_i -> T` and
/// `S -> T`, so a path's units count its picked entries.
pub fn separated_graph<S: Scalar>(a: &[S], delta: usize) -> Result<(NodeWeightedDag<S>, usize, usize)> {
    assert!(delta >= 1, "separation must be positive");
    let n = a.len();
    let (s, t) = (0, 2 * n + 1);
    let u = |i: usize| 2 * i + 1;
    let v = |i: usize| 2 * i + 2;
    let mut rewards = vec![Ext::Finite(S::zero()); 2 * n + 2];
    let mut edges = Vec::with_capacity(5 * n + 1);
    for (i, &x) in a.iter().enumerate() {
        rewards[u(i)] = Ext::Finite(x);
        edges.push((s, u(i)));
        edges.push((u(i), v(i)));
        edges.push((v(i), t));
        if i + 1 < n {
            edges.push((v(i), v(i + 1)));
        }
        if i + delta < n {
            edges.push((v(i), u(i + delta)));
        }
    }
    edges.push((s, t));
    Ok((NodeWeightedDag::new(rewards, edges, false)?, s, t))
}

fn check_separated(n: usize, k: usize, delta: usize) -> Result<()> {
    if k == 0 || delta == 0 {
        return Err(Error::InvalidInput("k and delta must be positive".into()));
    }
    if n == 0 || (k - 1) as u128 * delta as u128 > (n - 1) as u128 {
        return Err(Error::Infeasible(format!("{k} entries {delta} apart do not fit in {n}")));
    }
    Ok(())
}

/// Maximum sum of exactly `k` entries of `a` with indices pairwise at least
/// `delta` apart, by penalty search on [`separated_graph`].
pub fn solve_sparse_separated<S: Scalar>(a: &[S], k: usize, delta: usize) -> Result<LagrangianSolution> {
    check_separated(a.len(), k, delta)?;
    let (g, s, t) = separated_graph(a, delta)?;
    let bound = penalty_bound(a.len(), max_abs(g.rewards()));
    penalty_search(k, BudgetMode::Exact, bound, |lambda| {
        weighted_probe(&g, s, t, lambda, |x| usize::from(x != t && x % 2 == 1))
    })
}

/// O(n·k) reference for [`solve_sparse_separated`].
pub fn sparse_separated_dp<S: Scalar>(a: &[S], k: usize, delta: usize) -> Result<S> {
    check_separated(a.len(), k, delta)?;
    let n = a.len();
    // prev[i]: best with j-1 picks among a[..=i]; cur likewise for j picks.
    let mut prev: Vec<Option<i128>> = vec![Some(0); n];
    for j in 1..=k {
        let mut cur: Vec<Option<i128>> = vec![None; n];
        for i in 0..n {
            let before = if i >= delta {
                prev[i - delta]
            } else if j == 1 {
                Some(0)
            } else {
                None
            };
            let take = before.map(|b| b + a[i].to_wide());
            let skip = if i > 0 { cur[i - 1] } else { None };
            cur[i] = take.max(skip);
        }
        prev = cur;
    }
    let best = prev[n - 1].expect("feasibility was checked");
    S::from_wide(best).ok_or_else(|| Error::Overflow("separated sum".into()))
}

/// A knapsack instance encoded as a hop-budgeted path problem.
///
/// `(best path value within budget - offset) / scale` is the knapsack
/// optimum.
#[derive(Debug, Clone)]
pub struct KnapsackGadget<S> {
    pub dag: NodeWeightedDag<S>,
    pub source: usize,
    pub sink: usize,
    pub budget: usize,
    pub offset: S,
    pub scale: S,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Serial gadget: for every item, a one-vertex branch worth `b` and a branch
/// of `w + 1` vertices worth `(b + v) / (w + 1)` each, between consecutive
/// reward-0 junctions. Taking the long branch costs `w` extra hops, so hop
/// budget `2n + T` encodes the capacity. Rewards are multiplied by the lcm
/// of all `w + 1` to stay integral.
pub fn knapsack_to_dag<S: Scalar>(inst: &KnapsackInstance<S>) -> Result<KnapsackGadget<S>> {
    let n = inst.items().len();
    if n > 5 || inst.capacity() > 8 || inst.items().iter().any(|it| it.weight > 4) {
        return Err(Error::ScaleLimit(format!(
            "gadgets are limited to n <= 5, T <= 8, w <= 4 (got n = {n}, T = {})",
            inst.capacity()
        )));
    }
    let scale = inst.items().iter().fold(1u64, |l, it| {
        let x = it.weight as u64 + 1;
        l / gcd(l, x) * x
    });
    let scale = S::from_u64(scale).ok_or_else(|| Error::Overflow("reward scale".into()))?;
    let w_max = inst.items().iter().map(|it| it.weight).max().unwrap_or(1);
    let v_max = inst.items().iter().map(|it| it.value).max().unwrap_or_else(S::one);
    let b = S::from_count(n * w_max) * v_max;

    let mut rewards = vec![Ext::Finite(S::zero())];
    let mut edges = Vec::new();
    let mut junction = 0usize;
    for it in inst.items() {
        let long = (b + it.value) * scale;
        let parts = S::from_count(it.weight + 1);
        if !(long % parts).is_zero() {
            return Err(Error::NonIntegral(format!("({b} + {}) * {scale} / {parts}", it.value)));
        }
        let short = rewards.len();
        rewards.push(Ext::Finite(b * scale));
        let first = rewards.len();
        for _ in 0..=it.weight {
            rewards.push(Ext::Finite(long / parts));
        }
        let next = rewards.len();
        rewards.push(Ext::Finite(S::zero()));
        edges.extend([(junction, short), (short, next), (junction, first), (next - 1, next)]);
        edges.extend((first..next - 1).map(|x| (x, x + 1)));
        junction = next;
    }
    let dag = NodeWeightedDag::new(rewards, edges, false)?;
    let offset = (S::from_count(n) * b - inst.offset()) * scale;
    Ok(KnapsackGadget { dag, source: 0, sink: junction, budget: 2 * n + inst.capacity(), offset, scale })
}

/// The transitive closure of [`knapsack_to_dag`]. Paths may now skip
/// junctions, so the budget counts rewarded vertices: `n + T` of them,
/// i.e. `n + T + 1` hops.
pub fn knapsack_to_transitive_dag<S: Scalar>(inst: &KnapsackInstance<S>) -> Result<KnapsackGadget<S>> {
    let serial = knapsack_to_dag(inst)?;
    Ok(KnapsackGadget {
        dag: serial.dag.transitive_closure(),
        budget: inst.items().len() + inst.capacity() + 1,
        ..serial
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{self, Rng64};
    use crate::knapsack::solve_knapsack_bellman;
    use crate::sequence::check_concave;

    type G = NodeWeightedDag<i64>;

    fn fin(v: &[i64]) -> Vec<Ext<i64>> {
        v.iter().map(|&x| Ext::Finite(x)).collect()
    }

    /// Path u1 -> u2 -> u3 (closed) plus an isolated vertex.
    fn gadget() -> G {
        NodeWeightedDag::new(fin(&[1000, 1000, 1000, 1001]), vec![(0, 1), (1, 2), (0, 2)], true).unwrap()
    }

    /// Best value per hop count by enumerating every s -> t path.
    fn enumerate_paths(g: &G, s: usize, t: usize) -> Vec<Ext<i64>> {
        let mut best = vec![Ext::Bottom; g.n()];
        let mut stack = vec![(s, 0usize, g.reward(s))];
        while let Some((v, hops, val)) = stack.pop() {
            if !val.is_finite() {
                continue;
            }
            if v == t {
                best[hops] = best[hops].max(val);
                continue;
            }
            for &w in g.successors(v) {
                if w <= t {
                    stack.push((w, hops + 1, val + g.reward(w)));
                }
            }
        }
        best
    }

    fn finite_block(p: &ValueProfile<i64>) -> Vec<Ext<i64>> {
        p.iter().copied().filter(|e| e.is_finite()).collect()
    }

    #[test]
    fn construction_checks() {
        assert!(matches!(G::new(fin(&[0, 0]), vec![(1, 0)], false), Err(Error::InvalidInput(_))));
        assert!(matches!(G::new(fin(&[0, 0]), vec![(0, 2)], false), Err(Error::InvalidInput(_))));
        let g = G::new(fin(&[0, 0, 0]), vec![(0, 1), (1, 2), (0, 1)], false).unwrap();
        assert_eq!(g.m(), 2);
        assert!(!g.is_transitively_closed());
        let c = g.transitive_closure();
        assert!(c.is_transitive() && c.is_transitively_closed());
        assert!(c.has_edge(0, 2));
    }

    #[test]
    fn gadget_profile_is_not_concave() {
        let (g, s, t) = gadget().with_universal_endpoints();
        let p = dp_hop_profile(&g, s, t, 5).unwrap();
        assert_eq!(
            p.exact().as_slice(),
            &[Ext::Bottom, Ext::Finite(0), Ext::Finite(1001), Ext::Finite(2000), Ext::Finite(3000), Ext::Bottom]
        );
        assert!(!check_concave(p.exact()).is_concave());
        assert!(matches!(solve_lagrangian(&g, s, t, 3), Err(Error::ConcavityViolation(_))));
    }

    #[test]
    fn single_edge() {
        let g = G::new(fin(&[0, 7]), vec![(0, 1)], false).unwrap();
        assert_eq!(dp_hop_profile(&g, 0, 1, 1).unwrap().exact().at(1), Ext::Finite(7));
        assert_eq!(solve_lagrangian(&g, 0, 1, 1).unwrap().value, 7);
        assert!(matches!(solve_lagrangian(&g, 0, 1, 0), Err(Error::Infeasible(_))));
    }

    #[test]
    fn dp_matches_path_enumeration() {
        let mut rng = Rng64::new(31);
        for round in 0..60 {
            let n = if round < 4 { 25 } else { rng.range_usize(2, 14) };
            let g = gen::random_transitive_dag(&mut rng, n, 1, 3);
            let g = g.with_rewards(gen::rewards(&mut rng, n, -20, 20)).unwrap();
            let want = enumerate_paths(&g, 0, n - 1);
            let got = dp_hop_profile(&g, 0, n - 1, n - 1).unwrap();
            assert_eq!(got.exact().as_slice(), &want[..n]);
        }
    }

    #[test]
    fn property_p_examples() {
        let sep = gen::separated_dense_dag(10, 3, fin(&[0; 10]));
        assert_eq!(check_property_p(&sep).unwrap(), PropertyPWitness::Holds);
        assert_eq!(
            check_property_p(&gadget()).unwrap(),
            PropertyPWitness::Counterexample { u1: 0, u2: 1, u3: 2, v: 3 }
        );
        assert!(check_property_p(&gen::complete_dag(5, fin(&[0; 5]))).unwrap().holds());
        let open = G::new(fin(&[0; 3]), vec![(0, 1), (1, 2)], false).unwrap();
        assert_eq!(check_property_p(&open), Err(Error::NotTransitive));
    }

    #[test]
    fn counterexample_rewards_break_concavity() {
        let mut rng = Rng64::new(13);
        let mut found = 0;
        while found < 20 {
            let n = 3 + rng.below(10) as usize;
            let g = gen::random_transitive_dag(&mut rng, n, 1, 3);
            let w = check_property_p(&g).unwrap();
            let Some(rewards) = counterexample_rewards(g.n(), w) else { continue };
            let (h, s, t) = g.with_rewards(rewards).unwrap().with_universal_endpoints();
            let p = dp_hop_profile(&h, s, t, h.n()).unwrap();
            assert!(!check_concave(&finite_block(p.exact())).is_concave());
            found += 1;
        }
    }

    #[test]
    fn counterexamples_are_genuine() {
        let mut rng = Rng64::new(37);
        let mut found = 0;
        for _ in 0..200 {
            let g = gen::random_transitive_dag(&mut rng, 12, 1, 4);
            if let PropertyPWitness::Counterexample { u1, u2, u3, v } = check_property_p(&g).unwrap() {
                found += 1;
                assert!(g.has_edge(u1, u2) && g.has_edge(u2, u3));
                assert!(!g.has_edge(u1, v) && !g.has_edge(v, u3));
                assert!(v != u1 && v != u3);
            }
        }
        assert!(found > 20);
    }

    #[test]
    fn property_p_graphs_have_concave_profiles() {
        let mut rng = Rng64::new(41);
        for _ in 0..100 {
            let n = rng.range_usize(3, 20);
            let gap = rng.range_i64(1, 10);
            let g = gen::semiorder_dag(&mut rng, n, 40, gap);
            let g = g.with_rewards(gen::rewards(&mut rng, n, -30, 30)).unwrap();
            assert!(check_property_p(&g).unwrap().holds());
            let (h, s, t) = g.with_universal_endpoints();
            let p = dp_hop_profile(&h, s, t, n + 1).unwrap();
            assert!(check_concave(&finite_block(p.exact())).is_concave());
        }
    }

    #[test]
    fn lagrangian_matches_dp_on_separated_graphs() {
        let mut rng = Rng64::new(43);
        for _ in 0..200 {
            let n = rng.range_usize(2, 60);
            let delta = rng.range_usize(1, 6);
            let g = gen::separated_dense_dag(n, delta, gen::rewards(&mut rng, n, -50, 50));
            let (h, s, t) = g.with_universal_endpoints();
            let at_most = dp_hop_profile(&h, s, t, n + 1).unwrap().at_most();
            let k = rng.range_usize(1, n + 1);
            let got = solve_lagrangian(&h, s, t, k).unwrap();
            assert_eq!(Ext::Finite(got.value as i64), at_most.at(k), "n={n} delta={delta} k={k}");
        }
    }

    #[test]
    fn complete_unit_rewards() {
        let g = gen::complete_dag(8, fin(&[1; 8]));
        for k in 1..8 {
            // k hops visit k + 1 vertices, endpoints included.
            assert_eq!(solve_lagrangian(&g, 0, 7, k).unwrap().value, k as i128 + 1);
        }
        let sol = solve_lagrangian(&g, 0, 7, 20).unwrap();
        assert_eq!((sol.value, sol.outcome.lambda, sol.probes), (8, 0, 1));
    }

    #[test]
    fn scaling_rewards_scales_the_penalty() {
        let mut rng = Rng64::new(47);
        for _ in 0..50 {
            let n = rng.range_usize(3, 25);
            let r: Vec<i64> = (0..n).map(|_| rng.range_i64(-9, 9)).collect();
            let g = gen::separated_dense_dag(n, 2, fin(&r));
            let scaled = g.with_rewards(r.iter().map(|&x| Ext::Finite(x * 7)).collect()).unwrap();
            let (g, s, t) = g.with_universal_endpoints();
            let (h, _, _) = scaled.with_universal_endpoints();
            for lambda in -10..10 {
                let a = lagrangian_probe(&g, s, t, lambda).unwrap();
                let b = lagrangian_probe(&h, s, t, 7 * lambda).unwrap();
                assert_eq!((a.k_min, a.k_max, 7 * a.best), (b.k_min, b.k_max, b.best));
            }
        }
    }

    #[test]
    fn separated_examples() {
        assert_eq!(solve_sparse_separated(&[5i64, 1, 4, 3], 2, 2).unwrap().value, 9);
        assert_eq!(sparse_separated_dp(&[5i64, 1, 4, 3], 2, 2).unwrap(), 9);
        assert_eq!(solve_sparse_separated(&[2i64, -1, 8, 3], 1, 3).unwrap().value, 8);
        assert_eq!(solve_sparse_separated(&[4i64; 9], 3, 4).unwrap().value, 12);
        assert!(matches!(solve_sparse_separated(&[1i64; 9], 4, 3), Err(Error::Infeasible(_))));
        assert!(matches!(sparse_separated_dp(&[1i64; 9], 4, 3), Err(Error::Infeasible(_))));
        assert_eq!(sparse_separated_dp(&[1i64; 10], 4, 3).unwrap(), 4);
    }

    #[test]
    fn separated_dp_matches_subsets() {
        let mut rng = Rng64::new(53);
        for _ in 0..300 {
            let n = rng.range_usize(1, 12);
            let a: Vec<i64> = (0..n).map(|_| rng.range_i64(-10, 10)).collect();
            let delta = rng.range_usize(1, 4);
            let k = rng.range_usize(1, 4);
            let mut best: Option<i64> = None;
            for mask in 0u32..1 << n {
                let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                if idx.len() == k && idx.windows(2).all(|w| w[1] - w[0] >= delta) {
                    let sum = idx.iter().map(|&i| a[i]).sum();
                    best = best.max(Some(sum));
                }
            }
            match best {
                Some(b) => {
                    assert_eq!(sparse_separated_dp(&a, k, delta).unwrap(), b);
                    assert_eq!(solve_sparse_separated(&a, k, delta).unwrap().value, b as i128);
                }
                None => assert!(sparse_separated_dp(&a, k, delta).is_err()),
            }
        }
    }

    #[test]
    fn separated_lagrangian_matches_dp() {
        let mut rng = Rng64::new(59);
        for _ in 0..100 {
            let n = rng.range_usize(1, 400);
            let a: Vec<i64> = (0..n).map(|_| rng.range_i64(-1000, 1000)).collect();
            let delta = rng.range_usize(1, 20);
            let k = rng.range_usize(1, 50);
            match sparse_separated_dp(&a, k, delta) {
                Ok(want) => assert_eq!(solve_sparse_separated(&a, k, delta).unwrap().value, want as i128),
                Err(e) => assert_eq!(solve_sparse_separated(&a, k, delta).unwrap_err(), e),
            }
        }
    }

    fn gadget_optimum(gadget: &KnapsackGadget<i64>) -> i64 {
        let p = dp_hop_profile(&gadget.dag, gadget.source, gadget.sink, gadget.budget).unwrap();
        let best = p.at_most().at(gadget.budget).finite().unwrap();
        assert_eq!((best - gadget.offset) % gadget.scale, 0);
        (best - gadget.offset) / gadget.scale
    }

    #[test]
    fn knapsack_gadget_examples() {
        let one = KnapsackInstance::new(vec![(1, 2i64)], 1).unwrap();
        assert_eq!(gadget_optimum(&knapsack_to_dag(&one).unwrap()), 2);
        let zero = KnapsackInstance::new(vec![(1, 2i64), (2, 5)], 0).unwrap();
        assert_eq!(gadget_optimum(&knapsack_to_dag(&zero).unwrap()), 0);
        let big = KnapsackInstance::new(vec![(5, 2i64)], 6).unwrap();
        assert!(matches!(knapsack_to_dag(&big), Err(Error::ScaleLimit(_))));
    }

    #[test]
    fn knapsack_gadgets_match_bellman() {
        let mut rng = Rng64::new(61);
        for _ in 0..150 {
            let n = rng.range_usize(0, 4);
            let items = (0..n).map(|_| (rng.range_usize(1, 3), rng.range_i64(1, 6))).collect();
            let inst = KnapsackInstance::new(items, rng.range_usize(0, 6)).unwrap();
            let want = solve_knapsack_bellman(&inst).unwrap().at(inst.capacity()).finite().unwrap();
            assert_eq!(gadget_optimum(&knapsack_to_dag(&inst).unwrap()), want);
            let closed = knapsack_to_transitive_dag(&inst).unwrap();
            assert!(closed.dag.is_transitively_closed());
            assert_eq!(gadget_optimum(&closed), want);
        }
    }
}
