//! Hop-bounded longest paths in DAGs with Monge edge weights.
//!
//! Vertices are `0..=n` in topological order. On the complete graph (edge
//! `(i, j)` for every `i < j`) with
//!
//! ```text
//! w(i,j) + w(i+1,j+1) >= w(i+1,j) + w(i,j+1)
//! ```
//!
//! the best value over exactly `k` hops is concave in `k`, so charging `λ`
//! per edge and searching over `λ` answers every budgeted query. The same
//! inequality means a later predecessor that ties or beats an earlier one at
//! some target keeps doing so at every later target, which brings one
//! penalized pass down to O(n log n). Edge-listed graphs use a plain O(m)
//! pass and carry no concavity guarantee.

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use crate::dag::HopProfile;
use crate::error::{Error, Result};
use crate::gen::{random_monge_matrix, Rng64};
use crate::lagrange::{penalty_search, BudgetMode, LagrangianOutcome, LagrangianSolution};
use crate::scalar::{within_guard, Scalar};
use crate::sequence::{Ext, ValueProfile};
use crate::smawk::{is_monge, FnMatrix};

type WeightFn<S> = Arc<dyn Fn(usize, usize) -> S + Send + Sync>;

#[derive(Clone)]
enum Weights<S> {
    Formula(WeightFn<S>),
    /// Row-major `(n+1) x (n+1)`; only the strict upper triangle is read.
    Dense(Vec<S>),
    /// Edges grouped by target, sources increasing.
    Listed {
        in_start: Vec<usize>,
        in_src: Vec<usize>,
        in_w: Vec<S>,
    },
}

/// Edge-weighted DAG on vertices `0..=n`, either complete or edge-listed.
///
/// Complete graphs are checked for the Monge inequality on construction.
#[derive(Clone)]
pub struct MongeDag<S> {
    n: usize,
    weights: Weights<S>,
    max_abs: i128,
}

impl<S: Scalar> fmt::Debug for MongeDag<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MongeDag")
            .field("n", &self.n)
            .field("complete", &self.is_complete())
            .field("edges", &self.edge_count())
            .field("max_abs", &self.max_abs)
            .finish()
    }
}

/// Lexicographic (penalized value, signed hop count) key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Key(i128, i64);

impl<S: Scalar> MongeDag<S> {
    /// Complete graph with `weight(i, j) = f(i, j)` for `i < j <= n`.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> S + Send + Sync + 'static) -> Result<Self> {
        MongeDag { n, weights: Weights::Formula(Arc::new(f)), max_abs: 0 }.validated()
    }

    /// Complete graph reading `rows[i][j]` for `i < j <= n`.
    pub fn from_matrix(n: usize, rows: &[Vec<S>]) -> Result<Self> {
        if rows.len() < n + 1 || rows.iter().take(n).any(|r| r.len() < n + 1) {
            return Err(Error::InvalidInput(format!("matrix must be at least {0}x{0}", n + 1)));
        }
        let mut dense = vec![S::zero(); (n + 1) * (n + 1)];
        for i in 0..=n {
            for j in i + 1..=n {
                dense[i * (n + 1) + j] = rows[i][j];
            }
        }
        MongeDag { n, weights: Weights::Dense(dense), max_abs: 0 }.validated()
    }

    /// Graph from `(u, v, weight)` triples with `u < v <= n`. With
    /// `complete` set, every pair must appear exactly once.
    pub fn from_edges(n: usize, mut edges: Vec<(usize, usize, S)>, complete: bool) -> Result<Self> {
        for &(u, v, _) in &edges {
            if u >= v || v > n {
                return Err(Error::InvalidInput(format!("edge ({u}, {v}) needs u < v <= {n}")));
            }
        }
        edges.sort_unstable_by_key(|&(u, v, _)| (v, u));
        if let Some(w) = edges.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(Error::InvalidInput(format!("duplicate edge ({}, {})", w[0].0, w[0].1)));
        }
        let weights = if complete {
            if edges.len() != n * (n + 1) / 2 {
                return Err(Error::InvalidInput(format!(
                    "complete graph on {} vertices needs {} edges, got {}",
                    n + 1,
                    n * (n + 1) / 2,
                    edges.len()
                )));
            }
            let mut dense = vec![S::zero(); (n + 1) * (n + 1)];
            for (u, v, w) in edges {
                dense[u * (n + 1) + v] = w;
            }
            Weights::Dense(dense)
        } else {
            let mut in_start = vec![0usize; n + 2];
            for &(_, v, _) in &edges {
                in_start[v + 1] += 1;
            }
            for i in 0..=n {
                in_start[i + 1] += in_start[i];
            }
            Weights::Listed {
                in_start,
                in_src: edges.iter().map(|e| e.0).collect(),
                in_w: edges.iter().map(|e| e.2).collect(),
            }
        };
        MongeDag { n, weights, max_abs: 0 }.validated()
    }

    fn validated(mut self) -> Result<Self> {
        let mut max_abs = 0i128;
        for v in 0..=self.n {
            self.for_each_in_edge(v, 0, |_, w| max_abs = max_abs.max(w.abs()));
        }
        self.max_abs = max_abs;
        if !within_guard::<S>(max_abs.checked_mul(self.n.max(1) as i128 * 2)) {
            return Err(Error::Overflow(format!("{} hops of weight up to {max_abs}", self.n)));
        }
        if let Some((i, j)) = self.monge_violation() {
            return Err(Error::InvalidInput(format!(
                "weights are not Monge: w({i},{j}) + w({},{}) < w({},{j}) + w({i},{})",
                i + 1,
                j + 1,
                i + 1,
                j + 1
            )));
        }
        Ok(self)
    }

    /// First adjacent quadruple of a complete graph breaking the inequality.
    fn monge_violation(&self) -> Option<(usize, usize)> {
        if !self.is_complete() {
            return None;
        }
        for i in 0..self.n {
            for j in i + 2..self.n {
                if self.w(i, j) + self.w(i + 1, j + 1) < self.w(i + 1, j) + self.w(i, j + 1) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Index of the last vertex.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_complete(&self) -> bool {
        !matches!(self.weights, Weights::Listed { .. })
    }

    pub fn edge_count(&self) -> usize {
        match &self.weights {
            Weights::Listed { in_src, .. } => in_src.len(),
            _ => self.n * (self.n + 1) / 2,
        }
    }

    /// Largest `|weight|` over all edges.
    pub fn max_abs_weight(&self) -> i128 {
        self.max_abs
    }

    /// `Bottom` when there is no edge `i -> j`.
    pub fn weight(&self, i: usize, j: usize) -> Ext<S> {
        if i >= j || j > self.n {
            return Ext::Bottom;
        }
        match &self.weights {
            Weights::Formula(f) => Ext::Finite(f(i, j)),
            Weights::Dense(d) => Ext::Finite(d[i * (self.n + 1) + j]),
            Weights::Listed { in_start, in_src, in_w } => {
                let lo = in_start[j];
                let srcs = &in_src[lo..in_start[j + 1]];
                srcs.binary_search(&i).map(|p| Ext::Finite(in_w[lo + p])).unwrap_or(Ext::Bottom)
            }
        }
    }

    /// Every edge as `(u, v, weight)`, sorted by target then source.
    pub fn edges(&self) -> Vec<(usize, usize, S)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for v in 0..=self.n {
            self.for_each_in_edge(v, 0, |u, w| out.push((u, v, S::from_wide(w).expect("stored weight"))));
        }
        out
    }

    /// Checks the Monge inequality over the `(n+1) x (n+1)` weight matrix,
    /// skipping blocks that touch a missing edge.
    pub fn is_monge(&self) -> bool {
        is_monge(&FnMatrix::new(self.n + 1, self.n + 1, |i, j| self.weight(i, j)))
    }

    /// Weight of an edge known to exist on a complete graph.
    #[inline]
    fn w(&self, i: usize, j: usize) -> i128 {
        match &self.weights {
            Weights::Formula(f) => f(i, j).to_wide(),
            Weights::Dense(d) => d[i * (self.n + 1) + j].to_wide(),
            Weights::Listed { .. } => unreachable!("edge-listed graph has no implicit weights"),
        }
    }

    fn for_each_in_edge(&self, v: usize, from: usize, mut f: impl FnMut(usize, i128)) {
        match &self.weights {
            Weights::Listed { in_start, in_src, in_w } => {
                for p in in_start[v]..in_start[v + 1] {
                    if in_src[p] >= from {
                        f(in_src[p], in_w[p].to_wide());
                    }
                }
            }
            _ => {
                for u in from..v {
                    f(u, self.w(u, v));
                }
            }
        }
    }

    fn check_endpoints(&self, s: usize, t: usize) -> Result<()> {
        if t > self.n {
            return Err(Error::InvalidInput(format!("vertex {t} out of range 0..={}", self.n)));
        }
        if s >= t {
            return Err(Error::InvalidInput(format!("source {s} must come before sink {t}")));
        }
        Ok(())
    }

    fn penalty_bound(&self) -> i128 {
        2 * (self.n as i128 + 1) * self.max_abs.max(1) + 1
    }

    /// Penalized optimum from `s` to every vertex in `s..=last`; entry
    /// `v - s`, `None` when unreachable.
    fn probe_all(&self, s: usize, last: usize, lambda: i128) -> Vec<Option<LagrangianOutcome>> {
        if self.is_complete() {
            let fewest = self.complete_pass(s, last, lambda, -1);
            let most = self.complete_pass(s, last, lambda, 1);
            fewest
                .iter()
                .zip(&most)
                .map(|(a, b)| {
                    debug_assert_eq!(a.0, b.0);
                    Some(LagrangianOutcome { lambda, best: a.0, k_min: (-a.1) as usize, k_max: b.1 as usize })
                })
                .collect()
        } else {
            self.listed_pass(s, last, lambda)
        }
    }

    /// Maximizes `Key(value - lambda * hops, tie * hops)` on a complete Monge
    /// graph. Candidates sit in a deque, each owning the targets from its
    /// start index on; a new vertex takes over a suffix found by binary search.
    fn complete_pass(&self, s: usize, last: usize, lambda: i128, tie: i64) -> Vec<Key> {
        let mut d = vec![Key(0, 0); last + 1 - s];
        let val = |d: &[Key], u: usize, v: usize| {
            let k = d[u - s];
            Key(k.0 + self.w(u, v) - lambda, k.1 + tie)
        };
        let mut deq: VecDeque<(usize, usize)> = VecDeque::new();
        deq.push_back((s, s + 1));
        for v in s + 1..=last {
            while deq.len() >= 2 && deq[1].1 <= v {
                deq.pop_front();
            }
            let key = val(&d, deq[0].0, v);
            d[v - s] = key;
            if v == last {
                break;
            }
            loop {
                let Some(&(u, from)) = deq.back() else {
                    deq.push_back((v, v + 1));
                    break;
                };
                let x0 = from.max(v + 1);
                if val(&d, v, x0) >= val(&d, u, x0) {
                    deq.pop_back();
                    continue;
                }
                if val(&d, v, last) < val(&d, u, last) {
                    break;
                }
                let (mut lo, mut hi) = (x0, last);
                while hi - lo > 1 {
                    let mid = lo + (hi - lo) / 2;
                    if val(&d, v, mid) >= val(&d, u, mid) {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                deq.push_back((v, hi));
                break;
            }
        }
        d
    }

    fn listed_pass(&self, s: usize, last: usize, lambda: i128) -> Vec<Option<LagrangianOutcome>> {
        let mut state: Vec<Option<(i128, usize, usize)>> = vec![None; last + 1 - s];
        state[0] = Some((0, 0, 0));
        for v in s + 1..=last {
            let mut acc: Option<(i128, usize, usize)> = None;
            self.for_each_in_edge(v, s, |u, w| {
                let Some((b, lo, hi)) = state[u - s] else { return };
                let b = b + w - lambda;
                acc = Some(match acc {
                    Some((a, alo, ahi)) if a > b => (a, alo, ahi),
                    Some((a, alo, ahi)) if a == b => (a, alo.min(lo + 1), ahi.max(hi + 1)),
                    _ => (b, lo + 1, hi + 1),
                });
            });
            state[v - s] = acc;
        }
        state
            .into_iter()
            .map(|o| o.map(|(best, k_min, k_max)| LagrangianOutcome { lambda, best, k_min, k_max }))
            .collect()
    }
}

fn to_ext<S: Scalar>(v: Option<i128>) -> Ext<S> {
    v.map_or(Ext::Bottom, |x| Ext::Finite(S::from_wide(x).expect("path value within the validated guard")))
}

/// One penalized pass: maximizes `value - lambda * hops` over `s -> t` paths.
pub fn monge_probe<S: Scalar>(g: &MongeDag<S>, s: usize, t: usize, lambda: i128) -> Option<LagrangianOutcome> {
    g.probe_all(s, t, lambda)[t - s]
}

/// Best `s -> t` value using at most `k` edges, by penalty search.
///
/// Exact on complete Monge graphs. Edge-listed graphs may give
/// [`Error::ConcavityViolation`] or an upper bound, as in
/// [`solve_lagrangian`](crate::dag::solve_lagrangian).
pub fn monge_best_path<S: Scalar>(g: &MongeDag<S>, s: usize, t: usize, k: usize) -> Result<LagrangianSolution> {
    g.check_endpoints(s, t)?;
    if k == 0 {
        return Err(Error::InvalidInput("hop budget must be at least 1".into()));
    }
    penalty_search(k, BudgetMode::AtMost, g.penalty_bound(), |lambda| monge_probe(g, s, t, lambda))
}

/// Exact-hop profile of `s -> t` for every hop count `0..=t-s`.
///
/// Bisects the penalty range once for all hop counts: a probe at `λ`
/// settles every count it finds optimal, and each half of the range is
/// only searched while counts strictly between its endpoints' optima are
/// still open.
pub fn monge_all_k<S: Scalar>(g: &MongeDag<S>, s: usize, t: usize) -> Result<HopProfile<S>> {
    g.check_endpoints(s, t)?;
    let len = t - s + 1;
    let bound = g.penalty_bound();
    let probe = |lambda| monge_probe(g, s, t, lambda);
    let Some(most) = probe(-bound) else {
        return Ok(HopProfile::new(ValueProfile::bottom(len)));
    };
    let fewest = probe(bound).expect("reachability does not depend on the penalty");
    let mut f = vec![None; len];
    settle(&mut f, &most);
    settle(&mut f, &fewest);
    split_hops(&probe, &mut f, most, fewest)?;
    Ok(HopProfile::new(f.into_iter().map(to_ext).collect()))
}

fn settle(f: &mut [Option<i128>], o: &LagrangianOutcome) {
    for (k, slot) in f.iter_mut().enumerate().take(o.k_max + 1).skip(o.k_min) {
        *slot = Some(o.value_at(k));
    }
}

fn split_hops<P>(probe: &P, f: &mut [Option<i128>], lo: LagrangianOutcome, hi: LagrangianOutcome) -> Result<()>
where
    P: Fn(i128) -> Option<LagrangianOutcome>,
{
    if hi.k_max + 1 >= lo.k_min {
        return Ok(());
    }
    if hi.lambda - lo.lambda <= 1 {
        return Err(Error::ConcavityViolation(format!(
            "hop counts {}..={} are optimal at no penalty",
            hi.k_max + 1,
            lo.k_min - 1
        )));
    }
    let mid = probe(lo.lambda + (hi.lambda - lo.lambda) / 2).expect("reachable");
    settle(f, &mid);
    split_hops(probe, f, lo, mid)?;
    split_hops(probe, f, mid, hi)
}

/// [`monge_all_k`] by one independent exact-budget search per hop count.
/// Kept as a baseline for benchmarks.
pub fn monge_all_k_independent<S: Scalar>(g: &MongeDag<S>, s: usize, t: usize) -> Result<HopProfile<S>> {
    g.check_endpoints(s, t)?;
    let bound = g.penalty_bound();
    let mut f = vec![Ext::Bottom];
    for k in 1..=t - s {
        match penalty_search(k, BudgetMode::Exact, bound, |lambda| monge_probe(g, s, t, lambda)) {
            Ok(sol) => f.push(to_ext(Some(sol.value))),
            Err(Error::Infeasible(_)) => f.push(Ext::Bottom),
            Err(e) => return Err(e),
        }
    }
    Ok(HopProfile::new(f.into()))
}

/// Best value from `s` to every vertex using at most `k` edges; entry `v`
/// (with `Bottom` before `s` and for targets not reachable in `k` hops).
///
/// Each probe serves every target still open; targets then follow the half
/// of the penalty range that still brackets their answer.
pub fn monge_all_targets<S: Scalar>(g: &MongeDag<S>, s: usize, k: usize) -> Result<Vec<Ext<S>>> {
    if s > g.n {
        return Err(Error::InvalidInput(format!("vertex {s} out of range 0..={}", g.n)));
    }
    if k == 0 {
        return Err(Error::InvalidInput("hop budget must be at least 1".into()));
    }
    let last = g.n;
    let probe = |lambda| g.probe_all(s, last, lambda);
    let mut ans: Vec<Option<i128>> = vec![None; last + 1];
    ans[s] = Some(0);

    let free = probe(0);
    let pending: Vec<usize> = (s + 1..=last)
        .filter(|&v| match free[v - s] {
            Some(o) if o.k_min <= k => {
                ans[v] = Some(o.best);
                false
            }
            Some(_) => true,
            None => false,
        })
        .collect();
    if !pending.is_empty() {
        let bound = g.penalty_bound();
        let tight = probe(bound);
        let mut open = Vec::new();
        for v in pending {
            let o = tight[v - s].expect("reachable");
            if o.k_max < k {
                open.push(v);
            } else if o.k_min <= k {
                ans[v] = Some(o.value_at(k));
            }
        }
        split_targets(&probe, s, k, 0, bound, open, &mut ans)?;
    }
    Ok(ans.into_iter().map(to_ext).collect())
}

/// Invariant: every target in `open` has `k_min > k` at `lo` and
/// `k_max < k` at `hi`.
fn split_targets<P>(
    probe: &P,
    s: usize,
    k: usize,
    lo: i128,
    hi: i128,
    open: Vec<usize>,
    ans: &mut [Option<i128>],
) -> Result<()>
where
    P: Fn(i128) -> Vec<Option<LagrangianOutcome>>,
{
    if open.is_empty() {
        return Ok(());
    }
    if hi - lo <= 1 {
        return Err(Error::ConcavityViolation(format!("no penalty makes {k} hops optimal for target {}", open[0])));
    }
    let mid = lo + (hi - lo) / 2;
    let at = probe(mid);
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for v in open {
        let o = at[v - s].expect("reachable");
        if o.k_min > k {
            right.push(v);
        } else if o.k_max < k {
            left.push(v);
        } else {
            ans[v] = Some(o.value_at(k));
        }
    }
    split_targets(probe, s, k, lo, mid, left, ans)?;
    split_targets(probe, s, k, mid, hi, right, ans)
}

/// Exact-hop values `table[h][v - s]` for `h in 0..=max_hops`, `v in s..=last`.
fn dp_table<S: Scalar>(g: &MongeDag<S>, s: usize, last: usize, max_hops: usize) -> Vec<Vec<Option<i128>>> {
    let width = last + 1 - s;
    let mut cur = vec![None; width];
    cur[0] = Some(0);
    let mut table = vec![cur.clone()];
    for _ in 0..max_hops {
        let mut next = vec![None; width];
        for v in s + 1..=last {
            let mut best: Option<i128> = None;
            g.for_each_in_edge(v, s, |u, w| {
                if let Some(b) = cur[u - s] {
                    best = best.max(Some(b + w));
                }
            });
            next[v - s] = best;
        }
        table.push(next.clone());
        cur = next;
    }
    table
}

/// Exact-hop profile of `s -> t` by dynamic programming over (hops,
/// vertex), O((t - s) · m).
pub fn monge_dp_profile<S: Scalar>(g: &MongeDag<S>, s: usize, t: usize) -> Result<HopProfile<S>> {
    g.check_endpoints(s, t)?;
    let table = dp_table(g, s, t, t - s);
    Ok(HopProfile::new(table.iter().map(|row| to_ext(row[t - s])).collect()))
}

/// At-most-`k`-hop value from `s` to every vertex by dynamic programming,
/// O(k · m). Same layout as [`monge_all_targets`].
pub fn monge_dp_all_targets<S: Scalar>(g: &MongeDag<S>, s: usize, k: usize) -> Result<Vec<Ext<S>>> {
    if s > g.n {
        return Err(Error::InvalidInput(format!("vertex {s} out of range 0..={}", g.n)));
    }
    let table = dp_table(g, s, g.n, k.min(g.n - s));
    let mut out = vec![Ext::Bottom; g.n + 1];
    for v in s..=g.n {
        out[v] = to_ext(table.iter().filter_map(|row| row[v - s]).max());
    }
    Ok(out)
}

/// First hop of the penalized-optimal `s -> t` path that prefers the larger
/// successor at every tie. `None` when `t` is unreachable.
pub fn canonical_first_hop<S: Scalar>(g: &MongeDag<S>, s: usize, t: usize, lambda: i128) -> Option<usize> {
    // h[u - s]: best penalized value from u to t.
    let mut h: Vec<Option<i128>> = vec![None; t + 1 - s];
    h[t - s] = Some(0);
    let mut first = None;
    for u in (s..t).rev() {
        let mut best: Option<(i128, usize)> = None;
        for v in u + 1..=t {
            if let (Ext::Finite(w), Some(rest)) = (g.weight(u, v), h[v - s]) {
                // `>=` with increasing v keeps the largest successor on ties.
                let cand = w.to_wide() - lambda + rest;
                if best.is_none_or(|(b, _)| cand >= b) {
                    best = Some((cand, v));
                }
            }
        }
        h[u - s] = best.map(|b| b.0);
        if u == s {
            first = best.map(|b| b.1);
        }
    }
    first
}

/// Complete graph with `weight(i, j) = -(i - j)^2`.
pub fn gen_squared_monge<S: Scalar>(n: usize) -> MongeDag<S> {
    let max_abs = (n as i128) * (n as i128);
    assert!(within_guard::<S>(Some(max_abs * 2 * n.max(1) as i128)), "n = {n} overflows the scalar guard");
    MongeDag {
        n,
        weights: Weights::Formula(Arc::new(|i, j| {
            let d = S::from_count(j - i);
            -(d * d)
        })),
        max_abs,
    }
}

/// `-(i - j)^2` plus a seeded Monge perturbation of magnitude about
/// `spread · n^2`, stored densely.
pub fn gen_perturbed_squared_monge<S: Scalar>(n: usize, seed: u64, spread: i64) -> Result<MongeDag<S>> {
    let mut rng = Rng64::new(seed);
    let p = random_monge_matrix(&mut rng, n + 1, n + 1, spread.max(1));
    let d = |i: usize, j: usize| (i as i64 - j as i64).pow(2);
    dense_from(n, |i, j| p[i][j] - d(i, j))
}

/// Random complete Monge graph: 2-D prefix sums of sparse nonnegative
/// increments up to `spread`, row and column offsets, and a random multiple
/// of `-(i - j)^2`.
pub fn gen_random_monge<S: Scalar>(rng: &mut Rng64, n: usize, spread: i64) -> Result<MongeDag<S>> {
    let spread = spread.max(1);
    let p = random_monge_matrix(rng, n + 1, n + 1, spread);
    let q = rng.range_i64(0, spread);
    dense_from(n, |i, j| p[i][j] - q * (i as i64 - j as i64).pow(2))
}

fn dense_from<S: Scalar>(n: usize, f: impl Fn(usize, usize) -> i64) -> Result<MongeDag<S>> {
    let mut dense = vec![S::zero(); (n + 1) * (n + 1)];
    for i in 0..=n {
        for j in i + 1..=n {
            dense[i * (n + 1) + j] =
                S::from_i64(f(i, j)).ok_or_else(|| Error::Overflow(format!("weight ({i}, {j}) does not fit")))?;
        }
    }
    MongeDag { n, weights: Weights::Dense(dense), max_abs: 0 }.validated()
}
