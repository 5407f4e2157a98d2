//! Integer penalty search for budgeted path problems.
//!
//! If `f(k)`, the best value using exactly `k` units of a budget, is concave
//! with integer slopes, then for every `k` some integer `λ` makes `k` optimal
//! for `max_j f(j) - λ·j`, and `f(k)` is that optimum plus `λ·k`. The hop
//! count of penalized optima only shrinks as `λ` grows, so binary search
//! finds the right `λ`, provided each probe reports the smallest and largest
//! budget use among its optima.

use crate::error::{Error, Result};

/// Result of one unconstrained probe at penalty `lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LagrangianOutcome {
    pub lambda: i128,
    /// `max over solutions of value - lambda * used`.
    pub best: i128,
    /// Smallest budget use among optimal solutions.
    pub k_min: usize,
    /// Largest budget use among optimal solutions.
    pub k_max: usize,
}

impl LagrangianOutcome {
    /// Penalized value plus the penalty on `k` units, i.e. `f(k)` when `k`
    /// is optimal at this penalty.
    pub fn value_at(&self, k: usize) -> i128 {
        self.best + self.lambda * k as i128
    }
}

/// How the budget constrains solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetMode {
    /// Use at most `k` units; only nonnegative penalties are searched.
    AtMost,
    /// Use exactly `k` units; penalties of both signs are searched.
    Exact,
}

/// Value found by the search, with the closing probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LagrangianSolution {
    pub value: i128,
    pub outcome: LagrangianOutcome,
    /// Number of unconstrained problems solved.
    pub probes: usize,
}

/// Binary search over integer penalties in `[0, bound]` (at most) or
/// `[-bound, bound]` (exact). `bound` must exceed every slope `|f(j+1) -
/// f(j)|`. `probe` returns `None` when no solution exists at all.
pub(crate) fn penalty_search<P>(k: usize, mode: BudgetMode, bound: i128, mut probe: P) -> Result<LagrangianSolution>
where
    P: FnMut(i128) -> Option<LagrangianOutcome>,
{
    let mut probes = 0usize;
    let mut run = |lambda: i128| {
        probes += 1;
        probe(lambda).ok_or_else(|| Error::Infeasible("no path between the endpoints".into()))
    };

    let (mut lo, hi) = match mode {
        BudgetMode::AtMost => (0, bound),
        BudgetMode::Exact => (-bound, bound),
    };
    let first = run(lo)?;
    if first.k_min <= k {
        let value = match mode {
            // Penalty 0: the unconstrained optimum already fits.
            BudgetMode::AtMost => first.best,
            BudgetMode::Exact if first.k_max >= k => first.value_at(k),
            BudgetMode::Exact => return Err(Error::Infeasible(format!("no solution uses as many as {k} units"))),
        };
        return Ok(LagrangianSolution { value, outcome: first, probes });
    }
    let last = run(hi)?;
    if last.k_min > k {
        return Err(Error::Infeasible(format!("every solution uses more than {k} units")));
    }
    // Invariant: k_min(lo) > k >= k_min(hi).
    let mut hi = hi;
    let mut at_hi = last;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let o = run(mid)?;
        if o.k_min <= k {
            hi = mid;
            at_hi = o;
        } else {
            lo = mid;
        }
    }
    if at_hi.k_max < k {
        return Err(Error::ConcavityViolation(format!(
            "no penalty makes {k} optimal: at {} the optima use {}..={} units, at {} more than {k}",
            at_hi.lambda, at_hi.k_min, at_hi.k_max, lo
        )));
    }
    Ok(LagrangianSolution { value: at_hi.value_at(k), outcome: at_hi, probes })
}
