//! Extended values, capacity-indexed profiles and the reference
//! (max,+)/(min,+) convolutions every faster routine is checked against.

use std::fmt;
use std::ops::{Add, Deref};

use crate::error::{Error, Result};
use crate::scalar::{within_guard, Scalar};

/// A finite value or `Bottom`, the "no feasible solution" sentinel.
///
/// `Bottom` sorts below every finite value and absorbs addition, so it is the
/// identity of `max` and the zero of `+` in the (max,+) semiring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ext<S> {
    Bottom,
    Finite(S),
}

impl<S: Scalar> Ext<S> {
    #[inline]
    pub fn is_finite(self) -> bool {
        matches!(self, Ext::Finite(_))
    }

    #[inline]
    pub fn finite(self) -> Option<S> {
        match self {
            Ext::Finite(v) => Some(v),
            Ext::Bottom => None,
        }
    }

    /// Adds a finite amount; `Bottom` stays `Bottom`.
    #[inline]
    pub fn plus(self, delta: S) -> Self {
        match self {
            Ext::Finite(v) => Ext::Finite(v + delta),
            Ext::Bottom => Ext::Bottom,
        }
    }

    /// Maps `Bottom` to `Top` and negates finite values.
    #[inline]
    pub fn negate(self) -> Cost<S> {
        match self {
            Ext::Finite(v) => Cost::Finite(-v),
            Ext::Bottom => Cost::Top,
        }
    }
}

impl<S: Scalar> Add for Ext<S> {
    type Output = Ext<S>;

    #[inline]
    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Ext::Finite(a), Ext::Finite(b)) => Ext::Finite(a + b),
            _ => Ext::Bottom,
        }
    }
}

impl<S: Scalar> From<S> for Ext<S> {
    fn from(v: S) -> Self {
        Ext::Finite(v)
    }
}

impl<S: Scalar> fmt::Display for Ext<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::Finite(v) => write!(f, "{v}"),
            Ext::Bottom => f.write_str("-inf"),
        }
    }
}

/// The (min,+) counterpart of [`Ext`]: `Top` sorts above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cost<S> {
    Finite(S),
    Top,
}

impl<S: Scalar> Cost<S> {
    #[inline]
    pub fn finite(self) -> Option<S> {
        match self {
            Cost::Finite(v) => Some(v),
            Cost::Top => None,
        }
    }

    #[inline]
    pub fn negate(self) -> Ext<S> {
        match self {
            Cost::Finite(v) => Ext::Finite(-v),
            Cost::Top => Ext::Bottom,
        }
    }
}

impl<S: Scalar> Add for Cost<S> {
    type Output = Cost<S>;

    #[inline]
    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Cost::Finite(a), Cost::Finite(b)) => Cost::Finite(a + b),
            _ => Cost::Top,
        }
    }
}

impl<S: Scalar> fmt::Display for Cost<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Finite(v) => write!(f, "{v}"),
            Cost::Top => f.write_str("inf"),
        }
    }
}

/// A sequence of extended values indexed by capacity (or hop count).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ValueProfile<S> {
    entries: Vec<Ext<S>>,
}

impl<S: Scalar> ValueProfile<S> {
    pub fn new(entries: Vec<Ext<S>>) -> Self {
        ValueProfile { entries }
    }

    pub fn from_finite<I: IntoIterator<Item = S>>(values: I) -> Self {
        values.into_iter().map(Ext::Finite).collect()
    }

    pub fn bottom(len: usize) -> Self {
        ValueProfile { entries: vec![Ext::Bottom; len] }
    }

    pub fn zeros(len: usize) -> Self {
        ValueProfile { entries: vec![Ext::Finite(S::zero()); len] }
    }

    pub fn as_slice(&self) -> &[Ext<S>] {
        &self.entries
    }

    pub fn into_vec(self) -> Vec<Ext<S>> {
        self.entries
    }

    pub fn truncate(&mut self, len: usize) {
        self.entries.truncate(len);
    }

    /// Entry `i`, or `Bottom` past the end.
    #[inline]
    pub fn at(&self, i: usize) -> Ext<S> {
        self.entries.get(i).copied().unwrap_or(Ext::Bottom)
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] <= w[1])
    }

    /// Running maximum, i.e. the "at most index i" view.
    pub fn prefix_max(&self) -> Self {
        let mut best = Ext::Bottom;
        self.entries
            .iter()
            .map(|&e| {
                best = best.max(e);
                best
            })
            .collect()
    }

    pub fn max_entry(&self) -> Ext<S> {
        self.entries.iter().copied().max().unwrap_or(Ext::Bottom)
    }
}

impl<S> Deref for ValueProfile<S> {
    type Target = [Ext<S>];

    fn deref(&self) -> &[Ext<S>] {
        &self.entries
    }
}

impl<S> From<Vec<Ext<S>>> for ValueProfile<S> {
    fn from(entries: Vec<Ext<S>>) -> Self {
        ValueProfile { entries }
    }
}

impl<S> FromIterator<Ext<S>> for ValueProfile<S> {
    fn from_iter<I: IntoIterator<Item = Ext<S>>>(iter: I) -> Self {
        ValueProfile { entries: iter.into_iter().collect() }
    }
}

impl<S: Scalar> fmt::Display for ValueProfile<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Outcome of a concavity check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConcavityWitness<S> {
    Concave,
    /// `entries[index] - entries[index-1] < entries[index+1] - entries[index]`.
    Violation {
        index: usize,
        triple: (S, S, S),
    },
    /// A `Bottom` hole inside the finite block; slopes are undefined there.
    NotApplicable {
        index: usize,
    },
    /// `entries[index] != entries[index-1]` although `index` is not a
    /// multiple of the step.
    NotStepwise {
        index: usize,
    },
}

impl<S> ConcavityWitness<S> {
    pub fn is_concave(&self) -> bool {
        matches!(self, ConcavityWitness::Concave)
    }
}

pub(crate) fn max_abs<S: Scalar>(values: &[Ext<S>]) -> i128 {
    values.iter().filter_map(|e| e.finite()).map(|v| v.to_wide().abs()).max().unwrap_or(0)
}

/// Rejects a pair whose finite magnitudes could overflow when summed.
pub(crate) fn validate_pair<S: Scalar>(a: &[Ext<S>], b: &[Ext<S>]) -> Result<()> {
    let bound = max_abs(a).checked_add(max_abs(b));
    if within_guard::<S>(bound) {
        Ok(())
    } else {
        Err(Error::Overflow(format!("max|a| + max|b| exceeds the guard limit 2^{}", S::guard_limit().trailing_zeros())))
    }
}

/// Quadratic (max,+)-convolution: `c[i] = max_j a[j] + b[i-j]`.
pub fn naive_maxplus_conv<S: Scalar>(a: &[Ext<S>], b: &[Ext<S>]) -> Result<ValueProfile<S>> {
    validate_pair(a, b)?;
    if a.is_empty() || b.is_empty() {
        return Ok(ValueProfile::default());
    }
    let mut out = vec![Ext::Bottom; a.len() + b.len() - 1];
    for (j, &x) in a.iter().enumerate() {
        if !x.is_finite() {
            continue;
        }
        for (l, &y) in b.iter().enumerate() {
            let cand = x + y;
            if cand > out[j + l] {
                out[j + l] = cand;
            }
        }
    }
    Ok(out.into())
}

/// Quadratic (min,+)-convolution with `Top` as the absorbing sentinel.
pub fn naive_minplus_conv<S: Scalar>(a: &[Cost<S>], b: &[Cost<S>]) -> Result<Vec<Cost<S>>> {
    let neg_a: Vec<_> = a.iter().map(|c| c.negate()).collect();
    let neg_b: Vec<_> = b.iter().map(|c| c.negate()).collect();
    validate_pair(&neg_a, &neg_b)?;
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = vec![Cost::Top; a.len() + b.len() - 1];
    for (j, &x) in a.iter().enumerate() {
        if x == Cost::Top {
            continue;
        }
        for (l, &y) in b.iter().enumerate() {
            let cand = x + y;
            if cand < out[j + l] {
                out[j + l] = cand;
            }
        }
    }
    Ok(out)
}

/// Certifies that consecutive differences are non-increasing.
///
/// Only the contiguous block of finite entries is examined; leading and
/// trailing `Bottom` runs are out of domain. A `Bottom` inside the block makes
/// the check inapplicable.
pub fn check_concave<S: Scalar>(a: &[Ext<S>]) -> ConcavityWitness<S> {
    let Some(lo) = a.iter().position(|e| e.is_finite()) else {
        return ConcavityWitness::Concave;
    };
    let hi = a.iter().rposition(|e| e.is_finite()).unwrap();
    if let Some(off) = a[lo..=hi].iter().position(|e| !e.is_finite()) {
        return ConcavityWitness::NotApplicable { index: lo + off };
    }
    for i in lo + 1..hi {
        let (p, c, n) = (a[i - 1].finite().unwrap(), a[i].finite().unwrap(), a[i + 1].finite().unwrap());
        let left = c.to_wide() - p.to_wide();
        let right = n.to_wide() - c.to_wide();
        if left < right {
            return ConcavityWitness::Violation { index: i, triple: (p, c, n) };
        }
    }
    ConcavityWitness::Concave
}

/// Checks that `a` is constant on every block `[qk, qk+k-1]` and that the
/// stride-`k` subsequence `a[0], a[k], a[2k], ...` is concave.
///
/// Violations on the subsequence are reported with indices into `a`.
pub fn check_kstep_concave<S: Scalar>(a: &[Ext<S>], k: usize) -> ConcavityWitness<S> {
    assert!(k >= 1, "step must be positive");
    for i in 1..a.len() {
        if i % k != 0 && a[i] != a[i - 1] {
            return ConcavityWitness::NotStepwise { index: i };
        }
    }
    let core: Vec<_> = a.iter().step_by(k).copied().collect();
    match check_concave(&core) {
        ConcavityWitness::Violation { index, triple } => ConcavityWitness::Violation { index: index * k, triple },
        ConcavityWitness::NotApplicable { index } => ConcavityWitness::NotApplicable { index: index * k },
        other => other,
    }
}
