//! Linear-time (max,+)-convolution when one operand is concave or k-step
//! concave.
//!
//! For concave `b`, the matrix `A[i][j] = a[j] + b[i-j]` is Monge, so its row
//! maxima (the convolution) come out of SMAWK. Entries where `i - j` falls
//! outside `b` are modelled as continuing `b` with an arbitrarily steep slope
//! on both sides; comparing `(distance outside, clamped value)` pairs
//! lexicographically realises that limit exactly and keeps the matrix totally
//! monotone.

use std::cmp::Reverse;
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::sequence::{check_concave, check_kstep_concave, validate_pair, ConcavityWitness, Ext, ValueProfile};
use crate::smawk::smawk_argmax;

fn describe<S: Scalar>(w: &ConcavityWitness<S>) -> String {
    match w {
        ConcavityWitness::Concave => "concave".to_string(),
        ConcavityWitness::Violation { index, triple: (p, c, n) } => {
            format!("differences increase at index {index} ({p}, {c}, {n})")
        }
        ConcavityWitness::NotApplicable { index } => format!("bottom hole at index {index}"),
        ConcavityWitness::NotStepwise { index } => format!("value changes inside a block at index {index}"),
    }
}

/// `a ⊕ b` for concave `b`, in O(|a| + |b|).
///
/// `a` may contain `Bottom` anywhere; `b` may only have `Bottom` runs at its
/// ends.
pub fn conv_concave<S: Scalar>(a: &[Ext<S>], b: &[Ext<S>]) -> Result<ValueProfile<S>> {
    conv_concave_prefix(a, b, usize::MAX)
}

/// The first `min(len, |a| + |b| - 1)` entries of `a ⊕ b` for concave `b`.
///
/// Runs in O(|a| + |b| + len) regardless of how much is cut off, so repeated
/// folds into a bounded-length profile stay linear.
pub fn conv_concave_prefix<S: Scalar>(a: &[Ext<S>], b: &[Ext<S>], len: usize) -> Result<ValueProfile<S>> {
    let w = check_concave(b);
    if !w.is_concave() {
        return Err(Error::NotConcave(describe(&w)));
    }
    validate_pair(a, b)?;
    Ok(concave_unchecked(a, b, len).into())
}

pub(crate) fn concave_unchecked<S: Scalar>(a: &[Ext<S>], b: &[Ext<S>], len: usize) -> Vec<Ext<S>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let out_len = (a.len() + b.len() - 1).min(len);
    let mut out = vec![Ext::Bottom; out_len];
    let Some(blo) = b.iter().position(|e| e.is_finite()) else {
        return out;
    };
    let bhi = b.iter().rposition(|e| e.is_finite()).unwrap();
    let core: Vec<S> = b[blo..=bhi].iter().map(|e| e.finite().unwrap()).collect();
    if out_len <= blo {
        return out;
    }
    let nrows = out_len - blo;
    let cols: Vec<usize> = (0..a.len().min(nrows)).filter(|&j| a[j].is_finite()).collect();
    if cols.is_empty() {
        return out;
    }
    let av: Vec<S> = a.iter().map(|e| e.finite().unwrap_or_else(S::zero)).collect();
    let lb = core.len();
    let key = |i: usize, j: usize| -> (Reverse<usize>, S) {
        if i < j {
            (Reverse(j - i), av[j] + core[0])
        } else if i - j >= lb {
            (Reverse(i - j - lb + 1), av[j] + core[lb - 1])
        } else {
            (Reverse(0), av[j] + core[i - j])
        }
    };
    let rows: Vec<usize> = (0..nrows).collect();
    let arg = smawk_argmax(&rows, &cols, nrows, &key);
    for (i, &j) in arg.iter().enumerate() {
        let (Reverse(dist), v) = key(i, j);
        if dist == 0 {
            out[i + blo] = Ext::Finite(v);
        }
    }
    out
}

/// `a ⊕ b` for `k`-step concave `b`, in O(|a| + |b|).
pub fn conv_kstep_concave<S: Scalar>(a: &[Ext<S>], b: &[Ext<S>], k: usize) -> Result<ValueProfile<S>> {
    conv_kstep_concave_prefix(a, b, k, usize::MAX)
}

/// The first `min(len, |a| + |b| - 1)` entries of `a ⊕ b` for `k`-step
/// concave `b`.
pub fn conv_kstep_concave_prefix<S: Scalar>(
    a: &[Ext<S>],
    b: &[Ext<S>],
    k: usize,
    len: usize,
) -> Result<ValueProfile<S>> {
    assert!(k >= 1, "step must be positive");
    let w = check_kstep_concave(b, k);
    if !w.is_concave() {
        return Err(Error::NotKStepConcave { k, detail: describe(&w) });
    }
    validate_pair(a, b)?;
    if a.is_empty() || b.is_empty() {
        return Ok(ValueProfile::default());
    }
    if k == 1 {
        return Ok(concave_unchecked(a, b, len).into());
    }
    let out_len = (a.len() + b.len() - 1).min(len);

    // Full blocks go through the strided route; a partial last block of
    // length r < k contributes its constant plus a width-r window maximum.
    let full = b.len() / k;
    let tail = b.len() % k;
    let mut out = vec![Ext::Bottom; out_len];
    if full > 0 {
        let core: Vec<Ext<S>> = b[..full * k].iter().step_by(k).copied().collect();
        let mut f = strided_unchecked(a, &core, k, out_len);
        f.resize(out_len, Ext::Bottom);
        out = window_max(&f, k);
    }
    if tail > 0 {
        let c = b[full * k];
        if c.is_finite() {
            let shift = full * k;
            if out_len > shift {
                let mut padded = a[..a.len().min(out_len - shift)].to_vec();
                padded.resize(out_len - shift, Ext::Bottom);
                for (i, x) in window_max(&padded, tail).into_iter().enumerate() {
                    let v = x + c;
                    if v > out[i + shift] {
                        out[i + shift] = v;
                    }
                }
            }
        }
    }
    Ok(out.into())
}

/// `f[i] = max_q core[q] + a[i - q*k]` for concave `core`: the convolution of
/// `a` with `core` spread out at stride `k` (`Bottom` between multiples).
///
/// Returns the first `min(len, |a| + (|core| - 1) * k)` entries.
pub fn conv_strided_concave<S: Scalar>(a: &[Ext<S>], core: &[Ext<S>], k: usize, len: usize) -> Result<ValueProfile<S>> {
    assert!(k >= 1, "step must be positive");
    let w = check_concave(core);
    if !w.is_concave() {
        return Err(Error::NotConcave(describe(&w)));
    }
    validate_pair(a, core)?;
    Ok(strided_unchecked(a, core, k, len).into())
}

pub(crate) fn strided_unchecked<S: Scalar>(a: &[Ext<S>], core: &[Ext<S>], k: usize, len: usize) -> Vec<Ext<S>> {
    if a.is_empty() || core.is_empty() {
        return Vec::new();
    }
    let out_len = (a.len() + (core.len() - 1) * k).min(len);
    let mut f = vec![Ext::Bottom; out_len];
    for p in 0..k.min(out_len) {
        let x: Vec<Ext<S>> = a.iter().skip(p).step_by(k).copied().collect();
        let rows = (out_len - p).div_ceil(k);
        let part = concave_unchecked(&x, core, rows);
        for (q, v) in part.into_iter().enumerate() {
            f[q * k + p] = v;
        }
    }
    f
}

/// `out[j] = max(f[j-k+1..=j])`, with the window clipped at index 0.
pub fn sliding_window_max<S: Scalar>(f: &[Ext<S>], k: usize) -> ValueProfile<S> {
    assert!(k >= 1, "window must be positive");
    window_max(f, k).into()
}

fn window_max<T: Ord + Copy>(f: &[T], k: usize) -> Vec<T> {
    let mut deq: VecDeque<usize> = VecDeque::with_capacity(k.min(f.len()) + 1);
    let mut out = Vec::with_capacity(f.len());
    for (j, &x) in f.iter().enumerate() {
        while deq.back().is_some_and(|&b| f[b] <= x) {
            deq.pop_back();
        }
        deq.push_back(j);
        if deq[0] + k <= j {
            deq.pop_front();
        }
        out.push(f[deq[0]]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::naive_maxplus_conv;
    use proptest::prelude::*;

    type E = Ext<i64>;
    const B: E = Ext::Bottom;

    fn f(v: &[i64]) -> Vec<E> {
        v.iter().map(|&x| Ext::Finite(x)).collect()
    }

    fn naive(a: &[E], b: &[E]) -> Vec<E> {
        naive_maxplus_conv(a, b).unwrap().into_vec()
    }

    /// Concave sequence from random differences sorted descending, with
    /// optional `Bottom` runs at either end.
    fn concave_strategy(max_len: usize) -> impl Strategy<Value = Vec<E>> {
        (prop::collection::vec(-60i64..60, 0..max_len), -100i64..100, 0usize..3, 0usize..3).prop_map(
            |(mut diffs, start, pre, post)| {
                diffs.sort_unstable_by(|x, y| y.cmp(x));
                let mut out = vec![B; pre];
                let mut acc = start;
                out.push(Ext::Finite(acc));
                for d in diffs {
                    acc += d;
                    out.push(Ext::Finite(acc));
                }
                out.extend(std::iter::repeat_n(B, post));
                out
            },
        )
    }

    fn any_profile(max_len: usize) -> impl Strategy<Value = Vec<E>> {
        prop::collection::vec(prop_oneof![1 => Just(B), 5 => (-500i64..500).prop_map(Ext::Finite)], 1..max_len)
    }

    fn kstep_strategy() -> impl Strategy<Value = (Vec<E>, usize)> {
        (concave_strategy(40), 1usize..7, 0usize..7).prop_map(|(core, k, cut)| {
            let mut b: Vec<E> = core.iter().flat_map(|&v| std::iter::repeat_n(v, k)).collect();
            // Drop part of the last block so |b| need not be a multiple of k.
            let cut = cut.min(k - 1);
            b.truncate(b.len() - cut);
            (b, k)
        })
    }

    #[test]
    fn concave_examples() {
        assert_eq!(conv_concave(&f(&[0, 3, 1]), &f(&[0, 5, 8])).unwrap().as_slice(), f(&[0, 5, 8, 11, 9]));
        let a = vec![B, Ext::Finite(4), Ext::Finite(-2), B, Ext::Finite(9)];
        assert_eq!(conv_concave(&a, &f(&[0])).unwrap().as_slice(), a);
    }

    #[test]
    fn rejects_non_concave() {
        assert!(matches!(conv_concave(&f(&[0]), &f(&[1, 2, 4])), Err(Error::NotConcave(_))));
        assert!(matches!(conv_kstep_concave(&f(&[0]), &f(&[0, 1, 4]), 2), Err(Error::NotKStepConcave { k: 2, .. })));
    }

    #[test]
    fn kstep_examples() {
        let b = f(&[0, 0, 4, 4, 6, 6]);
        let a = f(&[0, 1, 5]);
        assert_eq!(conv_kstep_concave(&a, &b, 2).unwrap().as_slice(), naive(&a, &b));
        let b = f(&[0, 5, 8, 9]);
        assert_eq!(conv_kstep_concave(&a, &b, 1).unwrap(), conv_concave(&a, &b).unwrap());
        let b = f(&[0, 0, 7, 7, 12, 12, 14]);
        assert_eq!(conv_kstep_concave(&f(&[0]), &b, 2).unwrap().as_slice(), b);
    }

    #[test]
    fn window_examples() {
        let x = f(&[3, 1, 4, 1, 5]);
        assert_eq!(sliding_window_max(&x, 2).as_slice(), f(&[3, 3, 4, 4, 5]));
        assert_eq!(sliding_window_max(&x, 1).as_slice(), x);
        assert_eq!(sliding_window_max(&x, 5).as_slice(), f(&[3, 3, 4, 4, 5]));
        let y = f(&[2, 9, 1, 1, 1, 0]);
        assert_eq!(sliding_window_max(&y, 2).as_slice(), f(&[2, 9, 9, 1, 1, 1]));
    }

    #[test]
    fn bottom_only_operands() {
        assert_eq!(conv_concave(&[B, B], &f(&[1, 2])).unwrap().as_slice(), &[B, B, B]);
        assert_eq!(conv_concave(&f(&[1, 2]), &[B, B]).unwrap().as_slice(), &[B, B, B]);
    }

    #[test]
    fn interleave_identity() {
        let a = f(&[4, -1, 7, 0, 2, 2, -5, 3]);
        let core = f(&[0, 6, 9, 10]);
        let k = 3;
        let fvec = conv_strided_concave(&a, &core, k, usize::MAX).unwrap();
        for p in 0..k {
            let x: Vec<E> = a.iter().skip(p).step_by(k).copied().collect();
            let xy = naive(&x, &core);
            for (q, v) in xy.into_iter().enumerate() {
                if q * k + p < fvec.len() {
                    assert_eq!(fvec[q * k + p], v, "q={q} p={p}");
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn concave_matches_naive(a in any_profile(256), b in concave_strategy(256)) {
            prop_assert_eq!(conv_concave(&a, &b).unwrap().into_vec(), naive(&a, &b));
        }

        #[test]
        fn kstep_matches_naive(a in any_profile(120), (b, k) in kstep_strategy()) {
            prop_assert_eq!(conv_kstep_concave(&a, &b, k).unwrap().into_vec(), naive(&a, &b));
        }

        #[test]
        fn prefix_matches_truncated_naive(a in any_profile(60), (b, k) in kstep_strategy(), len in 0usize..200) {
            let mut want = naive(&a, &b);
            want.truncate(len);
            prop_assert_eq!(conv_kstep_concave_prefix(&a, &b, k, len).unwrap().into_vec(), want.clone());
            if k == 1 {
                prop_assert_eq!(conv_concave_prefix(&a, &b, len).unwrap().into_vec(), want);
            }
        }

        #[test]
        fn window_matches_scan(x in any_profile(80), k in 1usize..10) {
            let got = sliding_window_max(&x, k);
            for j in 0..x.len() {
                let lo = (j + 1).saturating_sub(k);
                prop_assert_eq!(got[j], *x[lo..=j].iter().max().unwrap());
            }
        }
    }
}
