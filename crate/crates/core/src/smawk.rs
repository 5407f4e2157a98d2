//! Row maxima of implicitly defined totally monotone matrices.
//!
//! A matrix is totally monotone (for maxima) when, for rows `i < i'` and
//! columns `j < j'`, `A[i][j] <= A[i][j']` implies `A[i'][j] <= A[i'][j']`.
//! Every Monge matrix in the orientation
//!
//! ```text
//! A[i][j] + A[i+1][j+1] >= A[i+1][j] + A[i][j+1]
//! ```
//!
//! is totally monotone, and its leftmost row maxima move to the right as the
//! row index grows. SMAWK finds all of them with O(rows + cols) evaluations.

use crate::scalar::Scalar;
use crate::sequence::Ext;

/// A read-only matrix whose entries are computed on demand.
pub trait MatrixOracle {
    type Value: Ord + Copy;

    fn nrows(&self) -> usize;
    fn ncols(&self) -> usize;
    fn eval(&self, i: usize, j: usize) -> Self::Value;
}

/// Adapts a closure `(row, col) -> value` to [`MatrixOracle`].
pub struct FnMatrix<F> {
    nrows: usize,
    ncols: usize,
    f: F,
}

impl<F> FnMatrix<F> {
    pub fn new(nrows: usize, ncols: usize, f: F) -> Self {
        FnMatrix { nrows, ncols, f }
    }
}

impl<T: Ord + Copy, F: Fn(usize, usize) -> T> MatrixOracle for FnMatrix<F> {
    type Value = T;

    fn nrows(&self) -> usize {
        self.nrows
    }

    fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    fn eval(&self, i: usize, j: usize) -> T {
        (self.f)(i, j)
    }
}

/// Leftmost maximum of every row, as `(column, value)` pairs.
///
/// The matrix must be totally monotone; otherwise the result is unspecified
/// (but the call still terminates). Panics if the matrix has rows but no
/// columns.
pub fn smawk_row_maxima<M: MatrixOracle>(m: &M) -> Vec<(usize, M::Value)> {
    let rows: Vec<usize> = (0..m.nrows()).collect();
    let cols: Vec<usize> = (0..m.ncols()).collect();
    let argmax = smawk_argmax(&rows, &cols, m.nrows(), &|i, j| m.eval(i, j));
    argmax.into_iter().enumerate().map(|(i, j)| (j, m.eval(i, j))).collect()
}

/// Runs SMAWK on the submatrix selected by `rows` and `cols` (both strictly
/// increasing). Returns a vector of length `row_bound` where entry `r` holds
/// the leftmost argmax column of row `r` for every `r` in `rows`.
pub(crate) fn smawk_argmax<T, F>(rows: &[usize], cols: &[usize], row_bound: usize, eval: &F) -> Vec<usize>
where
    T: Ord + Copy,
    F: Fn(usize, usize) -> T,
{
    let mut out = vec![0; row_bound];
    if !rows.is_empty() {
        assert!(!cols.is_empty(), "matrix has rows but no columns");
        recurse(rows, cols, eval, &mut out);
    }
    out
}

fn recurse<T, F>(rows: &[usize], cols: &[usize], eval: &F, out: &mut [usize])
where
    T: Ord + Copy,
    F: Fn(usize, usize) -> T,
{
    if rows.is_empty() {
        return;
    }

    // Reduce: keep at most |rows| columns. Each stack entry caches its value
    // at the row matching its stack position.
    let mut stack: Vec<(usize, T)> = Vec::with_capacity(rows.len().min(cols.len()));
    for &c in cols {
        while let Some(&(_, top_val)) = stack.last() {
            if top_val >= eval(rows[stack.len() - 1], c) {
                break;
            }
            stack.pop();
        }
        if stack.len() < rows.len() {
            let r = rows[stack.len()];
            stack.push((c, eval(r, c)));
        }
    }
    let kept: Vec<usize> = stack.iter().map(|&(c, _)| c).collect();

    let odd: Vec<usize> = rows.iter().skip(1).step_by(2).copied().collect();
    recurse(&odd, &kept, eval, out);

    // Interpolate the even rows between the argmaxima of their odd neighbours.
    let mut start = 0;
    for pos in (0..rows.len()).step_by(2) {
        let r = rows[pos];
        let stop = if pos + 1 < rows.len() { out[rows[pos + 1]] } else { *kept.last().unwrap() };
        let mut idx = start;
        let mut best_col = kept[idx];
        let mut best = eval(r, best_col);
        while kept[idx] != stop && idx + 1 < kept.len() {
            idx += 1;
            let v = eval(r, kept[idx]);
            if v > best {
                best = v;
                best_col = kept[idx];
            }
        }
        out[r] = best_col;
        start = idx;
    }
}

/// Leftmost row maxima by exhaustive scan; the reference for [`smawk_row_maxima`].
pub fn brute_force_row_maxima<M: MatrixOracle>(m: &M) -> Vec<(usize, M::Value)> {
    (0..m.nrows())
        .map(|i| {
            let mut best = (0, m.eval(i, 0));
            for j in 1..m.ncols() {
                let v = m.eval(i, j);
                if v > best.1 {
                    best = (j, v);
                }
            }
            best
        })
        .collect()
}

/// Checks `A[i][j] + A[i+1][j+1] >= A[i+1][j] + A[i][j+1]` on every adjacent
/// 2x2 block. Blocks touching a `Bottom` entry are skipped.
///
/// O(rows * cols); meant for tests and diagnostics.
pub fn is_monge<S: Scalar, M: MatrixOracle<Value = Ext<S>>>(m: &M) -> bool {
    for i in 0..m.nrows().saturating_sub(1) {
        for j in 0..m.ncols().saturating_sub(1) {
            let quad = (m.eval(i, j), m.eval(i + 1, j + 1), m.eval(i + 1, j), m.eval(i, j + 1));
            if let (Ext::Finite(a), Ext::Finite(d), Ext::Finite(b), Ext::Finite(c)) = quad {
                if a.to_wide() + d.to_wide() < b.to_wide() + c.to_wide() {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::Rng64;
    use std::cell::Cell;

    fn fin(v: i64) -> Ext<i64> {
        Ext::Finite(v)
    }

    fn random_monge(rng: &mut Rng64, n: usize, m: usize, spread: i64) -> Vec<Vec<i64>> {
        crate::gen::random_monge_matrix(rng, n, m, spread)
    }

    #[test]
    fn single_entry() {
        let m = FnMatrix::new(1, 1, |_, _| 5);
        assert_eq!(smawk_row_maxima(&m), vec![(0, 5)]);
    }

    #[test]
    fn negated_squared_distance_peaks_on_diagonal() {
        let m = FnMatrix::new(4, 4, |i: usize, j: usize| -((i as i64 - j as i64).pow(2)));
        let got = smawk_row_maxima(&m);
        assert_eq!(got, (0..4).map(|i| (i, 0)).collect::<Vec<_>>());
    }

    #[test]
    fn is_monge_examples() {
        let neg_sq = FnMatrix::new(5, 5, |i: usize, j: usize| fin(-((i as i64 - j as i64).pow(2))));
        assert!(is_monge(&neg_sq));
        // Squared distance itself violates the inequality by 2 on every block.
        let sq = FnMatrix::new(5, 5, |i: usize, j: usize| fin((i as i64 - j as i64).pow(2)));
        assert!(!is_monge(&sq));
        let prod = FnMatrix::new(6, 6, |i: usize, j: usize| fin((i * j) as i64));
        assert!(is_monge(&prod));
        let ident = FnMatrix::new(3, 3, |i: usize, j: usize| fin((i == j) as i64));
        assert!(!is_monge(&ident));
    }

    #[test]
    fn random_8x8_matches_brute_force() {
        let mut rng = Rng64::new(8);
        for _ in 0..200 {
            let a = random_monge(&mut rng, 8, 8, 5);
            let m = FnMatrix::new(8, 8, |i: usize, j: usize| a[i][j]);
            assert_eq!(smawk_row_maxima(&m), brute_force_row_maxima(&m));
        }
    }

    #[test]
    fn heavy_ties_pick_leftmost() {
        let mut rng = Rng64::new(3);
        for _ in 0..500 {
            let n = 1 + rng.below(12) as usize;
            let m = 1 + rng.below(12) as usize;
            // Spread 1 and no offsets gives lots of equal entries.
            let a = random_monge(&mut rng, n, m, 1);
            let mm = FnMatrix::new(n, m, |i: usize, j: usize| a[i][j] - a[i][0]);
            assert_eq!(smawk_row_maxima(&mm), brute_force_row_maxima(&mm));
        }
    }

    #[test]
    fn argmax_columns_are_monotone() {
        let mut rng = Rng64::new(11);
        for _ in 0..100 {
            let a = random_monge(&mut rng, 30, 17, 4);
            let m = FnMatrix::new(30, 17, |i: usize, j: usize| a[i][j]);
            let cols: Vec<usize> = smawk_row_maxima(&m).into_iter().map(|(c, _)| c).collect();
            assert!(cols.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn oracle_calls_are_linear() {
        let mut rng = Rng64::new(5);
        for &(n, m) in &[(1, 200), (200, 1), (64, 64), (200, 37), (37, 200), (1000, 1000)] {
            let a = random_monge(&mut rng, n, m, 6);
            let calls = Cell::new(0usize);
            let mm = FnMatrix::new(n, m, |i: usize, j: usize| {
                calls.set(calls.get() + 1);
                a[i][j]
            });
            smawk_row_maxima(&mm);
            assert!(calls.get() <= 8 * (n + m), "{} calls on {n}x{m}", calls.get());
        }
    }

    #[test]
    fn works_on_row_and_column_subsets() {
        let mut rng = Rng64::new(21);
        let a = random_monge(&mut rng, 20, 20, 5);
        let rows: Vec<usize> = (0..20).filter(|r| r % 3 != 1).collect();
        let cols: Vec<usize> = (0..20).filter(|c| c % 4 != 2).collect();
        let arg = smawk_argmax(&rows, &cols, 20, &|i, j| a[i][j]);
        for &r in &rows {
            let best = cols.iter().copied().max_by_key(|&c| (a[r][c], std::cmp::Reverse(c))).unwrap();
            assert_eq!(arg[r], best);
        }
    }
}
