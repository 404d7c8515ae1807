//! The pairwise-difference matrix `A(n)`, its block-diagonal replication
//! and the column-permuted constraint matrix `A_π`.
//!
//! Every row of these matrices has exactly one `+1` and one `−1`, so rows
//! are stored as index pairs and dense forms are only built on request.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permutation::Permutation;

/// `s(n) = 1 + 2 + ... + (n−1) = n(n−1)/2`.
pub fn triangular_sum(n: usize) -> Result<usize> {
    if n < 1 {
        return Err(Error::InvalidArgument("triangular sum needs n >= 1".into()));
    }
    Ok(n * (n - 1) / 2)
}

/// One row `x_plus − x_minus`, 1-based, `plus < minus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DifferenceRow {
    pub plus: usize,
    pub minus: usize,
}

/// The `s(n) × n` matrix of all differences `x_p − x_m`, `p < m`.
///
/// Rows follow the inductive layout: the `[1 | −U]` block pairing column 1
/// with every later column, then `A(n−1)` shifted one column right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceMatrix {
    n: usize,
    rows: Vec<DifferenceRow>,
}

impl DifferenceMatrix {
    pub fn new(n: usize) -> Result<Self> {
        let s = triangular_sum(n)?;
        let mut rows = Vec::with_capacity(s);
        // Unrolling the induction gives lexicographic pair order.
        for plus in 1..n {
            for minus in plus + 1..=n {
                rows.push(DifferenceRow { plus, minus });
            }
        }
        debug_assert_eq!(rows.len(), s);
        Ok(DifferenceMatrix { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[DifferenceRow] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn apply(&self, x: &[i64]) -> Result<Vec<i64>> {
        check_len(self.n, x.len())?;
        Ok(self
            .rows
            .iter()
            .map(|r| x[r.plus - 1] - x[r.minus - 1])
            .collect())
    }

    /// `A(n)ᵀ y` for any integer vector `y` of length `s(n)`.
    pub fn apply_transpose(&self, y: &[i64]) -> Result<Vec<i64>> {
        check_len(self.rows.len(), y.len())?;
        let mut out = vec![0; self.n];
        for (r, &v) in self.rows.iter().zip(y) {
            out[r.plus - 1] += v;
            out[r.minus - 1] -= v;
        }
        Ok(out)
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.rows.len(), self.n);
        for (i, r) in self.rows.iter().enumerate() {
            d.set(i, r.plus - 1, 1);
            d.set(i, r.minus - 1, -1);
        }
        d
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        self.to_dense().rank()
    }
}

/// The `n·s(n) × n²` matrix `A_π`: `n` copies of `A(n)` on the block
/// diagonal with columns relocated by `π`.
///
/// Row `r` in block `b` with local pair `(p, m)` has `+1` at column
/// `π((b−1)n + p)` and `−1` at column `π((b−1)n + m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintMatrix {
    base: DifferenceMatrix,
    perm: Permutation,
}

impl ConstraintMatrix {
    pub fn new(n: usize, perm: Permutation) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "constraint matrix needs n >= 2, got {n}"
            )));
        }
        if perm.size() != n * n {
            return Err(Error::InvalidPermutation(format!(
                "permutation acts on {} points, expected {}",
                perm.size(),
                n * n
            )));
        }
        Ok(ConstraintMatrix {
            base: DifferenceMatrix::new(n)?,
            perm,
        })
    }

    /// The unpermuted block-diagonal matrix `A`.
    pub fn block_diagonal(n: usize) -> Result<Self> {
        Self::new(n, Permutation::identity(n))
    }

    pub fn n(&self) -> usize {
        self.base.n
    }

    pub fn base(&self) -> &DifferenceMatrix {
        &self.base
    }

    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    pub fn row_count(&self) -> usize {
        self.base.n * self.base.rows.len()
    }

    pub fn column_count(&self) -> usize {
        self.base.n * self.base.n
    }

    /// 0-based (plus, minus) columns of every row, in row order.
    pub(crate) fn row_columns(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.base.n;
        (0..n).flat_map(move |b| {
            self.base.rows.iter().map(move |r| {
                (
                    self.perm.image0(b * n + r.plus - 1),
                    self.perm.image0(b * n + r.minus - 1),
                )
            })
        })
    }

    /// The 1-based (plus, minus) column pair of every row.
    pub fn row_pairs(&self) -> Vec<DifferenceRow> {
        self.row_columns()
            .map(|(p, m)| DifferenceRow {
                plus: p + 1,
                minus: m + 1,
            })
            .collect()
    }

    /// The cells tied together by block `b` (0-based), in block order.
    pub(crate) fn group_cells(&self, b: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.base.n;
        (0..n).map(move |k| self.perm.image0(b * n + k))
    }

    pub fn apply(&self, x: &[i64]) -> Result<Vec<i64>> {
        check_len(self.column_count(), x.len())?;
        Ok(self.row_columns().map(|(p, m)| x[p] - x[m]).collect())
    }

    pub fn apply_transpose(&self, lam: &SignVector) -> Result<Vec<i64>> {
        self.transpose_product(lam.entries())
    }

    /// `A_πᵀ y` for any integer vector `y` of length `n·s(n)`.
    pub fn transpose_product(&self, y: &[i64]) -> Result<Vec<i64>> {
        check_len(self.row_count(), y.len())?;
        let mut out = vec![0; self.column_count()];
        for ((p, m), &v) in self.row_columns().zip(y) {
            out[p] += v;
            out[m] -= v;
        }
        Ok(out)
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.row_count(), self.column_count());
        for (i, (p, m)) in self.row_columns().enumerate() {
            d.set(i, p, 1);
            d.set(i, m, -1);
        }
        d
    }
}

/// A vector with every entry equal to `−1` or `+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct SignVector(Vec<i64>);

impl SignVector {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if let Some(i) = entries.iter().position(|&v| v != 1 && v != -1) {
            return Err(Error::InvalidArgument(format!(
                "sign vector entry {} is {}, expected -1 or +1",
                i + 1,
                entries[i]
            )));
        }
        Ok(SignVector(entries))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Vec<i64>> for SignVector {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        SignVector::new(v)
    }
}

impl From<SignVector> for Vec<i64> {
    fn from(s: SignVector) -> Self {
        s.0
    }
}

/// Row-major integer matrix, used for dumps and cross-checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            check_len(cols, r.len())?;
            data.extend_from_slice(r);
        }
        Ok(DenseMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul_vec(&self, x: &[i64]) -> Result<Vec<i64>> {
        check_len(self.cols, x.len())?;
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn transpose_mul_vec(&self, y: &[i64]) -> Result<Vec<i64>> {
        check_len(self.rows, y.len())?;
        let mut out = vec![0; self.cols];
        for (r, &v) in y.iter().enumerate() {
            for (o, a) in out.iter_mut().zip(self.row(r)) {
                *o += a * v;
            }
        }
        Ok(out)
    }

    /// Rank by fraction-free (Bareiss) elimination. Every division is exact,
    /// so intermediate values stay integral.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<i128>> = (0..self.rows)
            .map(|r| self.row(r).iter().map(|&v| v as i128).collect())
            .collect();
        let mut rank = 0;
        let mut prev_pivot: i128 = 1;
        for col in 0..self.cols {
            let Some(pivot_row) = (rank..self.rows).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(rank, pivot_row);
            let pivot = m[rank][col];
            let (top, below) = m.split_at_mut(rank + 1);
            let pivot_row = &top[rank];
            for row in below {
                let factor = row[col];
                for (v, &p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    let next = pivot * *v - factor * p;
                    debug_assert_eq!(next % prev_pivot, 0);
                    *v = next / prev_pivot;
                }
            }
            prev_pivot = pivot;
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(i64::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::Dimension { expected, actual })
    }
}
