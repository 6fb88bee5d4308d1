//! Dense integer matrices with Smith and Hermite normal forms.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}

#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: alloc::vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: Vec<BigInt>,
    ) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::Dimension {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(IntegerMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Build from small-integer rows. `cols` is needed for zero-row matrices.
    pub fn from_i64_rows(rows: &[Vec<i64>], cols: usize) -> Result<Self, MatrixError> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(MatrixError::Dimension {
                    expected: cols,
                    got: r.len(),
                });
            }
            entries.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        Ok(IntegerMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::Dimension {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>, MatrixError> {
        if v.len() != self.rows {
            return Err(MatrixError::Dimension {
                expected: self.rows,
                got: v.len(),
            });
        }
        let mut out = alloc::vec![BigInt::zero(); self.cols];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += c * &self[(i, j)];
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> Result<BigInt, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
                return Ok(BigInt::zero());
            };
            if p != k {
                a.swap_rows(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        Ok(if n == 0 { BigInt::one() } else { sign * prev })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -core::mem::take(&mut self[(r, j)]);
            self[(r, j)] = v;
        }
    }

    #[cfg(test)]
    fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let v = -core::mem::take(&mut self[(i, c)]);
            self[(i, c)] = v;
        }
    }

    /// row[target] += factor * row[source]
    fn add_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(source, j)] * factor;
            self[(target, j)] += v;
        }
    }

    /// col[target] += factor * col[source]
    fn add_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, source)] * factor;
            self[(i, target)] += v;
        }
    }
}

impl core::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Elementary column operation, recorded in the order applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnOp {
    Swap(usize, usize),
    Negate(usize),
    /// col[target] += factor * col[source]
    AddMultiple {
        target: usize,
        source: usize,
        factor: BigInt,
    },
}

/// `u * m * v == s` with `u`, `v` unimodular and `s` diagonal.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub s: IntegerMatrix,
    pub v: IntegerMatrix,
    /// Nonzero diagonal entries of `s`, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
    /// The column operations whose product is `v`.
    pub column_ops: Vec<ColumnOp>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

fn smallest_nonzero(a: &IntegerMatrix, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in from..a.rows {
        for j in from..a.cols {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some(b) if a[b].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Quotient rounding to the nearest integer, so the remainder is as small as possible.
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    let twice: BigInt = &r * 2u32;
    if twice.abs() > b.abs() || (twice.abs() == b.abs() && twice.signum() == b.signum()) {
        q + 1
    } else {
        q
    }
}

/// Smith normal form. The pivot at each stage is the entry of smallest
/// absolute value, ties broken by lowest (row, column).
pub fn snf(m: &IntegerMatrix) -> SmithDecomposition {
    let rows = m.rows;
    let cols = m.cols;
    let mut a = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);
    let mut ops = Vec::new();

    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        if pj != t {
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);
            ops.push(ColumnOp::Swap(t, pj));
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -nearest_quotient(&a[(i, t)], &a[(t, t)]);
                a.add_row(i, t, &q);
                u.add_row(i, t, &q);
                if !a[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -nearest_quotient(&a[(t, j)], &a[(t, t)]);
                a.add_col(j, t, &q);
                v.add_col(j, t, &q);
                ops.push(ColumnOp::AddMultiple {
                    target: j,
                    source: t,
                    factor: q,
                });
                if !a[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // A smaller remainder appeared; move it into the pivot slot.
                let (pi, pj) = smallest_nonzero_in_cross(&a, t);
                a.swap_rows(t, pi);
                u.swap_rows(t, pi);
                if pj != t {
                    a.swap_cols(t, pj);
                    v.swap_cols(t, pj);
                    ops.push(ColumnOp::Swap(t, pj));
                }
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let p = a[(t, t)].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    let invariant_factors = (0..rows.min(cols))
        .map(|i| a[(i, i)].clone())
        .filter(|x| !x.is_zero())
        .collect();
    SmithDecomposition {
        u,
        s: a,
        v,
        invariant_factors,
        column_ops: ops,
    }
}

fn smallest_nonzero_in_cross(a: &IntegerMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    for i in t..a.rows {
        let x = &a[(i, t)];
        if !x.is_zero() && (a[best].is_zero() || x.abs() < a[best].abs()) {
            best = (i, t);
        }
    }
    for j in t..a.cols {
        let x = &a[(t, j)];
        if !x.is_zero() && (a[best].is_zero() || x.abs() < a[best].abs()) {
            best = (t, j);
        }
    }
    best
}

/// Row Hermite normal form: returns `(h, u)` with `u * m == h`.
///
/// `h` is upper echelon, pivots positive, entries above each pivot reduced
/// into `[0, pivot)`, zero rows last.
pub fn hnf(m: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix) {
    let rows = m.rows;
    let cols = m.cols;
    let mut h = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Euclid down the column until a single nonzero entry remains at r.
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if !h[(i, c)].is_zero() && best.is_none_or(|b| h[(i, c)].abs() < h[(b, c)].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(r, b);
            u.swap_rows(r, b);
            let mut done = true;
            for i in r + 1..rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = -h[(i, c)].div_floor(&h[(r, c)]);
                h.add_row(i, r, &q);
                u.add_row(i, r, &q);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = -h[(i, c)].div_floor(&h[(r, c)]);
            h.add_row(i, r, &q);
            u.add_row(i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// Decide whether `v` lies in the integer row span of `m`. On success returns
/// coefficients `w` with `w * m == v`.
pub fn lattice_member(v: &[BigInt], m: &IntegerMatrix) -> Result<Option<Vec<BigInt>>, MatrixError> {
    if v.len() != m.cols {
        return Err(MatrixError::Dimension {
            expected: m.cols,
            got: v.len(),
        });
    }
    let (h, u) = hnf(m);
    let mut rest: Vec<BigInt> = v.to_vec();
    let mut coeffs = alloc::vec![BigInt::zero(); m.rows];
    for (r, coeff) in coeffs.iter_mut().enumerate() {
        let Some(c) = (0..m.cols).find(|&c| !h[(r, c)].is_zero()) else {
            break;
        };
        let (q, rem) = rest[c].div_rem(&h[(r, c)]);
        if !rem.is_zero() {
            return Ok(None);
        }
        for (j, x) in rest.iter_mut().enumerate() {
            *x -= &q * &h[(r, j)];
        }
        *coeff = q;
    }
    if rest.iter().any(|x| !x.is_zero()) {
        return Ok(None);
    }
    Ok(Some(u.transpose().mul_vec(&coeffs)))
}

impl IntegerMatrix {
    fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }
}
