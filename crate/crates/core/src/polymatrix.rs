//! Dense matrices over `Z[t, t^-1]`.

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::laurent::LaurentPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyMatrixError {
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("expected {expected} entries, got {got}")]
    Dimension { expected: usize, got: usize },
}

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPolynomial>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LaurentMatrix {
            rows,
            cols,
            entries: alloc::vec![LaurentPolynomial::zero(); rows * cols],
        }
    }

    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: Vec<LaurentPolynomial>,
    ) -> Result<Self, PolyMatrixError> {
        if entries.len() != rows * cols {
            return Err(PolyMatrixError::Dimension {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(LaurentMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPolynomial>>) -> Result<Self, PolyMatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let entries: Vec<_> = rows.into_iter().flatten().collect();
        Self::from_entries(r, c, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPolynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPolynomial) {
        self.entries[i * self.cols + j] = v;
    }

    /// Submatrix on the given (sorted) row and column index sets.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> LaurentMatrix {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        LaurentMatrix {
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    /// Matrix with row `i` and column `j` removed.
    pub fn without(&self, i: Option<usize>, j: Option<usize>) -> LaurentMatrix {
        let rows: Vec<usize> = (0..self.rows).filter(|&r| Some(r) != i).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&c| Some(c) != j).collect();
        self.submatrix(&rows, &cols)
    }

    /// Fraction-free (Bareiss) determinant. Pivots are chosen by minimal
    /// exponent span, then by coefficient bit size.
    pub fn determinant(&self) -> Result<LaurentPolynomial, PolyMatrixError> {
        if self.rows != self.cols {
            return Err(PolyMatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(LaurentPolynomial::one());
        }
        let mut a: Vec<Vec<LaurentPolynomial>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut negate = false;
        let mut prev = LaurentPolynomial::one();
        for k in 0..n {
            let Some((pi, pj)) = choose_pivot(&a, k) else {
                return Ok(LaurentPolynomial::zero());
            };
            if pi != k {
                a.swap(pi, k);
                negate = !negate;
            }
            if pj != k {
                for row in a.iter_mut() {
                    row.swap(pj, k);
                }
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                a[i][k] = LaurentPolynomial::zero();
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }
}

fn pivot_weight(p: &LaurentPolynomial) -> (usize, u64) {
    let bits = p.coefficients().iter().map(|c| c.bits()).max().unwrap_or(0);
    (p.span(), bits)
}

fn choose_pivot(a: &[Vec<LaurentPolynomial>], k: usize) -> Option<(usize, usize)> {
    let n = a.len();
    let mut best: Option<((usize, u64), usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(k) {
        for (j, entry) in row.iter().enumerate().take(n).skip(k) {
            if entry.is_zero() {
                continue;
            }
            let w = pivot_weight(entry);
            if best.as_ref().is_none_or(|(bw, _, _)| w < *bw) {
                best = Some((w, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LaurentMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            f.write_str("  ")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("\n")?;
        }
        f.write_str("]")
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[pos] += 1;
        for i in pos + 1..k {
            idx[i] = idx[i - 1] + 1;
        }
    }
}
