//! Exact rational dense linear algebra.
//!
//! Everything here is over arbitrary-precision rationals: Gram products,
//! rank by fraction-free (Bareiss) elimination, nullspace bases by
//! Gauss-Jordan reduction, and an exact positive-semidefiniteness decision.
//! Matrices are tiny (certificates are at most a few hundred entries), so
//! simplicity and exactness win over sparsity or floating point throughout.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Scalar type: an arbitrary-precision rational, always in lowest terms
/// with a positive denominator.
pub type Rat = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Shorthand for the rational `num/den`. Panics if `den == 0`; intended for
/// literals in tests and constructions, not for parsing untrusted text.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Errors for matrix construction, parsing, and shape-checked operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix must have at least one row and one column")]
    Empty,
    #[error("row {row} has {got} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("entry count {got} does not match {rows}x{cols}")]
    WrongLen { got: usize, rows: usize, cols: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric (entries ({i},{j}) and ({j},{i}) differ)")]
    NotSymmetric { i: usize, j: usize },
    #[error("dimension mismatch: left is {lr}x{lc}, right is {rr}x{rc}")]
    DimMismatch {
        lr: usize,
        lc: usize,
        rr: usize,
        rc: usize,
    },
    #[error("cannot parse matrix entry {text:?}: {reason}")]
    Entry { text: String, reason: String },
}

/// Parse one matrix entry: an integer like `-3` or a rational like `5/2`.
pub fn parse_entry(text: &str) -> Result<Rat, MatrixError> {
    let err = |reason: &str| MatrixError::Entry {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let mut parts = text.splitn(2, '/');
    let num_text = parts.next().ok_or_else(|| err("empty"))?;
    let num = BigInt::from_str(num_text.trim()).map_err(|e| err(&e.to_string()))?;
    match parts.next() {
        None => Ok(Rat::from_integer(num)),
        Some(den_text) => {
            let den = BigInt::from_str(den_text.trim()).map_err(|e| err(&e.to_string()))?;
            if den.is_zero() {
                return Err(err("zero denominator"));
            }
            Ok(Rat::new(num, den))
        }
    }
}

/// Dense row-major matrix of exact rationals. Immutable after construction;
/// at least one row and one column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RationalMatrix {
    /// Build from row-major entries; `data.len()` must equal `rows * cols`.
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::Empty);
        }
        if data.len() != rows * cols {
            return Err(MatrixError::WrongLen {
                got: data.len(),
                rows,
                cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Build from a list of equal-length rows.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, MatrixError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 {
            return Err(MatrixError::Empty);
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != ncols {
                return Err(MatrixError::RaggedRow {
                    row: i,
                    got: r.len(),
                    expected: ncols,
                });
            }
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer-literal constructor, mainly for tests and K_n style built-ins.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, MatrixError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().copied().map(rat_int).collect())
                .collect(),
        )
    }

    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::Empty);
        }
        Ok(Self {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        })
    }

    /// Identity matrix of size `n`.
    pub fn identity(n: usize) -> Result<Self, MatrixError> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.data[i * n + i] = Rat::one();
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    /// Row `i` as a slice of length `cols`.
    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Column `j` collected into a vector of length `rows`.
    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Exact matrix product.
    pub fn matmul(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::DimMismatch {
                lr: self.rows,
                lc: self.cols,
                rr: rhs.rows,
                rc: rhs.cols,
            });
        }
        let mut data = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Rat::zero();
                for t in 0..self.cols {
                    acc += self.get(i, t) * rhs.get(t, j);
                }
                data.push(acc);
            }
        }
        Self::new(self.rows, rhs.cols, data)
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetry_defect().is_none()
    }

    /// First index pair witnessing asymmetry, if any.
    pub fn symmetry_defect(&self) -> Option<(usize, usize)> {
        if self.rows != self.cols {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Gram matrix of the columns: entry (i,j) is the inner product of
    /// columns i and j, so the result is `cols x cols` and symmetric PSD.
    pub fn gram(&self) -> Self {
        let n = self.cols;
        let mut data = vec![Rat::zero(); n * n];
        for i in 0..n {
            for j in i..n {
                let mut acc = Rat::zero();
                for t in 0..self.rows {
                    acc += self.get(t, i) * self.get(t, j);
                }
                data[i * n + j] = acc.clone();
                data[j * n + i] = acc;
            }
        }
        Self {
            rows: n,
            cols: n,
            data,
        }
    }

    /// Exact rank over the rationals, by fraction-free Bareiss elimination
    /// with full pivoting on an integer-scaled copy.
    pub fn rank(&self) -> usize {
        // Clear denominators row by row so all arithmetic stays in BigInt.
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let scale = self
                    .row(i)
                    .iter()
                    .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
                self.row(i)
                    .iter()
                    .map(|e| e.numer() * (&scale / e.denom()))
                    .collect()
            })
            .collect();
        let (r, c) = (self.rows, self.cols);
        let mut prev = BigInt::one();
        let mut rank = 0;
        for step in 0..r.min(c) {
            let pivot = (step..r)
                .flat_map(|i| (step..c).map(move |j| (i, j)))
                .find(|&(i, j)| !m[i][j].is_zero());
            let Some((pi, pj)) = pivot else { break };
            m.swap(step, pi);
            if pj != step {
                for row in m.iter_mut() {
                    row.swap(step, pj);
                }
            }
            for i in step + 1..r {
                for j in step + 1..c {
                    let num = &m[i][j] * &m[step][step] - &m[i][step] * &m[step][j];
                    debug_assert!((&num % &prev).is_zero(), "Bareiss divisibility");
                    m[i][j] = num / &prev;
                }
                m[i][step] = BigInt::zero();
            }
            prev = m[step][step].clone();
            rank += 1;
        }
        rank
    }

    /// Canonical nullspace basis via reduced row echelon form: one vector per
    /// free column, linearly independent, each annihilated by the matrix.
    /// The count equals `cols - rank`.
    pub fn nullspace_basis(&self) -> Vec<Vec<Rat>> {
        let (r, c) = (self.rows, self.cols);
        let mut m: Vec<Vec<Rat>> = (0..r).map(|i| self.row(i).to_vec()).collect();
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut lead = 0;
        for col in 0..c {
            let Some(sel) = (lead..r).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(lead, sel);
            let inv = m[lead][col].clone();
            for e in m[lead].iter_mut() {
                *e /= &inv;
            }
            let lead_row = m[lead].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != lead && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (entry, l) in row.iter_mut().zip(&lead_row) {
                        let sub = &f * l;
                        *entry -= sub;
                    }
                }
            }
            pivot_cols.push(col);
            lead += 1;
            if lead == r {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in (0..c).filter(|j| !pivot_cols.contains(j)) {
            let mut v = vec![Rat::zero(); c];
            v[free] = Rat::one();
            for (prow, &pcol) in pivot_cols.iter().enumerate() {
                v[pcol] = -m[prow][free].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Exact positive-semidefiniteness decision by recursive symmetric
    /// elimination: a negative pivot refutes; a zero pivot must head an
    /// all-zero active row (else refuted) and is skipped; a positive pivot
    /// reduces to the Schur complement.
    pub fn is_psd(&self) -> Result<bool, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if let Some((i, j)) = self.symmetry_defect() {
            return Err(MatrixError::NotSymmetric { i, j });
        }
        let n = self.rows;
        let mut m: Vec<Vec<Rat>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        for i in 0..n {
            if m[i][i].is_negative() {
                return Ok(false);
            }
            if m[i][i].is_zero() {
                // x along i plus a tilted component would go negative.
                if (i + 1..n).any(|j| !m[i][j].is_zero()) {
                    return Ok(false);
                }
                continue;
            }
            for r in i + 1..n {
                if m[r][i].is_zero() {
                    continue;
                }
                let (top, rest) = m.split_at_mut(r);
                let (pivot_row, row_r) = (&top[i], &mut rest[0]);
                let f = &row_r[i] / &pivot_row[i];
                for (entry, p) in row_r[i + 1..].iter_mut().zip(&pivot_row[i + 1..]) {
                    let sub = &f * p;
                    *entry -= sub;
                }
            }
        }
        Ok(true)
    }

    /// Render in the shared matrix text format: one row per line,
    /// whitespace-separated integers or `a/b` rationals.
    pub fn to_text(&self) -> String {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(Rat::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Parse the matrix text format produced by [`Self::to_text`].
    pub fn parse_text(text: &str) -> Result<Self, MatrixError> {
        let rows: Vec<Vec<Rat>> = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.split_whitespace().map(parse_entry).collect())
            .collect::<Result<_, _>>()?;
        Self::from_rows(rows)
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        self.get(i, j)
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Inner product of two equal-length rational vectors.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
