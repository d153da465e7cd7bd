use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Dense integer matrix with arbitrary-precision entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert!(rows >= 1 && cols >= 1, "dimensions must be positive");
        assert_eq!(data.len(), rows * cols, "entry count mismatch");
        IntMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Clone + Into<BigInt>>(rows: &[Vec<T>]) -> Self {
        assert!(!rows.is_empty());
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let data = rows
            .iter()
            .flat_map(|r| r.iter().cloned().map(Into::into))
            .collect();
        Self::new(rows.len(), cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a * rhs.at(k, j);
                    *out.at_mut(i, j) += prod;
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.at(r, c).clone();
            *self.at_mut(r, c) = v;
        }
    }

    /// `row[dst] -= q * row[src]`.
    fn sub_scaled_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let delta = q * self.at(src, c);
            *self.at_mut(dst, c) -= delta;
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::NonSquareMatrix {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let idx = |r: usize, c: usize| r * n + c;
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[idx(k, k)].is_zero() {
                match (k + 1..n).find(|&r| !a[idx(r, k)].is_zero()) {
                    Some(r) => {
                        for c in 0..n {
                            a.swap(idx(k, c), idx(r, c));
                        }
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[idx(k, k)] * &a[idx(i, j)] - &a[idx(i, k)] * &a[idx(k, j)];
                    // Bareiss: division by the previous pivot is exact.
                    a[idx(i, j)] = num / &prev;
                }
                a[idx(i, k)] = BigInt::zero();
            }
            prev = a[idx(k, k)].clone();
        }
        let d = a[idx(n - 1, n - 1)].clone();
        Ok(if sign < 0 { -d } else { d })
    }

    /// Row-style Hermite normal form.
    ///
    /// Returns `(H, U)` with `H = U * self`, `U` unimodular, pivots positive,
    /// entries above each pivot reduced into `[0, pivot)`, pivot columns
    /// strictly increasing and zero rows at the bottom.
    pub fn hnf(&self) -> (IntMatrix, IntMatrix) {
        let mut h = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut pivot_row = 0usize;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            // Euclidean elimination below the pivot row.
            loop {
                let mut best: Option<usize> = None;
                for r in pivot_row..self.rows {
                    if h.at(r, col).is_zero() {
                        continue;
                    }
                    best = match best {
                        None => Some(r),
                        Some(b) if h.at(r, col).abs() < h.at(b, col).abs() => Some(r),
                        keep => keep,
                    };
                }
                let Some(b) = best else { break };
                h.swap_rows(pivot_row, b);
                u.swap_rows(pivot_row, b);
                let mut done = true;
                for r in pivot_row + 1..self.rows {
                    if h.at(r, col).is_zero() {
                        continue;
                    }
                    let q = h.at(r, col).div_floor(h.at(pivot_row, col));
                    h.sub_scaled_row(r, pivot_row, &q);
                    u.sub_scaled_row(r, pivot_row, &q);
                    if !h.at(r, col).is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if h.at(pivot_row, col).is_zero() {
                continue; // no pivot in this column
            }
            if h.at(pivot_row, col).is_negative() {
                h.negate_row(pivot_row);
                u.negate_row(pivot_row);
            }
            // Reduce entries above the pivot into [0, pivot).
            for r in 0..pivot_row {
                let q = h.at(r, col).div_floor(h.at(pivot_row, col));
                h.sub_scaled_row(r, pivot_row, &q);
                u.sub_scaled_row(r, pivot_row, &q);
            }
            pivot_row += 1;
        }
        (h, u)
    }

    /// Rank over the rationals, by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let (h, _) = self.hnf();
        (0..h.rows)
            .filter(|&r| (0..h.cols).any(|c| !h.at(r, c).is_zero()))
            .count()
    }
}

/// Index in `Z^n` of the sublattice spanned by the rows of `basis`.
pub fn lattice_index(basis: &IntMatrix) -> Result<BigInt> {
    if basis.rows() != basis.cols() {
        return Err(Error::RankDeficient);
    }
    let d = basis.det()?;
    if d.is_zero() {
        return Err(Error::RankDeficient);
    }
    Ok(d.abs())
}

impl std::fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
