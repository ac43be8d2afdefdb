use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{LinalgError, Scalar, SparseVec, Subspace};

/// Dense rectangular matrix of rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds a matrix from rows. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let count = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self {
            rows: count,
            cols,
            data,
        })
    }

    /// Convenience constructor for integer matrices; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| super::scalar(v)).collect())
                .collect(),
        )
        .expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &Scalar {
        &self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Scalar) {
        self.data[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[Scalar] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn sparse_rows(&self) -> Vec<SparseVec> {
        (0..self.rows)
            .map(|r| SparseVec::from_dense(self.row(r)))
            .collect()
    }

    pub fn column(&self, col: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, col).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn rank(&self) -> usize {
        bareiss_echelon(self).1.len()
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut augmented = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                augmented.set(r, c, self.get(r, c).clone());
            }
            augmented.set(r, n + r, Scalar::one());
        }
        let (reduced, _) = rref(&augmented);
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            if reduced.get(r, r) != &Scalar::one() {
                return Err(LinalgError::Singular);
            }
            for c in 0..n {
                inv.set(r, c, reduced.get(r, n + c).clone());
            }
        }
        Ok(inv)
    }
}

/// Fraction-free forward elimination. Returns the integer echelon rows and the
/// pivot column of each of them.
fn bareiss_echelon(m: &Matrix) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|r| {
            let row = m.row(r);
            let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut top = 0;
    for col in 0..m.cols {
        if top >= a.len() {
            break;
        }
        let Some(found) = (top..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(top, found);
        let (head, tail) = a.split_at_mut(top + 1);
        let pivot_row = &head[top];
        let p = &pivot_row[col];
        for row in tail.iter_mut() {
            let factor = row[col].clone();
            for j in (col + 1)..m.cols {
                let num = p * &row[j] - &factor * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
            row[col] = BigInt::zero();
        }
        prev = p.clone();
        pivots.push(col);
        top += 1;
    }
    a.truncate(pivots.len());
    (a, pivots)
}

/// Reduced row-echelon form (nonzero rows only) and rank.
///
/// Forward elimination is fraction-free; the echelon rows are then normalized
/// and back-substituted over the rationals.
pub fn rref(m: &Matrix) -> (Matrix, usize) {
    let (echelon, pivots) = bareiss_echelon(m);
    let rank = pivots.len();
    let mut rows: Vec<Vec<Scalar>> = echelon
        .into_iter()
        .zip(&pivots)
        .map(|(row, &p)| {
            let lead = row[p].clone();
            row.into_iter()
                .map(|v| Scalar::new(v, lead.clone()))
                .collect()
        })
        .collect();
    for i in (0..rank).rev() {
        let p = pivots[i];
        let (above, rest) = rows.split_at_mut(i);
        let pivot_row = &rest[0];
        for target in above {
            let factor = target[p].clone();
            if factor.is_zero() {
                continue;
            }
            for (t, v) in target[p..].iter_mut().zip(&pivot_row[p..]) {
                if !v.is_zero() {
                    *t -= &factor * v;
                }
            }
        }
    }
    let out = Matrix::from_rows(m.cols, rows).expect("rows keep their width");
    (out, rank)
}

/// Null space `{v : m v = 0}` as a canonical subspace of `Q^cols`.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    let (reduced, rank) = rref(m);
    let pivots: Vec<usize> = (0..rank)
        .map(|r| {
            (0..m.cols)
                .find(|&c| !reduced.get(r, c).is_zero())
                .expect("rref rows are nonzero")
        })
        .collect();
    let vectors = (0..m.cols).filter(|c| !pivots.contains(c)).map(|free| {
        let mut pairs = vec![(free, Scalar::one())];
        for (r, &p) in pivots.iter().enumerate() {
            let entry = reduced.get(r, free);
            if !entry.is_zero() {
                pairs.push((p, -entry));
            }
        }
        SparseVec::from_pairs(pairs)
    });
    Subspace::from_spanning(m.cols, vectors)
}
