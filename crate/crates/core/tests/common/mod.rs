//! Independent oracles shared by the integration tests.
//!
//! The exterior-square oracle works directly in `Λ²L` modulo the relations
//! `[x,y]∧z + [y,z]∧x + [z,x]∧y`, with its own dense elimination, so it shares
//! no code with the free-presentation route used by the library.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use schurlab_core::{LieAlgebra, Matrix};

type Q = BigRational;

/// Reduced row echelon form by plain Gauss-Jordan; returns nonzero rows and pivots.
pub fn gauss_jordan(mut rows: Vec<Vec<Q>>) -> (Vec<Vec<Q>>, Vec<usize>) {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot = rows[r].clone();
                for (v, p) in rows[i].iter_mut().zip(&pivot) {
                    *v -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: Vec<Vec<Q>>) -> usize {
    gauss_jordan(rows).1.len()
}

/// Index of `x_a ∧ x_b` (`a < b`) in `Λ²` of an `n`-dimensional space.
fn wedge_index(n: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b);
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

/// `u ∧ x_k` for `u` given by coordinates.
fn wedge_with_basis(n: usize, u: &[Q], k: usize, out: &mut [Q]) {
    for (t, c) in u.iter().enumerate() {
        if c.is_zero() || t == k {
            continue;
        }
        if t < k {
            out[wedge_index(n, t, k)] += c;
        } else {
            out[wedge_index(n, k, t)] -= c;
        }
    }
}

fn bracket(l: &LieAlgebra, i: usize, j: usize) -> Vec<Q> {
    l.basis_bracket(i, j).to_dense(l.dim())
}

/// Relations spanning the kernel of `Λ²L → L∧L`.
fn exterior_relations(l: &LieAlgebra) -> Vec<Vec<Q>> {
    let n = l.dim();
    let size = n * n.saturating_sub(1) / 2;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let mut row = vec![Q::zero(); size];
                wedge_with_basis(n, &bracket(l, i, j), k, &mut row);
                wedge_with_basis(n, &bracket(l, j, k), i, &mut row);
                wedge_with_basis(n, &bracket(l, k, i), j, &mut row);
                if row.iter().any(|v| !v.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

/// `dim L∧L` from the exterior-square model.
pub fn exterior_square_dim(l: &LieAlgebra) -> usize {
    let n = l.dim();
    n * n.saturating_sub(1) / 2 - rank(exterior_relations(l))
}

pub fn derived_dim(l: &LieAlgebra) -> usize {
    let n = l.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            rows.push(bracket(l, i, j));
        }
    }
    if rows.is_empty() {
        0
    } else {
        rank(rows)
    }
}

/// `dim M(L) = dim L∧L − dim L²`.
pub fn multiplier_dim(l: &LieAlgebra) -> usize {
    exterior_square_dim(l) - derived_dim(l)
}

/// Reduces `v` modulo the row space of `(rows, pivots)` in RREF.
fn reduce(v: &mut [Q], rows: &[Vec<Q>], pivots: &[usize]) {
    for (row, &p) in rows.iter().zip(pivots) {
        if !v[p].is_zero() {
            let f = v[p].clone();
            for (k, r) in row.iter().enumerate() {
                v[k] -= &f * r;
            }
        }
    }
}

/// `dim Z^∧(L)`: elements `z` with `z ∧ x = 0` in `L∧L` for every `x`.
pub fn exterior_center_dim(l: &LieAlgebra) -> usize {
    let n = l.dim();
    let size = n * n.saturating_sub(1) / 2;
    if size == 0 {
        return n;
    }
    let relations = exterior_relations(l);
    let (rows, pivots) = if relations.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        gauss_jordan(relations)
    };
    // Row a: the residues of x_a ∧ x_g for all g, concatenated.
    let mut system = Vec::new();
    for a in 0..n {
        let mut row = Vec::with_capacity(n * size);
        for g in 0..n {
            let mut w = vec![Q::zero(); size];
            let mut unit = vec![Q::zero(); n];
            unit[a] = Q::one();
            wedge_with_basis(n, &unit, g, &mut w);
            reduce(&mut w, &rows, &pivots);
            row.extend(w);
        }
        system.push(row);
    }
    n - rank(system)
}

/// Number of Lyndon words of length `k` over `d` letters, by enumeration.
pub fn lyndon_count(d: usize, k: usize) -> usize {
    let total = d.pow(k as u32);
    let mut count = 0;
    for mut code in 0..total {
        let mut word = vec![0; k];
        for slot in word.iter_mut().rev() {
            *slot = code % d;
            code /= d;
        }
        // Lyndon: strictly smaller than every proper rotation.
        if (1..k).all(|s| {
            let rotated: Vec<usize> = word[s..].iter().chain(&word[..s]).copied().collect();
            word < rotated
        }) {
            count += 1;
        }
    }
    count
}

/// Künneth prediction for `dim M(L ⊕ A(k))`.
pub fn kunneth(dim_m: usize, ab_dim: usize, k: usize) -> usize {
    dim_m + k * k.saturating_sub(1) / 2 + k * ab_dim
}

/// Seeded source of invertible rational matrices with small entries.
pub struct BasisChanges {
    rng: StdRng,
}

impl BasisChanges {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: StdRng::seed_from_u64(seed),
        }
    }

    fn entry(&mut self) -> Q {
        let num = self.rng.gen_range(-3i64..=3);
        let den = if self.rng.gen_bool(0.25) {
            self.rng.gen_range(2i64..=3)
        } else {
            1
        };
        Q::new(BigInt::from(num), BigInt::from(den))
    }

    /// Mostly sparse: identity plus a few random entries, sometimes a full random matrix.
    pub fn next(&mut self, n: usize) -> Matrix {
        loop {
            let dense = self.rng.gen_bool(0.3);
            let mut rows = vec![vec![Q::zero(); n]; n];
            for (i, row) in rows.iter_mut().enumerate() {
                for (j, v) in row.iter_mut().enumerate() {
                    if dense || i == j || self.rng.gen_bool(0.2) {
                        *v = self.entry();
                    }
                }
            }
            let m = Matrix::from_rows(n, rows).expect("square");
            if m.inverse().is_ok() {
                return m;
            }
        }
    }
}
