//! Free nilpotent Lie algebras on a Hall basis.
//!
//! A Hall word is a generator or a pair `[u, v]` of Hall words with `u < v`
//! such that, when `v = [v1, v2]`, also `v1 <= u`. Words are ordered by
//! degree, then by the position of their left and right factors. Products of
//! basis words are rewritten into the basis by the Jacobi identity
//! `[u, [v1, v2]] = [[u, v1], v2] - [[u, v2], v1]`.

use std::collections::HashMap;
use std::ops::Range;

use num_traits::One;
use thiserror::Error;

use crate::lie::LieAlgebra;
use crate::linalg::{Scalar, SparseVec};

/// Default upper bound on the number of basis words of a truncated free algebra.
pub const DEFAULT_WORD_CAP: usize = 5000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeError {
    #[error("free nilpotent algebra on {generators} generators of class {class_bound} has {words} basis words, above the cap of {cap}")]
    ResourceCap {
        generators: usize,
        class_bound: usize,
        words: u128,
        cap: usize,
    },
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Dimension of the degree-`k` component of the free Lie algebra on `d`
/// generators: `(1/k) Σ_{j | k} μ(j) d^{k/j}`.
pub fn witt_dim(d: usize, k: usize) -> u128 {
    assert!(k >= 1, "degree starts at 1");
    let d = d as i128;
    let total: i128 = (1..=k as u64)
        .filter(|&j| (k as u64).is_multiple_of(j))
        .map(|j| mobius(j) as i128 * d.pow((k as u64 / j) as u32))
        .sum();
    (total / k as i128) as u128
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HallTree {
    Generator(usize),
    /// Positions of the left and right factors.
    Bracket(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallWord {
    pub degree: usize,
    pub tree: HallTree,
    pub position: usize,
}

pub fn hall_basis(d: usize, s: usize) -> Result<Vec<HallWord>, FreeError> {
    hall_basis_with_cap(d, s, DEFAULT_WORD_CAP)
}

pub fn hall_basis_with_cap(d: usize, s: usize, cap: usize) -> Result<Vec<HallWord>, FreeError> {
    let total: u128 = (1..=s).map(|k| witt_dim(d, k)).sum();
    if total > cap as u128 {
        return Err(FreeError::ResourceCap {
            generators: d,
            class_bound: s,
            words: total,
            cap,
        });
    }
    let mut words: Vec<HallWord> = (0..d)
        .map(|g| HallWord {
            degree: 1,
            tree: HallTree::Generator(g),
            position: g,
        })
        .collect();
    let mut by_degree: Vec<Range<usize>> = vec![0..0, 0..d];
    for k in 2..=s {
        let start = words.len();
        for du in 1..k {
            let dv = k - du;
            for u in by_degree[du].clone() {
                for v in by_degree[dv].clone() {
                    if u >= v {
                        continue;
                    }
                    let admissible = match words[v].tree {
                        HallTree::Generator(_) => true,
                        HallTree::Bracket(v1, _) => v1 <= u,
                    };
                    if admissible {
                        let position = words.len();
                        words.push(HallWord {
                            degree: k,
                            tree: HallTree::Bracket(u, v),
                            position,
                        });
                    }
                }
            }
        }
        // Enumeration above runs by left-factor degree; restore (left, right) order.
        words[start..].sort_by_key(|w| match w.tree {
            HallTree::Bracket(u, v) => (u, v),
            HallTree::Generator(_) => unreachable!(),
        });
        for (offset, w) in words[start..].iter_mut().enumerate() {
            w.position = start + offset;
        }
        by_degree.push(start..words.len());
    }
    Ok(words)
}

/// Rewrites products of Hall words into the Hall basis, memoizing every product.
struct Collector<'a> {
    words: &'a [HallWord],
    class_bound: usize,
    index: HashMap<(usize, usize), usize>,
    memo: HashMap<(usize, usize), SparseVec>,
}

impl<'a> Collector<'a> {
    fn new(words: &'a [HallWord], class_bound: usize) -> Self {
        let index = words
            .iter()
            .filter_map(|w| match w.tree {
                HallTree::Bracket(u, v) => Some(((u, v), w.position)),
                HallTree::Generator(_) => None,
            })
            .collect();
        Self {
            words,
            class_bound,
            index,
            memo: HashMap::new(),
        }
    }

    fn product(&mut self, a: usize, b: usize) -> SparseVec {
        if a == b || self.words[a].degree + self.words[b].degree > self.class_bound {
            return SparseVec::new();
        }
        if a > b {
            return self.product(b, a).negated();
        }
        if let Some(hit) = self.memo.get(&(a, b)) {
            return hit.clone();
        }
        let result = match self.words[b].tree {
            HallTree::Bracket(b1, b2) if b1 > a => {
                let left = self.product(a, b1);
                let right = self.product(a, b2);
                let mut out = self.product_vec(&left, b2);
                let tail = self.product_vec(&right, b1);
                out.add_scaled(&-Scalar::one(), &tail);
                out
            }
            _ => SparseVec::unit(
                *self
                    .index
                    .get(&(a, b))
                    .expect("admissible pair within the class bound is a Hall word"),
            ),
        };
        self.memo.insert((a, b), result.clone());
        result
    }

    /// `[Σ c_w w, t]`.
    fn product_vec(&mut self, combo: &SparseVec, t: usize) -> SparseVec {
        let mut out = SparseVec::new();
        for (w, c) in combo.iter() {
            let p = self.product(w, t);
            out.add_scaled(c, &p);
        }
        out
    }
}

/// `F / γ_{s+1}(F)` for the free Lie algebra `F` on `d` generators.
#[derive(Debug, Clone)]
pub struct FreeNilpotentAlgebra {
    generators: usize,
    class_bound: usize,
    basis: Vec<HallWord>,
    algebra: LieAlgebra,
    degree_offsets: Vec<Range<usize>>,
}

impl FreeNilpotentAlgebra {
    pub fn new(d: usize, s: usize) -> Result<Self, FreeError> {
        Self::with_cap(d, s, DEFAULT_WORD_CAP)
    }

    pub fn with_cap(d: usize, s: usize, cap: usize) -> Result<Self, FreeError> {
        let basis = hall_basis_with_cap(d, s, cap)?;
        let mut degree_offsets = Vec::with_capacity(s);
        for k in 1..=s {
            let start = basis.partition_point(|w| w.degree < k);
            let end = basis.partition_point(|w| w.degree <= k);
            degree_offsets.push(start..end);
        }
        let mut algebra = LieAlgebra::new(basis.len()).with_name(format!("F({d},{s})"));
        {
            let mut collector = Collector::new(&basis, s);
            for a in 0..basis.len() {
                for b in (a + 1)..basis.len() {
                    if basis[a].degree + basis[b].degree > s {
                        // Later words only have larger degree.
                        break;
                    }
                    let p = collector.product(a, b);
                    algebra.set_bracket(a, b, p).expect("indices are in range");
                }
            }
        }
        Ok(Self {
            generators: d,
            class_bound: s,
            basis,
            algebra,
            degree_offsets,
        })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn class_bound(&self) -> usize {
        self.class_bound
    }

    pub fn basis(&self) -> &[HallWord] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    /// Index range of the Hall words of degree `k` (1-based degree).
    pub fn degree_range(&self, k: usize) -> Range<usize> {
        self.degree_offsets
            .get(k.wrapping_sub(1))
            .cloned()
            .unwrap_or(self.dim()..self.dim())
    }

    /// Coordinates of `[w_a, w_b]` in the Hall basis.
    pub fn collect(&self, a: usize, b: usize) -> SparseVec {
        self.algebra.basis_bracket(a, b)
    }

    /// Bracket notation for a basis word, e.g. `[x1,[x1,x2]]`.
    pub fn word_string(&self, index: usize) -> String {
        match self.basis[index].tree {
            HallTree::Generator(g) => format!("x{}", g + 1),
            HallTree::Bracket(u, v) => {
                format!("[{},{}]", self.word_string(u), self.word_string(v))
            }
        }
    }
}

/// Free nilpotent Lie algebra on `d` generators of class `s`, with the default word cap.
pub fn free_nilpotent_algebra(d: usize, s: usize) -> Result<FreeNilpotentAlgebra, FreeError> {
    FreeNilpotentAlgebra::new(d, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Execution;

    #[test]
    fn witt_small_values() {
        assert_eq!(witt_dim(2, 1), 2);
        assert_eq!(witt_dim(2, 2), 1);
        assert_eq!(witt_dim(2, 3), 2);
        assert_eq!(witt_dim(2, 4), 3);
        assert_eq!(witt_dim(2, 5), 6);
        assert_eq!(witt_dim(3, 3), 8);
        assert_eq!(witt_dim(1, 3), 0);
    }

    #[test]
    fn hall_basis_sizes() {
        assert_eq!(hall_basis(2, 3).unwrap().len(), 5);
        assert_eq!(hall_basis(2, 4).unwrap().len(), 8);
        assert_eq!(hall_basis(1, 6).unwrap().len(), 1);
    }

    #[test]
    fn hall_basis_respects_cap() {
        let err = hall_basis_with_cap(4, 6, 100).unwrap_err();
        assert!(matches!(err, FreeError::ResourceCap { cap: 100, .. }));
        assert!(hall_basis(8, 8).is_err());
    }

    #[test]
    fn degree_two_word_is_the_generator_bracket() {
        let f = FreeNilpotentAlgebra::new(2, 3).unwrap();
        assert_eq!(f.collect(0, 1), SparseVec::unit(2));
        assert_eq!(f.collect(1, 0), SparseVec::unit(2).negated());
        assert_eq!(f.word_string(2), "[x1,x2]");
    }

    #[test]
    fn products_beyond_class_bound_vanish() {
        let f = FreeNilpotentAlgebra::new(2, 3).unwrap();
        let top = f.degree_range(3);
        for w in top {
            assert!(f.collect(0, w).is_zero());
            assert!(f.collect(2, w).is_zero());
        }
    }

    #[test]
    fn free_algebras_satisfy_jacobi() {
        for (d, s) in [(2, 3), (2, 5), (3, 4), (4, 3)] {
            let f = FreeNilpotentAlgebra::new(d, s).unwrap();
            assert!(
                f.algebra().validate_with(Execution::default()).is_ok(),
                "F({d},{s})"
            );
        }
    }

    #[test]
    fn free_nilpotent_invariants() {
        let r = FreeNilpotentAlgebra::new(2, 2)
            .unwrap()
            .algebra()
            .series()
            .unwrap()
            .report();
        assert_eq!((r.gamma_dims[0], r.derived_dim, r.class), (3, 1, 2));
        let r = FreeNilpotentAlgebra::new(3, 2)
            .unwrap()
            .algebra()
            .series()
            .unwrap()
            .report();
        assert_eq!((r.gamma_dims[0], r.derived_dim, r.class), (6, 3, 2));
        let r = FreeNilpotentAlgebra::new(2, 3)
            .unwrap()
            .algebra()
            .series()
            .unwrap()
            .report();
        assert_eq!(r.gamma_dims, vec![5, 3, 2, 0]);
    }
}
