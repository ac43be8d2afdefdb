//! Lie algebras given by structure constants on an ordered basis.
//!
//! Only brackets `[x_i, x_j]` with `i < j` are stored; the rest follow from
//! antisymmetry. Indices are 0-based in the API and 1-based in messages, to
//! match the `x1, x2, ...` naming used by presentations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::exec::Execution;
use crate::linalg::{kernel_of_rows, LinalgError, Matrix, Scalar, SparseVec, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("Jacobi identity fails on (x{i}, x{j}, x{k}): residual {}", format_vector(.residual))]
    JacobiViolation {
        i: usize,
        j: usize,
        k: usize,
        residual: SparseVec,
    },
    #[error("bracket [x{i}, x{i}] must be zero")]
    SelfBracket { i: usize },
    #[error("generator x{index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("algebra is not nilpotent: lower central series stabilizes at dimension {stable_dim}")]
    NotNilpotent { stable_dim: usize },
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("basis change matrix is singular")]
    SingularMatrix,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Formats a coordinate vector as `2*x1 - x4`.
pub fn format_vector(v: &SparseVec) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (pos, (i, c)) in v.iter().enumerate() {
        let negative = c < &Scalar::zero();
        let magnitude = if negative { -c.clone() } else { c.clone() };
        match (pos, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if magnitude != Scalar::from_integer(1.into()) {
            out.push_str(&format!("{magnitude}*"));
        }
        out.push_str(&format!("x{}", i + 1));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    name: Option<String>,
    table: BTreeMap<(usize, usize), SparseVec>,
}

impl LieAlgebra {
    /// Abelian algebra of the given dimension; add brackets with [`set_bracket`](Self::set_bracket).
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            name: None,
            table: BTreeMap::new(),
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_abelian(&self) -> bool {
        self.table.is_empty()
    }

    fn check_index(&self, index: usize) -> Result<(), LieError> {
        if index >= self.dim {
            return Err(LieError::IndexOutOfRange {
                index: index + 1,
                dim: self.dim,
            });
        }
        Ok(())
    }

    /// Sets `[x_i, x_j] = value` (and implicitly `[x_j, x_i] = -value`).
    pub fn set_bracket(&mut self, i: usize, j: usize, value: SparseVec) -> Result<(), LieError> {
        self.check_index(i)?;
        self.check_index(j)?;
        if let Some(top) = value.max_index() {
            self.check_index(top)?;
        }
        if i == j {
            return if value.is_zero() {
                Ok(())
            } else {
                Err(LieError::SelfBracket { i: i + 1 })
            };
        }
        let (key, value) = if i < j {
            ((i, j), value)
        } else {
            ((j, i), value.negated())
        };
        if value.is_zero() {
            self.table.remove(&key);
        } else {
            self.table.insert(key, value);
        }
        Ok(())
    }

    /// `[x_i, x_j]` in basis coordinates.
    pub fn basis_bracket(&self, i: usize, j: usize) -> SparseVec {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.table.get(&(i, j)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Greater => self
                .table
                .get(&(j, i))
                .map(SparseVec::negated)
                .unwrap_or_default(),
            std::cmp::Ordering::Equal => SparseVec::new(),
        }
    }

    /// Nonzero structure constants, `(i, j) -> [x_i, x_j]` with `i < j`.
    pub fn structure_constants(&self) -> &BTreeMap<(usize, usize), SparseVec> {
        &self.table
    }

    pub fn bracket_sparse(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut pairs = Vec::new();
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                if i == j {
                    continue;
                }
                let (key, negate) = if i < j {
                    ((i, j), false)
                } else {
                    ((j, i), true)
                };
                if let Some(c) = self.table.get(&key) {
                    let mut factor = a * b;
                    if negate {
                        factor = -factor;
                    }
                    pairs.extend(c.iter().map(|(k, ck)| (k, &factor * ck)));
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// Bracket of two elements given by dense coordinates.
    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>, LieError> {
        for w in [u, v] {
            if w.len() != self.dim {
                return Err(LinalgError::DimensionMismatch {
                    expected: self.dim,
                    found: w.len(),
                }
                .into());
            }
        }
        Ok(self
            .bracket_sparse(&SparseVec::from_dense(u), &SparseVec::from_dense(v))
            .to_dense(self.dim))
    }

    fn jacobiator(&self, i: usize, j: usize, k: usize) -> SparseVec {
        let mut total = self.bracket_sparse(&self.basis_bracket(i, j), &SparseVec::unit(k));
        total.add_scaled(
            &Scalar::from_integer(1.into()),
            &self.bracket_sparse(&self.basis_bracket(j, k), &SparseVec::unit(i)),
        );
        total.add_scaled(
            &Scalar::from_integer(1.into()),
            &self.bracket_sparse(&self.basis_bracket(k, i), &SparseVec::unit(j)),
        );
        total
    }

    /// Every basis triple `i < j < k` whose Jacobiator is nonzero, in
    /// lexicographic order. Triples with no nonzero pairwise bracket are skipped.
    pub fn jacobi_violations(&self, exec: Execution) -> Vec<LieError> {
        let mut triples = BTreeSet::new();
        for &(a, b) in self.table.keys() {
            for k in 0..self.dim {
                if k != a && k != b {
                    let mut t = [a, b, k];
                    t.sort_unstable();
                    triples.insert(t);
                }
            }
        }
        let triples: Vec<[usize; 3]> = triples.into_iter().collect();
        exec.map(&triples, |&[i, j, k]| {
            let residual = self.jacobiator(i, j, k);
            (!residual.is_zero()).then(|| LieError::JacobiViolation {
                i: i + 1,
                j: j + 1,
                k: k + 1,
                residual,
            })
        })
        .into_iter()
        .flatten()
        .collect()
    }

    /// Checks the Jacobi identity on all basis triples; reports the first failure.
    pub fn validate(&self) -> Result<(), LieError> {
        self.validate_with(Execution::default())
    }

    pub fn validate_with(&self, exec: Execution) -> Result<(), LieError> {
        match self.jacobi_violations(exec).into_iter().next() {
            Some(err) => Err(err),
            None => Ok(()),
        }
    }

    /// Span of `[s, t]` over basis vectors of `s_space` and `t_space`.
    pub fn bracket_subspaces(
        &self,
        s_space: &Subspace,
        t_space: &Subspace,
    ) -> Result<Subspace, LieError> {
        for s in [s_space, t_space] {
            if s.ambient() != self.dim {
                return Err(LinalgError::DimensionMismatch {
                    expected: self.dim,
                    found: s.ambient(),
                }
                .into());
            }
        }
        Ok(Subspace::from_spanning(
            self.dim,
            s_space.rows().iter().flat_map(|s| {
                t_space
                    .rows()
                    .iter()
                    .map(move |t| self.bracket_sparse(s, t))
            }),
        ))
    }

    /// Derived subalgebra `[L, L]`.
    pub fn derived(&self) -> Subspace {
        Subspace::from_spanning(self.dim, self.table.values().cloned())
    }

    /// `[L, S]`, spanned by brackets of basis vectors with a basis of `S`.
    pub fn bracket_with_algebra(&self, s: &Subspace) -> Subspace {
        Subspace::from_spanning(
            self.dim,
            s.rows().iter().flat_map(|row| {
                (0..self.dim).map(move |a| self.bracket_sparse(&SparseVec::unit(a), row))
            }),
        )
    }

    pub fn center(&self) -> Subspace {
        // Row (j, k) holds the coefficient of x_k in [z, x_j] as a function of z.
        let mut rows: BTreeMap<(usize, usize), Vec<(usize, Scalar)>> = BTreeMap::new();
        for (&(a, b), c) in &self.table {
            for (k, ck) in c.iter() {
                rows.entry((b, k)).or_default().push((a, ck.clone()));
                rows.entry((a, k)).or_default().push((b, -ck.clone()));
            }
        }
        let rows: Vec<SparseVec> = rows.into_values().map(SparseVec::from_pairs).collect();
        kernel_of_rows(&rows, self.dim)
    }

    pub fn is_ideal(&self, ideal: &Subspace) -> Result<bool, LieError> {
        if ideal.ambient() != self.dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.dim,
                found: ideal.ambient(),
            }
            .into());
        }
        Ok(ideal.rows().iter().all(|row| {
            (0..self.dim).all(|a| ideal.contains(&self.bracket_sparse(&SparseVec::unit(a), row)))
        }))
    }

    /// Lower central series, center and derived invariants.
    pub fn series(&self) -> Result<Series, LieError> {
        let mut gammas = vec![Subspace::full(self.dim)];
        loop {
            let last = gammas.last().unwrap();
            if last.is_zero() {
                break;
            }
            let next = self.bracket_with_algebra(last);
            if next.dim() == last.dim() {
                return Err(LieError::NotNilpotent {
                    stable_dim: next.dim(),
                });
            }
            gammas.push(next);
        }
        let center = self.center();
        Ok(Series { gammas, center })
    }

    pub fn quotient_by_ideal(&self, ideal: &Subspace) -> Result<Quotient, LieError> {
        if !self.is_ideal(ideal)? {
            return Err(LieError::NotAnIdeal);
        }
        let complement = ideal.non_pivots();
        let position: BTreeMap<usize, usize> = complement
            .iter()
            .enumerate()
            .map(|(p, &i)| (i, p))
            .collect();
        let mut algebra = LieAlgebra::new(complement.len());
        if let Some(name) = &self.name {
            algebra.name = Some(format!("{name}/I"));
        }
        for (pa, &a) in complement.iter().enumerate() {
            for (pb, &b) in complement.iter().enumerate().skip(pa + 1) {
                let image = ideal
                    .reduce(&self.basis_bracket(a, b))
                    .remap(|i| position.get(&i).copied());
                algebra.set_bracket(pa, pb, image)?;
            }
        }
        Ok(Quotient {
            algebra,
            ideal: ideal.clone(),
            complement,
        })
    }

    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let shift = self.dim;
        let mut table = self.table.clone();
        for (&(i, j), c) in &other.table {
            table.insert((i + shift, j + shift), c.remap(|k| Some(k + shift)));
        }
        let name = match (&self.name, &other.name) {
            (Some(a), Some(b)) => Some(format!("{a}+{b}")),
            _ => None,
        };
        LieAlgebra {
            dim: self.dim + other.dim,
            name,
            table,
        }
    }

    /// Rewrites the algebra in the basis `y_i = sum_k P[k][i] x_k` (columns of `P`).
    pub fn change_basis(&self, p: &Matrix) -> Result<LieAlgebra, LieError> {
        if p.rows() != self.dim || p.cols() != self.dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.dim,
                found: p.rows().max(p.cols()),
            }
            .into());
        }
        let inv = p.inverse().map_err(|e| match e {
            LinalgError::Singular => LieError::SingularMatrix,
            other => other.into(),
        })?;
        let columns: Vec<SparseVec> = (0..self.dim)
            .map(|i| SparseVec::from_dense(&p.column(i)))
            .collect();
        let mut out = LieAlgebra::new(self.dim);
        out.name = self.name.clone();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let image = self.bracket_sparse(&columns[i], &columns[j]);
                if image.is_zero() {
                    continue;
                }
                let coords = inv.mul_vec(&image.to_dense(self.dim))?;
                out.set_bracket(i, j, SparseVec::from_dense(&coords))?;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for LieAlgebra {
    /// Presentation-style rendering: `<x1,...,xn | [x1,x2]=x3, ...>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for i in 0..self.dim {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "x{}", i + 1)?;
        }
        write!(f, " |")?;
        for (n, (&(i, j), c)) in self.table.iter().enumerate() {
            let sep = if n == 0 { " " } else { ", " };
            write!(f, "{sep}[x{},x{}]={}", i + 1, j + 1, format_vector(c))?;
        }
        write!(f, ">")
    }
}

/// Lower central series and center of a nilpotent algebra.
#[derive(Debug, Clone)]
pub struct Series {
    /// `gammas[i]` is the (i+1)-th term of the lower central series; the last entry is zero.
    pub gammas: Vec<Subspace>,
    pub center: Subspace,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    pub gamma_dims: Vec<usize>,
    pub derived_dim: usize,
    pub class: usize,
    pub center_dim: usize,
    pub min_generators: usize,
    pub central_complement_dim: usize,
}

impl Series {
    pub fn dim(&self) -> usize {
        self.gammas[0].ambient()
    }

    /// `γ_i(L)` with the 1-based numbering of the lower central series; zero past the end.
    pub fn gamma(&self, i: usize) -> Subspace {
        assert!(i >= 1, "lower central series starts at 1");
        self.gammas
            .get(i - 1)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.dim()))
    }

    pub fn derived(&self) -> Subspace {
        self.gamma(2)
    }

    /// Nilpotency class: the last `i` with `γ_i ≠ 0` (0 for the zero algebra).
    pub fn class(&self) -> usize {
        self.gammas.len() - 1
    }

    pub fn report(&self) -> SeriesReport {
        let derived = self.derived();
        let shared = self.center.intersect(&derived).expect("same ambient").dim();
        SeriesReport {
            gamma_dims: self.gammas.iter().map(Subspace::dim).collect(),
            derived_dim: derived.dim(),
            class: self.class(),
            center_dim: self.center.dim(),
            min_generators: self.dim() - derived.dim(),
            central_complement_dim: self.center.dim() - shared,
        }
    }
}

/// `L / I` on the complement spanned by the non-pivot basis vectors of `I`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub algebra: LieAlgebra,
    pub ideal: Subspace,
    /// Basis indices of `L` whose images form the quotient basis, in order.
    pub complement: Vec<usize>,
}

impl Quotient {
    pub fn project(&self, v: &SparseVec) -> SparseVec {
        let reduced = self.ideal.reduce(v);
        reduced.remap(|i| self.complement.binary_search(&i).ok())
    }

    pub fn lift(&self, u: &SparseVec) -> SparseVec {
        u.remap(|p| self.complement.get(p).copied())
    }
}
