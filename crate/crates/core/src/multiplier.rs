//! Schur multiplier, exterior square and exterior center via a free presentation.
//!
//! For nilpotent `L` of class `c` on `d = n − m` minimal generators, take the
//! free nilpotent algebra `F̄ = F / γ_{c+2}(F)` and the surjection `π: F̄ → L`
//! sending generators to a complement of `L²`. With `R̄ = ker π`:
//!
//! * `M(L) ≅ (R̄ ∩ F̄²) / [F̄, R̄]`
//! * `L ∧ L ≅ F̄² / [F̄, R̄]`
//! * `Z^∧(L) = { z : [z̃, F̄] ⊆ [F̄, R̄] }` for any lift `z̃` of `z`.
//!
//! Truncating at `c + 1` loses nothing: `γ_{c+1}(F) ⊆ R` gives
//! `γ_{c+2}(F) ⊆ [F, R]`, so both quotients agree with the untruncated ones.
//! `[F̄, R̄]` is spanned by `[x_g, r]` over generators `x_g` and a basis of `R̄`,
//! since `R̄` is an ideal and brackets with longer words expand by Jacobi.

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::{bound_e1, bound_e2};
use crate::exec::Execution;
use crate::free::{FreeError, FreeNilpotentAlgebra, HallTree};
use crate::lie::{format_vector, LieAlgebra, LieError};
use crate::linalg::{
    kernel_of_rows, left_kernel, EchelonBuilder, LinalgError, Matrix, Scalar, SparseVec, Subspace,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultiplierError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Free(#[from] FreeError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("ideal is not central")]
    NotCentral,
    #[error("ideal must be one-dimensional, got dimension {0}")]
    NotOneDimensional(usize),
}

/// `L ≅ F̄ / R̄` with all subspaces needed by the multiplier computations.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub free: FreeNilpotentAlgebra,
    /// Basis indices of `L` that the free generators map to, in order.
    pub generator_images: Vec<usize>,
    /// `π(w)` for every Hall word `w`, in `L`-coordinates.
    pub images: Vec<SparseVec>,
    /// `R̄ = ker π`.
    pub relations: Subspace,
    /// `F̄²`, the span of Hall words of degree at least 2.
    pub free_derived: Subspace,
    /// `[F̄, R̄]`.
    pub relation_commutator: Subspace,
    /// A lift of each basis vector of `L` into `F̄`.
    section: Vec<SparseVec>,
    dim: usize,
    derived_dim: usize,
    class: usize,
}

impl Presentation {
    pub fn new(l: &LieAlgebra) -> Result<Self, MultiplierError> {
        Self::new_with(l, Execution::default())
    }

    pub fn new_with(l: &LieAlgebra, exec: Execution) -> Result<Self, MultiplierError> {
        let series = l.series()?;
        let n = l.dim();
        let class = series.class();
        let derived = series.derived();
        let generator_images = derived.non_pivots();
        let d = generator_images.len();
        let free = FreeNilpotentAlgebra::new(d, class + 1)?;
        let big = free.dim();

        let mut images: Vec<SparseVec> = Vec::with_capacity(big);
        for word in free.basis() {
            let image = match word.tree {
                HallTree::Generator(g) => SparseVec::unit(generator_images[g]),
                HallTree::Bracket(_, _) if word.degree > class => SparseVec::new(),
                HallTree::Bracket(u, v) => l.bracket_sparse(&images[u], &images[v]),
            };
            images.push(image);
        }

        // Rows of the matrix of π (n × big).
        let mut pi_rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
        for (w, image) in images.iter().enumerate() {
            for (k, c) in image.iter() {
                pi_rows[k].push((w, c.clone()));
            }
        }
        let pi_rows: Vec<SparseVec> = pi_rows.into_iter().map(SparseVec::from_pairs).collect();
        let relations = kernel_of_rows(&pi_rows, big);
        let section = section_of(&images, n)?;

        let free_derived = Subspace::coordinate(big, d..big);
        let algebra = free.algebra();
        let top = class + 1;
        let products: Vec<Vec<SparseVec>> = exec.map(relations.rows(), |r| {
            // Relations that live entirely in the top degree bracket to zero.
            if r.leading()
                .is_some_and(|(i, _)| free.basis()[i].degree >= top)
            {
                return Vec::new();
            }
            (0..d)
                .map(|g| algebra.bracket_sparse(&SparseVec::unit(g), r))
                .filter(|v| !v.is_zero())
                .collect()
        });
        let mut builder = EchelonBuilder::new(big);
        for v in products.iter().flatten() {
            builder.insert(v);
        }
        let relation_commutator = builder.finish();
        log::debug!(
            "presentation of {}: free dim {big}, relations {}, [F,R] dim {}",
            l.name().unwrap_or("algebra"),
            relations.dim(),
            relation_commutator.dim()
        );

        Ok(Self {
            free,
            generator_images,
            images,
            relations,
            free_derived,
            relation_commutator,
            section,
            dim: n,
            derived_dim: derived.dim(),
            class,
        })
    }

    /// Matrix of `π: F̄ → L` in the Hall basis (columns indexed by Hall words).
    pub fn pi_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.images.len());
        for (w, image) in self.images.iter().enumerate() {
            for (k, c) in image.iter() {
                m.set(k, w, c.clone());
            }
        }
        m
    }

    pub fn relations_in_derived(&self) -> Subspace {
        self.relations
            .intersect(&self.free_derived)
            .expect("same ambient")
    }

    pub fn multiplier_dim(&self) -> usize {
        self.relations_in_derived().dim() - self.relation_commutator.dim()
    }

    pub fn exterior_square_dim(&self) -> usize {
        self.free_derived.dim() - self.relation_commutator.dim()
    }

    /// Lift of an element of `L` into `F̄`.
    pub fn lift(&self, z: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, c) in z.iter() {
            out.add_scaled(c, &self.section[j]);
        }
        out
    }

    pub fn exterior_center(&self) -> Subspace {
        let d = self.generator_images.len();
        let big = self.free.dim();
        let algebra = self.free.algebra();
        let rows: Vec<SparseVec> = self
            .section
            .iter()
            .map(|lift| {
                let mut pairs = Vec::new();
                for g in 0..d {
                    let reduced = self
                        .relation_commutator
                        .reduce(&algebra.bracket_sparse(lift, &SparseVec::unit(g)));
                    pairs.extend(reduced.iter().map(|(i, c)| (g * big + i, c.clone())));
                }
                SparseVec::from_pairs(pairs)
            })
            .collect();
        left_kernel(&rows)
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn derived_dim(&self) -> usize {
        self.derived_dim
    }
}

/// Right inverse of π, built on the first Hall words whose images are independent.
fn section_of(images: &[SparseVec], n: usize) -> Result<Vec<SparseVec>, MultiplierError> {
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    let mut span = EchelonBuilder::new(n);
    for (w, image) in images.iter().enumerate() {
        if chosen.len() == n {
            break;
        }
        if span.insert(image) {
            chosen.push(w);
        }
    }
    if chosen.len() < n {
        return Err(LinalgError::Singular.into());
    }
    let mut b = Matrix::zeros(n, n);
    for (col, &w) in chosen.iter().enumerate() {
        for (k, c) in images[w].iter() {
            b.set(k, col, c.clone());
        }
    }
    let inv = b.inverse()?;
    Ok((0..n)
        .map(|j| {
            SparseVec::from_pairs(
                chosen
                    .iter()
                    .enumerate()
                    .map(|(r, &w)| (w, inv.get(r, j).clone()))
                    .filter(|(_, c)| !c.is_zero())
                    .collect(),
            )
        })
        .collect())
}

pub fn present_minimal(l: &LieAlgebra) -> Result<Presentation, MultiplierError> {
    Presentation::new(l)
}

/// `dim M(L)` together with the witnesses `R̄ ∩ F̄²` and `[F̄, R̄]`.
#[derive(Debug, Clone)]
pub struct MultiplierWitness {
    pub dim: usize,
    pub relations_in_derived: Subspace,
    pub relation_commutator: Subspace,
}

pub fn schur_multiplier(l: &LieAlgebra) -> Result<MultiplierWitness, MultiplierError> {
    let p = Presentation::new(l)?;
    let relations_in_derived = p.relations_in_derived();
    Ok(MultiplierWitness {
        dim: relations_in_derived.dim() - p.relation_commutator.dim(),
        relations_in_derived,
        relation_commutator: p.relation_commutator,
    })
}

pub fn exterior_square_dim(l: &LieAlgebra) -> Result<usize, MultiplierError> {
    Ok(Presentation::new(l)?.exterior_square_dim())
}

pub fn exterior_center(l: &LieAlgebra) -> Result<Subspace, MultiplierError> {
    Ok(Presentation::new(l)?.exterior_center())
}

pub fn is_capable(l: &LieAlgebra) -> Result<bool, MultiplierError> {
    Ok(exterior_center(l)?.is_zero())
}

/// Invariants of one algebra, as emitted by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplierReport {
    pub n: usize,
    pub m: usize,
    pub c: usize,
    pub d: usize,
    #[serde(rename = "dim_M")]
    pub dim_m: usize,
    pub dim_exterior_square: usize,
    pub dim_exterior_center: usize,
    /// Basis of `Z^∧(L)` rendered as `x`-combinations.
    pub exterior_center: Vec<String>,
    pub capable: bool,
    pub bound_e1: Option<usize>,
    pub bound_e2: Option<usize>,
    pub attains_e2: bool,
    #[serde(skip)]
    pub exterior_center_space: Subspace,
}

impl MultiplierReport {
    pub fn compute(l: &LieAlgebra) -> Result<Self, MultiplierError> {
        Self::compute_with(l, Execution::default())
    }

    pub fn compute_with(l: &LieAlgebra, exec: Execution) -> Result<Self, MultiplierError> {
        let p = Presentation::new_with(l, exec)?;
        let n = l.dim();
        let m = p.derived_dim();
        let c = p.class();
        let dim_m = p.multiplier_dim();
        let center = p.exterior_center();
        let bound_e1 = bound_e1(n, m).ok();
        let bound_e2 = bound_e2(n, m, c).ok();
        Ok(Self {
            n,
            m,
            c,
            d: n - m,
            dim_m,
            dim_exterior_square: p.exterior_square_dim(),
            dim_exterior_center: center.dim(),
            exterior_center: center.rows().iter().map(format_vector).collect(),
            capable: center.is_zero(),
            bound_e1,
            bound_e2,
            attains_e2: bound_e2 == Some(dim_m),
            exterior_center_space: center,
        })
    }
}

/// Dimension form of the criterion `N ⊆ Z^∧(L)` ⇔ `dim M(L) + dim(N ∩ L²) = dim M(L/N)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaneaCheck {
    /// `dim M(L/N)`.
    pub lhs: usize,
    /// `dim M(L) + dim(N ∩ L²)`.
    pub rhs: usize,
    pub n_in_exterior_center: bool,
    pub consistent: bool,
}

pub fn ganea_dimension_check(
    l: &LieAlgebra,
    ideal: &Subspace,
) -> Result<GaneaCheck, MultiplierError> {
    if ideal.dim() != 1 {
        return Err(MultiplierError::NotOneDimensional(ideal.dim()));
    }
    let series = l.series()?;
    if !ideal.is_subspace_of(&series.center)? {
        return Err(MultiplierError::NotCentral);
    }
    let p = Presentation::new(l)?;
    let quotient = l.quotient_by_ideal(ideal)?;
    let lhs = Presentation::new(&quotient.algebra)?.multiplier_dim();
    let rhs = p.multiplier_dim() + ideal.intersect(&series.derived())?.dim();
    let member = ideal.is_subspace_of(&p.exterior_center())?;
    Ok(GaneaCheck {
        lhs,
        rhs,
        n_in_exterior_center: member,
        consistent: (lhs == rhs) == member,
    })
}
