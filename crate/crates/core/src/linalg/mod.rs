//! Exact linear algebra over the rationals.
//!
//! Everything above this module is expressed in terms of [`Subspace`], which
//! keeps its basis in reduced row-echelon form. Two subspaces are equal exactly
//! when their representations are equal, so subobject comparisons elsewhere in
//! the crate are plain `==`.
//!
//! Dense matrices go through fraction-free (Bareiss) elimination. Large, sparse
//! spans (brackets inside a free nilpotent algebra) go through the incremental
//! [`EchelonBuilder`], which keeps the basis reduced at every step.

mod matrix;
mod scalar;
mod sparse;
mod subspace;

pub use matrix::{kernel_basis, rref, Matrix};
pub use scalar::{parse_scalar, scalar, scalar_ratio, Scalar};
pub use sparse::SparseVec;
pub use subspace::{kernel_of_rows, left_kernel, EchelonBuilder, QuotientCoords, Subspace};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is singular")]
    Singular,
}
