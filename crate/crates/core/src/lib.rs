//! Exact Schur multipliers, exterior squares and capability of finite-dimensional
//! nilpotent Lie algebras over the rationals.
//!
//! The multiplier is computed from a free presentation `L = F / R` as
//! `(R ∩ F²) / [F, R]`, with `F` truncated to a free nilpotent algebra of class
//! one more than the class of `L`.

pub mod bounds;
pub mod catalog;
pub mod dsl;
pub mod exec;
pub mod free;
pub mod lie;
pub mod linalg;
pub mod multiplier;
pub mod theorems;

pub use exec::Execution;
pub use free::{FreeNilpotentAlgebra, HallWord};
pub use lie::{LieAlgebra, LieError, Series, SeriesReport};
pub use linalg::{Matrix, Scalar, SparseVec, Subspace};
