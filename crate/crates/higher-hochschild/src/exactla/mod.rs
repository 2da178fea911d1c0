//! Exact sparse linear algebra over ℚ.
//!
//! Everything homological in this crate bottoms out here: ranks of
//! differentials, kernels, and quotients of cycles by boundaries. There is no
//! floating point anywhere, so a dimension reported by [`rank`] is a theorem
//! about the matrix, not an estimate.

mod matrix;
mod rational;

pub use matrix::{
    axpy, kernel_basis, normalize, quotient_dim, rank, representatives, scale, Echelon, SparseRationalMatrix,
    SparseVec, Subspace, SubspaceError,
};
pub use rational::{ParseRationalError, Rational};
