//! Dense linear algebra over GF(2).
//!
//! Vectors are bit-packed into `u64` words. Matrices act on row vectors from
//! the right (`x · M`), so a matrix is just the list of images of the basis
//! vectors of its domain.

mod matrix;
mod solver;
mod vector;

pub use matrix::{row_reduce, FMatrix};
pub use solver::Solver;
pub use vector::FVector;
