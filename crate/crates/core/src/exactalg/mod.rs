//! Exact scalars, graded spaces, permutation signs and rational linear algebra.

mod comb;
mod graded;
mod matrix;
mod perm;
mod rational;

pub use comb::Comb;
pub use graded::GradedSpace;
pub use matrix::{annihilator, dense_inverse, dense_rank, to_dense, to_sparse, Echelon, SignedMatrix, SparseVec};
pub use perm::{bubble_sort_by_key, koszul_sign, parity, permutations, reorder_sign, subsets};
pub use rational::Rational;
