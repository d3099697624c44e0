//! Exact scalars and integer lattice algebra.

pub mod binomial;
pub mod lattice;
pub mod matrix;
pub mod radical;
pub mod rational;

pub use binomial::{monomial_value, solve_binomial, witness_satisfies, BinomialError, BinomialSolution, KernelCharacter};
pub use lattice::{in_rational_span, IntVec, IntegerLattice};
pub use matrix::{hnf, hnf_decompose, left_kernel_basis, primitive, rank, HermiteDecomposition, IntegerMatrix};
pub use radical::{factorize, radical_product, Radical};
pub use rational::{ExactRational, ParseRationalError};
