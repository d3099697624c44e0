//! Exact computations for diagonally graded commutative algebras.
//!
//! An `n`-dimensional algebra of this kind has a basis `p_1, …, p_n` with
//! `deg p_i = i` and products `p_i p_j = c_ij p_{i+j}` (zero when `i+j > n`).
//! It is determined by the symmetric coefficient matrix `C`.
//!
//! * [`exact`]: rationals, Hermite normal form, lattices, binomial systems.
//! * [`dgca`]: coefficient matrices, validation, truncation, support patterns.
//! * [`enumerate`]: all (0,1) coefficient matrices of a given dimension.
//! * [`iso`]: isomorphism decisions with certificates, pattern rigidity.
//! * [`cohomology`]: the component graph, graded 2-cocycles, extensions.
//! * [`orbits`]: automorphism tori, stabilizers and orbit dimensions.

pub mod cohomology;
pub mod dgca;
pub mod enumerate;
pub mod exact;
pub mod iso;
pub mod orbits;

pub use exact::ExactRational;
