//! Multiplicative binomial systems over the algebraic closure of Q.
//!
//! A system is an integer matrix `A` (one row per equation, one column per
//! unknown) together with nonzero rationals `r`, read as
//! `Π_v b_v^{A[e][v]} = r_e` for every row `e`. Because the multiplicative
//! group of an algebraically closed field is divisible, the system has a
//! solution iff every integer left-kernel vector `u` of `A` satisfies
//! `Π_e r_e^{u_e} = 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use super::lattice::IntVec;
use super::matrix::{hnf_decompose, left_kernel_basis, IntegerMatrix};
use super::radical::{radical_product, Radical};
use super::rational::ExactRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BinomialError {
    #[error("right-hand side entry {index} is zero")]
    ZeroRhsEntry { index: usize },
    #[error("system has {rows} rows but {rhs} right-hand side values")]
    LengthMismatch { rows: usize, rhs: usize },
}

/// A left-kernel character and its value on the right-hand side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelCharacter {
    pub kernel_vector: Vec<BigInt>,
    pub monomial_value: ExactRational,
}

impl Serialize for KernelCharacter {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("KernelCharacter", 2)?;
        st.serialize_field("kernel_vector", &IntVec(&self.kernel_vector))?;
        st.serialize_field("monomial_value", &self.monomial_value)?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialSolution {
    pub solvable: bool,
    /// Every canonical kernel row with its monomial value, including those
    /// equal to 1.
    pub obstructions: Vec<KernelCharacter>,
    /// `witness_exponents[v][e]`: exponent of `r_e` in `b_v`.
    pub witness_exponents: Option<Vec<Vec<ExactRational>>>,
}

impl BinomialSolution {
    /// Kernel characters whose value is not 1.
    pub fn failing(&self) -> impl Iterator<Item = &KernelCharacter> {
        self.obstructions.iter().filter(|o| !o.monomial_value.is_one())
    }
}

/// `Π_e r_e^{u_e}` with integer exponents.
pub fn monomial_value(u: &[BigInt], rhs: &[ExactRational]) -> ExactRational {
    u.iter()
        .zip(rhs)
        .filter(|(e, _)| !e.is_zero())
        .map(|(e, r)| r.pow(e))
        .product()
}

pub fn solve_binomial(a: &IntegerMatrix, rhs: &[ExactRational]) -> Result<BinomialSolution, BinomialError> {
    if rhs.len() != a.rows() {
        return Err(BinomialError::LengthMismatch {
            rows: a.rows(),
            rhs: rhs.len(),
        });
    }
    if let Some(index) = rhs.iter().position(ExactRational::is_zero) {
        return Err(BinomialError::ZeroRhsEntry { index });
    }

    let kernel = left_kernel_basis(a);
    let obstructions: Vec<KernelCharacter> = (0..kernel.rows())
        .map(|i| {
            let u = kernel.row(i).to_vec();
            let monomial_value = monomial_value(&u, rhs);
            KernelCharacter {
                kernel_vector: u,
                monomial_value,
            }
        })
        .collect();
    let solvable = obstructions.iter().all(|o| o.monomial_value.is_one());
    let witness_exponents = solvable.then(|| witness(a));

    Ok(BinomialSolution {
        solvable,
        obstructions,
        witness_exponents,
    })
}

/// Rational exponents `X` (unknowns × rows) such that `b_v = Π_e r_e^{X[v][e]}`
/// solves the system whenever it is solvable.
///
/// With `U·A = H` in Hermite form, the first `rank` rows of `U` give
/// transformed right-hand sides `r'_f = Π_e r_e^{U[f][e]}`. The triangular
/// block of `H` on its pivot columns is inverted over Q; free unknowns are
/// set to 1. Composing with `U` keeps every exponent tied to the original
/// `r_e`, and the kernel rows of `U` only contribute values that are exactly
/// 1, so the formal evaluation reproduces every equation including signs.
#[allow(clippy::needless_range_loop)]
fn witness(a: &IntegerMatrix) -> Vec<Vec<ExactRational>> {
    let dec = hnf_decompose(a);
    let rank = dec.rank();
    let vars = a.cols();
    let rows = a.rows();

    // inverse of the upper-triangular pivot block, by back substitution
    let block = |f: usize, t: usize| BigRational::from_integer(dec.form.get(f, dec.pivots[t]).clone());
    let mut inv = vec![vec![BigRational::zero(); rank]; rank];
    for col in 0..rank {
        for t in (0..rank).rev() {
            let mut acc = if t == col {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            for s in t + 1..rank {
                acc -= block(t, s) * &inv[s][col];
            }
            inv[t][col] = acc / block(t, t);
        }
    }

    let mut x = vec![vec![ExactRational::zero(); rows]; vars];
    for (t, &pivot_col) in dec.pivots.iter().enumerate() {
        for e in 0..rows {
            let mut acc = BigRational::zero();
            for (f, coeff) in inv[t].iter().enumerate() {
                let u = dec.transform.get(f, e);
                if !u.is_zero() && !coeff.is_zero() {
                    acc += coeff * BigRational::from_integer(u.clone());
                }
            }
            x[pivot_col][e] = ExactRational::from_big(acc);
        }
    }
    x
}

/// Checks that the witness exponents reproduce every equation as formal
/// radicals. Shape mismatches count as failure.
pub fn witness_satisfies(a: &IntegerMatrix, rhs: &[ExactRational], exponents: &[Vec<ExactRational>]) -> bool {
    if exponents.len() != a.cols() || rhs.len() != a.rows() || exponents.iter().any(|row| row.len() != a.rows()) {
        return false;
    }
    let values: Vec<Radical> = exponents.iter().map(|q| radical_product(rhs, q)).collect();
    (0..a.rows()).all(|e| {
        let lhs = values
            .iter()
            .enumerate()
            .filter(|(v, _)| !a.get(e, *v).is_zero())
            .fold(Radical::one(), |acc, (v, b)| {
                acc.mul(&b.pow(&BigRational::from_integer(a.get(e, v).clone())))
            });
        lhs == Radical::from_rational(&rhs[e])
    })
}
