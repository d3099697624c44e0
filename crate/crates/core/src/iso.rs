//! Graded isomorphism over the algebraic closure of Q.
//!
//! Every graded isomorphism between two algebras is diagonal, `p_i ↦ b_i p'_i`,
//! and exists iff `b_{i+j} c_ij = b_i b_j c'_ij` for all `i, j`. With equal
//! supports this is the binomial system with rows `e_{i+j} − e_i − e_j` and
//! right-hand sides `c'_ij / c_ij`, one row per support position.
//!
//! A pattern is rigid when all matrices carrying it are isomorphic. The
//! matrices with a given pattern are cut out of `(k*)^P` by the associativity
//! characters, so the pattern is rigid iff every kernel character of the
//! isomorphism system lies in the span of those characters.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::dgca::{canonical_rep, support_pattern, validate, CoeffMatrix, DgcaError, Position, SupportPattern};
use crate::exact::{
    left_kernel_basis, radical_product, solve_binomial, IntegerLattice, IntegerMatrix, IntVec, Radical,
    ExactRational,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("dimensions differ: {a} vs {b}")]
    DimMismatch { a: usize, b: usize },
    #[error("malformed witness: {0}")]
    MalformedWitness(String),
    #[error("invalid pattern: {0}")]
    InvalidPattern(DgcaError),
}

/// `A · log b = log r` over the common support, positions in graded order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoSystem {
    pub variables: usize,
    pub positions: Vec<Position>,
    pub matrix: IntegerMatrix,
    pub rhs: Vec<ExactRational>,
}

/// Rows `e_{i+j} − e_i − e_j` over `n` unknowns, one per position.
pub fn exponent_matrix(n: usize, positions: &[Position]) -> IntegerMatrix {
    let rows = positions
        .iter()
        .map(|&(i, j)| {
            let mut row = vec![BigInt::zero(); n];
            row[i + j - 1] += 1;
            row[i - 1] -= 1;
            row[j - 1] -= 1;
            row
        })
        .collect();
    IntegerMatrix::from_rows(n, rows)
}

pub fn iso_system(a: &CoeffMatrix, b: &CoeffMatrix) -> Result<IsoSystem, IsoError> {
    if a.dim() != b.dim() {
        return Err(IsoError::DimMismatch { a: a.dim(), b: b.dim() });
    }
    let pa = support_pattern(a);
    let positions: Vec<Position> = pa
        .graded_positions()
        .into_iter()
        .filter(|&(i, j)| b.is_nonzero(i, j))
        .collect();
    let rhs = positions.iter().map(|&(i, j)| b.get(i, j) / a.get(i, j)).collect();
    Ok(IsoSystem {
        variables: a.dim(),
        matrix: exponent_matrix(a.dim(), &positions),
        positions,
        rhs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// Supports differ, so no system is formed.
    SupportMismatch {
        only_in_a: Vec<Position>,
        only_in_b: Vec<Position>,
    },
    /// Kernel character over `positions` whose value is not 1.
    Monomial {
        positions: Vec<Position>,
        kernel_vector: Vec<BigInt>,
        value: ExactRational,
    },
}

impl Serialize for Obstruction {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Obstruction::SupportMismatch { only_in_a, only_in_b } => {
                let mut st = serializer.serialize_struct("Obstruction", 3)?;
                st.serialize_field("kind", "support_mismatch")?;
                st.serialize_field("only_in_a", only_in_a)?;
                st.serialize_field("only_in_b", only_in_b)?;
                st.end()
            }
            Obstruction::Monomial {
                positions,
                kernel_vector,
                value,
            } => {
                let mut st = serializer.serialize_struct("Obstruction", 4)?;
                st.serialize_field("kind", "monomial")?;
                st.serialize_field("positions", positions)?;
                st.serialize_field("kernel_vector", &IntVec(kernel_vector))?;
                st.serialize_field("value", value)?;
                st.end()
            }
        }
    }
}

/// `b_d = Π_e rhs[e]^{exponents[d−1][e]}` for each degree `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadicalWitness {
    pub rhs: Vec<ExactRational>,
    pub exponents: Vec<Vec<ExactRational>>,
}

impl RadicalWitness {
    /// All `b_d = 1`.
    pub fn trivial(n: usize) -> Self {
        RadicalWitness {
            rhs: Vec::new(),
            exponents: vec![Vec::new(); n],
        }
    }

    fn check_shape(&self) -> Result<(), IsoError> {
        if let Some(d) = self.exponents.iter().position(|row| row.len() != self.rhs.len()) {
            return Err(IsoError::MalformedWitness(format!(
                "degree {} has {} exponents for {} bases",
                d + 1,
                self.exponents[d].len(),
                self.rhs.len()
            )));
        }
        if let Some(e) = self.rhs.iter().position(ExactRational::is_zero) {
            return Err(IsoError::MalformedWitness(format!("base {e} is zero")));
        }
        Ok(())
    }

    pub fn radicals(&self) -> Result<Vec<Radical>, IsoError> {
        self.check_shape()?;
        Ok(self.exponents.iter().map(|q| radical_product(&self.rhs, q)).collect())
    }

    /// `b_d` as a rational number where it is one.
    pub fn rational_values(&self) -> Result<Vec<Option<ExactRational>>, IsoError> {
        Ok(self.radicals()?.iter().map(Radical::to_rational).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoDecision {
    pub isomorphic: bool,
    pub obstructions: Vec<Obstruction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<RadicalWitness>,
}

pub fn are_isomorphic(a: &CoeffMatrix, b: &CoeffMatrix) -> Result<IsoDecision, IsoError> {
    if a.dim() != b.dim() {
        return Err(IsoError::DimMismatch { a: a.dim(), b: b.dim() });
    }
    let (pa, pb) = (support_pattern(a), support_pattern(b));
    if pa != pb {
        return Ok(IsoDecision {
            isomorphic: false,
            obstructions: vec![Obstruction::SupportMismatch {
                only_in_a: pa.support.difference(&pb.support).copied().collect(),
                only_in_b: pb.support.difference(&pa.support).copied().collect(),
            }],
            witness: None,
        });
    }
    let system = iso_system(a, b)?;
    let sol = solve_binomial(&system.matrix, &system.rhs).expect("rhs entries are nonzero");
    let obstructions: Vec<Obstruction> = sol
        .failing()
        .map(|o| Obstruction::Monomial {
            positions: system.positions.clone(),
            kernel_vector: o.kernel_vector.clone(),
            value: o.monomial_value.clone(),
        })
        .collect();
    let witness = sol.witness_exponents.map(|exponents| RadicalWitness {
        rhs: system.rhs.clone(),
        exponents,
    });
    if let Some(w) = &witness {
        assert!(verify_witness(a, b, w)?, "solver witness failed verification");
    }
    Ok(IsoDecision {
        isomorphic: sol.solvable,
        obstructions,
        witness,
    })
}

/// Checks `b_{i+j} c_ij = b_i b_j c'_ij` for every position, as formal
/// radicals. A position that is nonzero in only one matrix fails.
pub fn verify_witness(a: &CoeffMatrix, b: &CoeffMatrix, w: &RadicalWitness) -> Result<bool, IsoError> {
    if a.dim() != b.dim() {
        return Err(IsoError::DimMismatch { a: a.dim(), b: b.dim() });
    }
    if w.exponents.len() != a.dim() {
        return Err(IsoError::MalformedWitness(format!(
            "{} degrees for dimension {}",
            w.exponents.len(),
            a.dim()
        )));
    }
    let bs = w.radicals()?;
    for (i, j) in crate::dgca::positions(a.dim()) {
        match (a.entry(i, j), b.entry(i, j)) {
            (None, None) => {}
            (Some(x), Some(y)) => {
                let lhs = bs[i + j - 1].mul(&Radical::from_rational(x));
                let rhs = bs[i - 1].mul(&bs[j - 1]).mul(&Radical::from_rational(y));
                if lhs != rhs {
                    return Ok(false);
                }
            }
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// `c'_ij = b_{i+j} c_ij / (b_i b_j)`, the matrix for which `b` is an
/// isomorphism from `C`.
pub fn transport(c: &CoeffMatrix, b: &[ExactRational]) -> CoeffMatrix {
    assert_eq!(b.len(), c.dim());
    assert!(b.iter().all(|x| !x.is_zero()), "scaling needs nonzero entries");
    let entries = c
        .entries()
        .map(|((i, j), v)| (i, j, &b[i + j - 1] * v / (&b[i - 1] * &b[j - 1])));
    validate(c.dim(), entries).expect("transport preserves validity")
}

/// Associativity characters of a pattern over its graded positions:
/// `e(j,k) + e(i,j+k) − e(i,j) − e(i+j,k)` for every triple whose four
/// positions are all in the support. Zero vectors are dropped.
pub fn associativity_lattice(p: &SupportPattern) -> IntegerLattice {
    let positions = p.graded_positions();
    let index = |i: usize, j: usize| {
        let key = (i.min(j), i.max(j));
        positions.iter().position(|&q| q == key)
    };
    let mut lattice = IntegerLattice::new(positions.len());
    let n = p.dim;
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                if i + j + k > n {
                    continue;
                }
                let slots = [index(j, k), index(i, j + k), index(i, j), index(i + j, k)];
                if slots.iter().any(Option::is_none) {
                    continue;
                }
                let mut v = vec![BigInt::zero(); positions.len()];
                for (s, sign) in slots.iter().zip([1, 1, -1, -1]) {
                    v[s.unwrap()] += sign;
                }
                if v.iter().any(|x| !x.is_zero()) {
                    lattice.push(v);
                }
            }
        }
    }
    lattice
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityReport {
    pub pattern: SupportPattern,
    pub positions: Vec<Position>,
    pub rigid: bool,
    pub obstruction_monomials: Vec<Vec<BigInt>>,
}

impl Serialize for RigidityReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct Rows<'a>(&'a [Vec<BigInt>]);
        impl Serialize for Rows<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                serializer.collect_seq(self.0.iter().map(|r| IntVec(r)))
            }
        }
        let mut st = serializer.serialize_struct("RigidityReport", 5)?;
        st.serialize_field("dim", &self.pattern.dim)?;
        st.serialize_field("support", &self.pattern.support)?;
        st.serialize_field("positions", &self.positions)?;
        st.serialize_field("rigid", &self.rigid)?;
        st.serialize_field("obstruction_monomials", &Rows(&self.obstruction_monomials))?;
        st.end()
    }
}

pub fn pattern_rigidity(p: &SupportPattern) -> Result<RigidityReport, IsoError> {
    canonical_rep(p).map_err(IsoError::InvalidPattern)?;
    let positions = p.graded_positions();
    let kernel = left_kernel_basis(&exponent_matrix(p.dim, &positions));
    let assoc = associativity_lattice(p);
    let obstruction_monomials: Vec<Vec<BigInt>> = (0..kernel.rows())
        .map(|r| kernel.row(r).to_vec())
        .filter(|u| !assoc.in_rational_span(u))
        .collect();
    Ok(RigidityReport {
        pattern: p.clone(),
        positions,
        rigid: obstruction_monomials.is_empty(),
        obstruction_monomials,
    })
}

/// Kernel characters of the isomorphism system that are not integer
/// combinations of the associativity characters. Empty for a rigid pattern
/// whose associativity lattice is saturated along the kernel.
pub fn torsion_characters(p: &SupportPattern) -> Vec<Vec<BigInt>> {
    let positions = p.graded_positions();
    let kernel = left_kernel_basis(&exponent_matrix(p.dim, &positions));
    let assoc = associativity_lattice(p);
    (0..kernel.rows())
        .map(|r| kernel.row(r).to_vec())
        .filter(|u| assoc.in_rational_span(u) && !assoc.contains(u))
        .collect()
}

/// Nonzero rational with numerator and denominator bounded by `bound`.
pub fn random_nonzero<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> ExactRational {
    let mut num = 0;
    while num == 0 {
        num = rng.gen_range(-bound..=bound);
    }
    ExactRational::new(num, rng.gen_range(1..=bound))
}

/// A random valid matrix with pattern `p`.
///
/// Values are `c_pos = Π_t s_t^{K[t][pos]}` where the rows of `K` span the
/// integer vectors orthogonal to every associativity character, and `s_t`
/// are random nonzero rationals. Every associativity character then
/// evaluates to 1, so the result is valid without rejection.
pub fn random_filling<R: Rng + ?Sized>(p: &SupportPattern, rng: &mut R) -> Result<CoeffMatrix, IsoError> {
    canonical_rep(p).map_err(IsoError::InvalidPattern)?;
    let positions = p.graded_positions();
    let assoc = associativity_lattice(p);
    let transposed = {
        let l = assoc.basis();
        let rows = (0..positions.len())
            .map(|c| (0..l.rows()).map(|r| l.get(r, c).clone()).collect())
            .collect();
        IntegerMatrix::from_rows(l.rows(), rows)
    };
    let free = left_kernel_basis(&transposed);
    let seeds: Vec<ExactRational> = (0..free.rows()).map(|_| random_nonzero(rng, 7)).collect();
    let entries = positions.iter().enumerate().map(|(pos, &(i, j))| {
        let value: ExactRational = seeds
            .iter()
            .enumerate()
            .map(|(t, s)| s.pow(free.get(t, pos)))
            .product();
        (i, j, value)
    });
    validate(p.dim, entries).map_err(IsoError::InvalidPattern)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const COUNTER8: [Position; 6] = [(2, 4), (3, 3), (2, 5), (3, 4), (3, 5), (4, 4)];

    fn q(s: &str) -> ExactRational {
        s.parse().unwrap()
    }

    fn counter8(c33: &str) -> CoeffMatrix {
        validate(
            8,
            COUNTER8.iter().map(|&(i, j)| {
                let v = if (i, j) == (3, 3) { q(c33) } else { ExactRational::one() };
                (i, j, v)
            }),
        )
        .unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn identical_matrices_have_unit_witness() {
        let c = counter8("5/3");
        let d = are_isomorphic(&c, &c).unwrap();
        assert!(d.isomorphic);
        assert!(d.obstructions.is_empty());
        let values = d.witness.unwrap().rational_values().unwrap();
        assert!(values.iter().all(|v| v.as_ref().is_some_and(ExactRational::is_one)));
    }

    #[test]
    fn counterexample_obstruction() {
        let d = are_isomorphic(&counter8("2"), &counter8("1")).unwrap();
        assert!(!d.isomorphic);
        assert!(d.witness.is_none());
        assert_eq!(
            d.obstructions,
            vec![Obstruction::Monomial {
                positions: COUNTER8.to_vec(),
                kernel_vector: ints(&[1, -1, -1, 1, 1, -1]),
                value: q("2"),
            }]
        );
    }

    #[test]
    fn support_mismatch_is_reported() {
        let a = validate(3, [(1, 1, q("1"))]).unwrap();
        let b = validate(3, [(1, 2, q("1"))]).unwrap();
        let d = are_isomorphic(&a, &b).unwrap();
        assert!(!d.isomorphic);
        assert_eq!(
            d.obstructions,
            vec![Obstruction::SupportMismatch {
                only_in_a: vec![(1, 1)],
                only_in_b: vec![(1, 2)],
            }]
        );
    }

    #[test]
    fn dimension_mismatch() {
        assert_eq!(
            are_isomorphic(&CoeffMatrix::zero(3), &CoeffMatrix::zero(4)),
            Err(IsoError::DimMismatch { a: 3, b: 4 })
        );
    }

    #[test]
    fn powers_of_two_fix_every_matrix() {
        let c = counter8("3");
        let b: Vec<ExactRational> = (1..=8).map(|i| ExactRational::from(2).powi(i)).collect();
        assert_eq!(transport(&c, &b), c);
        assert!(are_isomorphic(&c, &transport(&c, &b)).unwrap().isomorphic);
    }

    #[test]
    fn transported_matrix_is_isomorphic_with_valid_witness() {
        let entries = [(1, 1, "1"), (1, 2, "2"), (1, 3, "3"), (2, 2, "6"), (1, 4, "1"), (2, 3, "3")];
        let c = validate(5, entries.map(|(i, j, v)| (i, j, q(v)))).unwrap();
        let b = vec![q("2"), q("-3"), q("5/7"), q("1"), q("-1/2")];
        let c2 = transport(&c, &b);
        let d = are_isomorphic(&c, &c2).unwrap();
        assert!(d.isomorphic);
        let mut w = d.witness.unwrap();
        assert!(verify_witness(&c, &c2, &w).unwrap());
        if let Some(slot) = w.exponents.iter_mut().flatten().next() {
            *slot = &*slot + q("1");
        }
        assert!(!verify_witness(&c, &c2, &w).unwrap());
    }

    #[test]
    fn malformed_witness() {
        let c = CoeffMatrix::zero(3);
        assert!(matches!(
            verify_witness(&c, &c, &RadicalWitness::trivial(2)),
            Err(IsoError::MalformedWitness(_))
        ));
        let w = RadicalWitness {
            rhs: vec![q("1")],
            exponents: vec![vec![]; 3],
        };
        assert!(matches!(verify_witness(&c, &c, &w), Err(IsoError::MalformedWitness(_))));
        assert!(verify_witness(&c, &c, &RadicalWitness::trivial(3)).unwrap());
    }

    #[test]
    fn empty_pattern_is_rigid() {
        let r = pattern_rigidity(&SupportPattern::new(4, [])).unwrap();
        assert!(r.rigid);
        assert!(r.obstruction_monomials.is_empty());
    }

    #[test]
    fn counterexample_pattern_is_not_rigid() {
        let p = SupportPattern::new(8, COUNTER8);
        assert_eq!(associativity_lattice(&p).generator_count(), 0);
        let r = pattern_rigidity(&p).unwrap();
        assert!(!r.rigid);
        assert_eq!(r.positions, COUNTER8.to_vec());
        assert_eq!(r.obstruction_monomials, vec![ints(&[1, -1, -1, 1, 1, -1])]);
    }

    #[test]
    fn invalid_pattern_is_rejected() {
        let p = SupportPattern::new(4, [(1, 1), (1, 2), (1, 3)]);
        assert!(matches!(pattern_rigidity(&p), Err(IsoError::InvalidPattern(_))));
    }

    #[test]
    fn random_fillings_are_valid_with_the_pattern() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p = SupportPattern::new(6, [(1, 1), (1, 2), (1, 3), (2, 2), (1, 4), (2, 3), (1, 5), (2, 4), (3, 3)]);
        for _ in 0..10 {
            let c = random_filling(&p, &mut rng).unwrap();
            assert_eq!(support_pattern(&c), p);
        }
    }
}
