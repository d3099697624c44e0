//! Integer lattices given by generating rows.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use super::matrix::{hnf_decompose, IntegerMatrix};

/// Sublattice of `Z^ambient_dim` spanned by the rows of `basis`.
///
/// The rows are generators, not necessarily independent; [`rank`](Self::rank)
/// is the dimension of their rational span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerLattice {
    ambient_dim: usize,
    basis: IntegerMatrix,
}

impl IntegerLattice {
    pub fn new(ambient_dim: usize) -> Self {
        IntegerLattice {
            ambient_dim,
            basis: IntegerMatrix::zeros(0, ambient_dim),
        }
    }

    pub fn from_generators(ambient_dim: usize, rows: Vec<Vec<BigInt>>) -> Self {
        IntegerLattice {
            ambient_dim,
            basis: IntegerMatrix::from_rows(ambient_dim, rows),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &IntegerMatrix {
        &self.basis
    }

    pub fn generator_count(&self) -> usize {
        self.basis.rows()
    }

    /// Appends a generator. Zero vectors are kept; they do not change the rank.
    pub fn push(&mut self, v: Vec<BigInt>) {
        self.basis.push_row(v);
    }

    pub fn rank(&self) -> usize {
        hnf_decompose(&self.basis).rank()
    }

    /// Lattice spanned by the generators of both.
    pub fn join(&self, other: &IntegerLattice) -> IntegerLattice {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut out = self.clone();
        for r in 0..other.basis.rows() {
            out.push(other.basis.row(r).to_vec());
        }
        out
    }

    pub fn in_rational_span(&self, v: &[BigInt]) -> bool {
        in_rational_span(v, self)
    }

    /// True iff `v` is an integer combination of the generators.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector length differs from ambient dimension");
        let dec = hnf_decompose(&self.basis);
        let mut rest = v.to_vec();
        let mut t = 0;
        for col in 0..self.ambient_dim {
            if t < dec.pivots.len() && dec.pivots[t] == col {
                let pivot = dec.form.get(t, col);
                if !(&rest[col] % pivot).is_zero() {
                    return false;
                }
                let q = &rest[col] / pivot;
                for (x, h) in rest.iter_mut().zip(dec.form.row(t)) {
                    *x -= &q * h;
                }
                t += 1;
            } else if !rest[col].is_zero() {
                return false;
            }
        }
        true
    }
}

/// True iff `v` lies in the rational span of the lattice generators.
pub fn in_rational_span(v: &[BigInt], lattice: &IntegerLattice) -> bool {
    assert_eq!(v.len(), lattice.ambient_dim, "vector length differs from ambient dimension");
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    let before = lattice.rank();
    let mut extended = lattice.basis.clone();
    extended.push_row(v.to_vec());
    hnf_decompose(&extended).rank() == before
}

fn serialize_int<S: SerializeSeq>(seq: &mut S, x: &BigInt) -> Result<(), S::Error> {
    match i64::try_from(x) {
        Ok(small) => seq.serialize_element(&small),
        Err(_) => seq.serialize_element(&x.to_string()),
    }
}

/// Integer vector as a JSON array; entries outside `i64` become strings.
pub struct IntVec<'a>(pub &'a [BigInt]);

impl Serialize for IntVec<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for x in self.0 {
            serialize_int(&mut seq, x)?;
        }
        seq.end()
    }
}

impl Serialize for IntegerMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows()))?;
        for r in 0..self.rows() {
            seq.serialize_element(&IntVec(self.row(r)))?;
        }
        seq.end()
    }
}

impl Serialize for IntegerLattice {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("IntegerLattice", 2)?;
        st.serialize_field("ambient_dim", &self.ambient_dim)?;
        st.serialize_field("basis", &self.basis)?;
        st.end()
    }
}
