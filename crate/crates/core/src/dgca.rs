//! Coefficient matrices and the algebras they define.
//!
//! Entries are stored sparsely on the upper triangle `i ≤ j` with
//! `i + j ≤ n`; lookups with `i > j` are swapped, and anything absent is
//! zero. Construction always goes through [`validate`], so a
//! [`CoeffMatrix`] value is associative by construction.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cohomology::Cocycle;
use crate::exact::ExactRational;

/// Index pair `(i, j)` with `i ≤ j`.
pub type Position = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "error")]
pub enum DgcaError {
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("index ({i}, {j}) out of range for dimension {dim}")]
    IndexOutOfRange { i: usize, j: usize, dim: usize },
    #[error("entry ({i}, {j}) is zero; zero entries are represented by absence")]
    ZeroEntrySupplied { i: usize, j: usize },
    #[error("entry ({i}, {j}) lies above the antidiagonal of dimension {dim}")]
    SupportAboveAntidiagonal { i: usize, j: usize, dim: usize },
    #[error("entry ({i}, {j}) given twice with different values")]
    ConflictingDuplicate { i: usize, j: usize },
    #[error("associativity fails at (i, j, k) = ({i}, {j}, {k})")]
    AssociativityViolation { i: usize, j: usize, k: usize },
}

fn ordered(i: usize, j: usize) -> Position {
    if i <= j {
        (i, j)
    } else {
        (j, i)
    }
}

/// All storable positions for dimension `n`, grouped by `i + j` ascending
/// and then by `i`.
pub fn positions(n: usize) -> Vec<Position> {
    let mut out = Vec::new();
    for level in 2..=n {
        for i in 1..=level / 2 {
            out.push((i, level - i));
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoeffMatrix {
    dim: usize,
    entries: BTreeMap<Position, ExactRational>,
}

/// Checks `c_jk · c_{i,j+k} = c_ij · c_{i+j,k}` over all triples with
/// `i + j + k ≤ n` and reports the first failing triple in lexicographic
/// order.
fn check_associativity<F>(n: usize, get: F) -> Result<(), DgcaError>
where
    F: Fn(usize, usize) -> ExactRational,
{
    for i in 1..=n {
        for j in 1..=n.saturating_sub(i + 1) {
            for k in 1..=n.saturating_sub(i + j) {
                let lhs = get(j, k) * get(i, j + k);
                let rhs = get(i, j) * get(i + j, k);
                if lhs != rhs {
                    return Err(DgcaError::AssociativityViolation { i, j, k });
                }
            }
        }
    }
    Ok(())
}

/// Builds a coefficient matrix from raw `(i, j, value)` triples.
///
/// Pairs with `i > j` are read as `(j, i)`. Repeated pairs must carry equal
/// values.
pub fn validate<I>(dim: usize, raw_entries: I) -> Result<CoeffMatrix, DgcaError>
where
    I: IntoIterator<Item = (usize, usize, ExactRational)>,
{
    if dim == 0 {
        return Err(DgcaError::ZeroDimension);
    }
    let mut entries = BTreeMap::new();
    for (i, j, value) in raw_entries {
        if i == 0 || j == 0 || i > dim || j > dim {
            return Err(DgcaError::IndexOutOfRange { i, j, dim });
        }
        let (i, j) = ordered(i, j);
        if value.is_zero() {
            return Err(DgcaError::ZeroEntrySupplied { i, j });
        }
        if i + j > dim {
            return Err(DgcaError::SupportAboveAntidiagonal { i, j, dim });
        }
        match entries.get(&(i, j)) {
            Some(existing) if existing != &value => {
                return Err(DgcaError::ConflictingDuplicate { i, j });
            }
            Some(_) => {}
            None => {
                entries.insert((i, j), value);
            }
        }
    }
    let m = CoeffMatrix { dim, entries };
    check_associativity(dim, |a, b| m.get(a, b))?;
    Ok(m)
}

impl CoeffMatrix {
    pub fn zero(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        CoeffMatrix {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c_ij`, zero when absent or out of range.
    pub fn get(&self, i: usize, j: usize) -> ExactRational {
        self.entry(i, j).cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&ExactRational> {
        self.entries.get(&ordered(i, j))
    }

    pub fn is_nonzero(&self, i: usize, j: usize) -> bool {
        self.entries.contains_key(&ordered(i, j))
    }

    /// Stored entries in `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = (Position, &ExactRational)> {
        self.entries.iter().map(|(&p, v)| (p, v))
    }

    /// Number of nonzero entries with `i ≤ j`.
    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero_one(&self) -> bool {
        self.entries.values().all(ExactRational::is_one)
    }

    /// The matrix padded with zeros to a larger dimension.
    pub fn padded(&self, dim: usize) -> CoeffMatrix {
        assert!(dim >= self.dim);
        CoeffMatrix {
            dim,
            entries: self.entries.clone(),
        }
    }

    pub(crate) fn from_parts_unchecked(dim: usize, entries: BTreeMap<Position, ExactRational>) -> Self {
        CoeffMatrix { dim, entries }
    }
}

/// `p_i · p_j = c_ij p_{i+j}`: the coefficient and target degree, or
/// `(0, None)` when `i + j > n`.
pub fn multiply_basis(c: &CoeffMatrix, i: usize, j: usize) -> (ExactRational, Option<usize>) {
    assert!(i >= 1 && j >= 1 && i <= c.dim && j <= c.dim, "basis index out of range");
    if i + j > c.dim {
        return (ExactRational::zero(), None);
    }
    (c.get(i, j), Some(i + j))
}

/// Element of the graded space, coordinate `i − 1` holding the coefficient
/// of `p_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedVector {
    pub coords: Vec<ExactRational>,
}

impl GradedVector {
    pub fn zero(dim: usize) -> Self {
        GradedVector {
            coords: vec![ExactRational::zero(); dim],
        }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.coords[i - 1] = ExactRational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// Product of two arbitrary elements, extended bilinearly.
pub fn multiply(c: &CoeffMatrix, x: &GradedVector, y: &GradedVector) -> GradedVector {
    let n = c.dim();
    assert!(x.dim() == n && y.dim() == n, "graded vector of wrong dimension");
    let mut out = GradedVector::zero(n);
    for ((i, j), cij) in c.entries() {
        let mut add = |a: usize, b: usize| {
            let xa = &x.coords[a - 1];
            let yb = &y.coords[b - 1];
            if !xa.is_zero() && !yb.is_zero() {
                out.coords[i + j - 1] = &out.coords[i + j - 1] + &(xa * yb * cij);
            }
        };
        add(i, j);
        if i != j {
            add(j, i);
        }
    }
    out
}

/// Splits `C` into its truncation (entries with `i + j < n`) and the
/// antidiagonal cocycle `θ_i = c_{i,n−i}`.
pub fn truncate_decompose(c: &CoeffMatrix) -> (CoeffMatrix, Cocycle) {
    let n = c.dim;
    assert!(n >= 2, "truncation needs dimension at least 2");
    let entries = c
        .entries
        .iter()
        .filter(|((i, j), _)| i + j < n)
        .map(|(&p, v)| (p, v.clone()))
        .collect();
    let theta = (1..n).map(|i| c.get(i, n - i)).collect();
    (
        CoeffMatrix::from_parts_unchecked(n - 1, entries),
        Cocycle::new(n, theta),
    )
}

/// Degrees of a minimal generating set: `k` such that no product lands on
/// `p_k`.
pub fn generators(c: &CoeffMatrix) -> BTreeSet<usize> {
    let mut hit = BTreeSet::new();
    for ((i, j), _) in c.entries() {
        hit.insert(i + j);
    }
    (1..=c.dim).filter(|k| !hit.contains(k)).collect()
}

/// Positions of the nonzero entries. Ordered by dimension, then
/// lexicographically on the sorted position list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SupportPattern {
    pub dim: usize,
    pub support: BTreeSet<Position>,
}

impl SupportPattern {
    pub fn new(dim: usize, support: impl IntoIterator<Item = Position>) -> Self {
        SupportPattern {
            dim,
            support: support.into_iter().map(|(i, j)| ordered(i, j)).collect(),
        }
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.support.contains(&ordered(i, j))
    }

    /// Support positions sorted by `(i + j, i)`.
    pub fn graded_positions(&self) -> Vec<Position> {
        let mut v: Vec<Position> = self.support.iter().copied().collect();
        v.sort_by_key(|&(i, j)| (i + j, i));
        v
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }
}

pub fn support_pattern(c: &CoeffMatrix) -> SupportPattern {
    SupportPattern {
        dim: c.dim,
        support: c.entries.keys().copied().collect(),
    }
}

/// The (0,1)-matrix with ones exactly on the pattern.
pub fn canonical_rep(p: &SupportPattern) -> Result<CoeffMatrix, DgcaError> {
    validate(
        p.dim,
        p.support.iter().map(|&(i, j)| (i, j, ExactRational::one())),
    )
}

/// One stored entry in the matrix JSON document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDoc {
    pub i: usize,
    pub j: usize,
    pub value: ExactRational,
}

/// `{"dim": n, "entries": [{"i", "j", "value"}...]}` with `i ≤ j` and
/// canonical rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub dim: usize,
    pub entries: Vec<EntryDoc>,
}

impl From<&CoeffMatrix> for MatrixDoc {
    fn from(c: &CoeffMatrix) -> Self {
        MatrixDoc {
            dim: c.dim,
            entries: c
                .entries()
                .map(|((i, j), v)| EntryDoc {
                    i,
                    j,
                    value: v.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<MatrixDoc> for CoeffMatrix {
    type Error = DgcaError;

    fn try_from(doc: MatrixDoc) -> Result<Self, DgcaError> {
        validate(doc.dim, doc.entries.into_iter().map(|e| (e.i, e.j, e.value)))
    }
}

impl Serialize for CoeffMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MatrixDoc::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CoeffMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let doc = MatrixDoc::deserialize(deserializer)?;
        CoeffMatrix::try_from(doc).map_err(serde::de::Error::custom)
    }
}
