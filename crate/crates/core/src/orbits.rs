//! Automorphism tori, stabilizers of cocycle lines, and orbit dimensions.
//!
//! Graded automorphisms of an algebra are the diagonal maps `p_i ↦ b_i p_i`
//! with `b_{i+j} = b_i b_j` on the support. In exponent form these relations
//! span a lattice, and the torus has dimension `m − rank`. A cocycle line
//! `[θ]` is fixed by `b` iff `b_i b_{n−i}` is constant on the support of `θ`,
//! which adds further lattice rows; the orbit dimension is the rank jump.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::cohomology::{build_graph, component_cocycle, is_cocycle, Cocycle, CohomologyError, GradedGraph};
use crate::dgca::{support_pattern, CoeffMatrix, Position};
use crate::exact::{solve_binomial, ExactRational, IntegerLattice, IntegerMatrix, KernelCharacter};
use crate::iso::exponent_matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("scaling vector has {got} entries, expected {expected}")]
    WrongLength { got: usize, expected: usize },
    #[error("b_{{{i}+{j}}} != b_{i} b_{j} at support position ({i}, {j})")]
    NotAnAutomorphism { i: usize, j: usize },
    #[error("zero entry in scaling vector at degree {0}")]
    ZeroScaling(usize),
    #[error("cocycle is zero")]
    ZeroCocycle,
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutDescription {
    pub m: usize,
    pub positions: Vec<Position>,
    pub lattice: IntegerLattice,
    pub dim_aut: usize,
    pub n_of_c: usize,
    pub t_of_c: usize,
}

/// Rows `e_{i+j} − e_i − e_j` over the support, in graded order.
pub fn aut_lattice(c: &CoeffMatrix) -> IntegerLattice {
    let positions = support_pattern(c).graded_positions();
    IntegerLattice::from_generators(c.dim(), exponent_matrix(c.dim(), &positions).row_vecs())
}

pub fn aut_description(c: &CoeffMatrix) -> AutDescription {
    let positions = support_pattern(c).graded_positions();
    let lattice = aut_lattice(c);
    let rank = lattice.rank();
    AutDescription {
        m: c.dim(),
        n_of_c: positions.len(),
        t_of_c: positions.len() - rank,
        dim_aut: c.dim() - rank,
        positions,
        lattice,
    }
}

/// Checks `b_{i+j} = b_i b_j` on the support.
pub fn check_automorphism(c: &CoeffMatrix, b: &[ExactRational]) -> Result<(), OrbitError> {
    if b.len() != c.dim() {
        return Err(OrbitError::WrongLength {
            got: b.len(),
            expected: c.dim(),
        });
    }
    if let Some(d) = b.iter().position(ExactRational::is_zero) {
        return Err(OrbitError::ZeroScaling(d + 1));
    }
    for ((i, j), _) in c.entries() {
        if b[i + j - 1] != &b[i - 1] * &b[j - 1] {
            return Err(OrbitError::NotAnAutomorphism { i, j });
        }
    }
    Ok(())
}

fn check_cocycle(c: &CoeffMatrix, theta: &Cocycle) -> Result<(), OrbitError> {
    if theta.n != c.dim() + 1 {
        return Err(CohomologyError::DimMismatch {
            matrix_dim: c.dim(),
            expected: theta.n.saturating_sub(1),
            n: theta.n,
        }
        .into());
    }
    if !is_cocycle(c, theta.n, &theta.theta) {
        return Err(CohomologyError::NotACocycle.into());
    }
    Ok(())
}

/// `(θ·b)_i = b_i b_{n−i} θ_i` for an automorphism `b` of `C`.
pub fn act_cocycle(c: &CoeffMatrix, theta: &Cocycle, b: &[ExactRational]) -> Result<Cocycle, OrbitError> {
    check_cocycle(c, theta)?;
    check_automorphism(c, b)?;
    let n = theta.n;
    let out = (1..n).map(|i| &b[i - 1] * &b[n - i - 1] * theta.get(i)).collect();
    Ok(Cocycle::new(n, out))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerInfo {
    pub stab_lattice: IntegerLattice,
    pub dim_aut: usize,
    pub dim_stab: usize,
    pub orbit_dim: usize,
}

/// Rows `(e_i + e_{n−i}) − (e_j + e_{n−j})` for `i < j` in the support of
/// `θ`, skipping zero rows.
fn line_rows(m: usize, support: &BTreeSet<usize>) -> Vec<Vec<BigInt>> {
    let n = m + 1;
    let mut rows = Vec::new();
    let deg: Vec<usize> = support.iter().copied().collect();
    for (a, &i) in deg.iter().enumerate() {
        for &j in &deg[a + 1..] {
            let mut row = vec![BigInt::zero(); m];
            row[i - 1] += 1;
            row[n - i - 1] += 1;
            row[j - 1] -= 1;
            row[n - j - 1] -= 1;
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    rows
}

pub fn stabilizer_orbit(c: &CoeffMatrix, theta: &Cocycle) -> Result<StabilizerInfo, OrbitError> {
    check_cocycle(c, theta)?;
    if theta.is_zero() {
        return Err(OrbitError::ZeroCocycle);
    }
    let aut = aut_lattice(c);
    let mut stab = aut.clone();
    for row in line_rows(c.dim(), &theta.support()) {
        stab.push(row);
    }
    let (aut_rank, stab_rank) = (aut.rank(), stab.rank());
    Ok(StabilizerInfo {
        dim_aut: c.dim() - aut_rank,
        dim_stab: c.dim() - stab_rank,
        orbit_dim: stab_rank - aut_rank,
        stab_lattice: stab,
    })
}

/// Number of nonvanishing components on which `θ` is nonzero.
pub fn v_of(graph: &GradedGraph, theta: &Cocycle) -> usize {
    graph
        .nonvanishing()
        .filter(|comp| comp.vertices.iter().any(|&v| !theta.get(v).is_zero()))
        .count()
}

/// True iff the graph has exactly one nonvanishing component.
pub fn unique_extension_class(c: &CoeffMatrix, n: usize) -> Result<bool, CohomologyError> {
    Ok(build_graph(c, n)?.nonvanishing().count() == 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionClassRow {
    /// Base vertices of the chosen nonvanishing components.
    pub components: Vec<usize>,
    pub gamma: Cocycle,
    pub v_of_gamma: usize,
    pub orbit_dim: usize,
    pub single_class_candidate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionClassReport {
    pub n: usize,
    pub u_of_c: usize,
    pub nonvanishing_components: usize,
    pub rows: Vec<ExtensionClassRow>,
    /// Subsets larger than the cap were skipped.
    pub truncated: bool,
}

/// One row per nonempty subset of nonvanishing components of size at most
/// `max_subset` (all when `None`). The representative cocycle is the sum of
/// the basis cocycles of the subset.
pub fn extension_class_analysis(
    c: &CoeffMatrix,
    n: usize,
    max_subset: Option<usize>,
) -> Result<ExtensionClassReport, OrbitError> {
    let graph = build_graph(c, n)?;
    let basis: Vec<(usize, Cocycle)> = graph
        .nonvanishing()
        .map(|comp| (comp.base_vertex, component_cocycle(n, comp)))
        .collect();
    let k = basis.len();
    let cap = max_subset.unwrap_or(k).min(k);
    assert!(k < 64, "too many components for subset enumeration");

    let mut subsets: Vec<Vec<usize>> = Vec::new();
    let mut truncated = false;
    for size in 1..=k {
        if size > cap {
            truncated = true;
            break;
        }
        combinations(k, size, &mut Vec::new(), 0, &mut subsets);
    }

    let mut rows = Vec::with_capacity(subsets.len());
    for s in subsets {
        let gamma = s
            .iter()
            .fold(Cocycle::zero(n), |acc, &t| acc.add(&basis[t].1));
        let info = stabilizer_orbit(c, &gamma)?;
        let v = s.len();
        rows.push(ExtensionClassRow {
            components: s.iter().map(|&t| basis[t].0).collect(),
            v_of_gamma: v,
            orbit_dim: info.orbit_dim,
            single_class_candidate: info.orbit_dim + 1 == v,
            gamma,
        });
    }
    Ok(ExtensionClassReport {
        n,
        u_of_c: graph.u_of_c(),
        nonvanishing_components: k,
        rows,
        truncated,
    })
}

fn combinations(k: usize, size: usize, cur: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
    if cur.len() == size {
        out.push(cur.clone());
        return;
    }
    for t in start..k {
        cur.push(t);
        combinations(k, size, cur, t + 1, out);
        cur.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitDecision {
    pub same_orbit: bool,
    pub support_mismatch: bool,
    /// Kernel characters with value different from 1.
    pub obstructions: Vec<KernelCharacter>,
}

/// Decides whether the lines `[θ]` and `[γ]` lie in one automorphism orbit,
/// i.e. whether `b_i b_{n−i} θ_i = λ γ_i` has a solution with `b` in the
/// torus and `λ ≠ 0`.
///
/// Unknowns are `b_1, …, b_m, λ`. Torus rows carry right-hand side 1 and each
/// support degree `i ≤ n − i` contributes `e_i + e_{n−i} − e_λ = γ_i / θ_i`.
pub fn same_extension_class(c: &CoeffMatrix, theta: &Cocycle, gamma: &Cocycle) -> Result<OrbitDecision, OrbitError> {
    check_cocycle(c, theta)?;
    check_cocycle(c, gamma)?;
    if theta.is_zero() || gamma.is_zero() {
        return Err(OrbitError::ZeroCocycle);
    }
    if theta.support() != gamma.support() {
        return Ok(OrbitDecision {
            same_orbit: false,
            support_mismatch: true,
            obstructions: Vec::new(),
        });
    }
    let m = c.dim();
    let n = theta.n;
    let mut rows: Vec<Vec<BigInt>> = aut_lattice(c)
        .basis()
        .row_vecs()
        .into_iter()
        .map(|mut r| {
            r.push(BigInt::zero());
            r
        })
        .collect();
    let mut rhs = vec![ExactRational::one(); rows.len()];
    for i in theta.support().into_iter().filter(|&i| 2 * i <= n) {
        let mut row = vec![BigInt::zero(); m + 1];
        row[i - 1] += 1;
        row[n - i - 1] += 1;
        row[m] -= 1;
        rows.push(row);
        rhs.push(gamma.get(i) / theta.get(i));
    }
    let system = IntegerMatrix::from_rows(m + 1, rows);
    let sol = solve_binomial(&system, &rhs).expect("right-hand sides are nonzero");
    Ok(OrbitDecision {
        same_orbit: sol.solvable,
        support_mismatch: false,
        obstructions: sol.failing().cloned().collect(),
    })
}
