//! Graded 2-cocycles of an algebra and its one-dimensional central
//! extensions.
//!
//! For `C` of dimension `n − 1`, a graded cocycle with values in degree `n`
//! is a vector `(θ_1, …, θ_{n−1})` with `θ_i = θ_{n−i}` and
//! `θ_{i+j} c_ij = θ_{j+k} c_jk` whenever `i + j + k = n`. These relations
//! are encoded by a graph on `[n − 1]`: complementary vertices are joined,
//! and so are `i + j` and `j + k` when both coefficients are nonzero. A
//! relation with exactly one nonzero coefficient forces the vertex on that
//! side to zero. On each component the cocycle is fixed by its value at one
//! vertex, so the cocycle space is read off component by component.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::dgca::{validate, CoeffMatrix, DgcaError};
use crate::exact::ExactRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("matrix has dimension {matrix_dim}, expected {expected} for extension degree {n}")]
    DimMismatch { matrix_dim: usize, expected: usize, n: usize },
    #[error("extension degree must be at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("vector is not a graded 2-cocycle")]
    NotACocycle,
    #[error(transparent)]
    Invalid(#[from] DgcaError),
}

/// `θ_1, …, θ_{n−1}`, stored at indices `0..n−1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cocycle {
    pub n: usize,
    pub theta: Vec<ExactRational>,
}

impl Cocycle {
    pub fn new(n: usize, theta: Vec<ExactRational>) -> Self {
        assert_eq!(theta.len() + 1, n, "cocycle needs n - 1 coordinates");
        Cocycle { n, theta }
    }

    pub fn zero(n: usize) -> Self {
        Cocycle::new(n, vec![ExactRational::zero(); n - 1])
    }

    /// `θ_i` for `1 ≤ i ≤ n − 1`.
    pub fn get(&self, i: usize) -> &ExactRational {
        &self.theta[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.theta.iter().all(ExactRational::is_zero)
    }

    /// Degrees with `θ_i ≠ 0`.
    pub fn support(&self) -> BTreeSet<usize> {
        (1..self.n).filter(|&i| !self.get(i).is_zero()).collect()
    }

    pub fn scaled(&self, s: &ExactRational) -> Cocycle {
        Cocycle::new(self.n, self.theta.iter().map(|t| t * s).collect())
    }

    pub fn add(&self, other: &Cocycle) -> Cocycle {
        assert_eq!(self.n, other.n);
        Cocycle::new(
            self.n,
            self.theta.iter().zip(&other.theta).map(|(a, b)| a + b).collect(),
        )
    }
}

/// Edge relation between `θ_p` and `θ_q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `p + q = n`: `θ_p = θ_q`.
    Equal,
    /// `left · θ_p = right · θ_q`, from `c_ij θ_{i+j} = c_jk θ_{j+k}`.
    Ratio { left: ExactRational, right: ExactRational },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub p: usize,
    pub q: usize,
    pub relation: Relation,
    /// `(i, j, k)` with `p = i + j`, `q = j + k`, for ratio edges.
    pub triple: Option<(usize, usize, usize)>,
}

impl Edge {
    /// Does `θ_p = a`, `θ_q = b` satisfy the relation?
    fn holds(&self, a: &ExactRational, b: &ExactRational) -> bool {
        match &self.relation {
            Relation::Equal => a == b,
            Relation::Ratio { left, right } => left * a == right * b,
        }
    }

    /// Value at the far end given value `x` at `from`.
    fn propagate(&self, from: usize, x: &ExactRational) -> ExactRational {
        match &self.relation {
            Relation::Equal => x.clone(),
            Relation::Ratio { left, right } => {
                if from == self.p {
                    x * left / right
                } else {
                    x * right / left
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    /// Every cocycle vanishes here because of a one-sided relation.
    Contractible,
    /// No forced zero, but some circuit has ratio product different from 1.
    GenericVanishing,
    GenericNonvanishing,
}

impl ComponentKind {
    pub fn is_generic(self) -> bool {
        !matches!(self, ComponentKind::Contractible)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentInfo {
    pub vertices: Vec<usize>,
    pub kind: ComponentKind,
    pub base_vertex: usize,
    /// `θ_v / θ_base` for every vertex; present iff nonvanishing.
    pub ratio_to_base: Option<BTreeMap<usize, ExactRational>>,
    pub is_tree: bool,
    /// Every off-tree edge agrees with the tree propagation. Computed for
    /// every component, independently of forced zeros.
    pub circuit_consistent: bool,
}

impl ComponentInfo {
    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn is_nonvanishing(&self) -> bool {
        self.kind == ComponentKind::GenericNonvanishing
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedGraph {
    pub n: usize,
    pub edges: Vec<Edge>,
    pub forced_zero: BTreeSet<usize>,
    pub components: Vec<ComponentInfo>,
}

impl GradedGraph {
    /// Number of generic components.
    pub fn u_of_c(&self) -> usize {
        self.components.iter().filter(|c| c.kind.is_generic()).count()
    }

    pub fn nonvanishing(&self) -> impl Iterator<Item = &ComponentInfo> {
        self.components.iter().filter(|c| c.is_nonvanishing())
    }

    pub fn component_of(&self, v: usize) -> Option<&ComponentInfo> {
        self.components.iter().find(|c| c.contains(v))
    }

    /// Unordered edge set as sorted `(min, max)` pairs.
    pub fn edge_pairs(&self) -> BTreeSet<(usize, usize)> {
        self.edges.iter().map(|e| (e.p.min(e.q), e.p.max(e.q))).collect()
    }
}

fn check_extension_dim(c: &CoeffMatrix, n: usize) -> Result<(), CohomologyError> {
    if n < 2 {
        return Err(CohomologyError::DegreeTooSmall(n));
    }
    if c.dim() + 1 != n {
        return Err(CohomologyError::DimMismatch {
            matrix_dim: c.dim(),
            expected: n - 1,
            n,
        });
    }
    Ok(())
}

/// Builds the relation graph of `C` for extension degree `n = dim C + 1`
/// and classifies its components.
pub fn build_graph(c: &CoeffMatrix, n: usize) -> Result<GradedGraph, CohomologyError> {
    check_extension_dim(c, n)?;
    let mut edges = Vec::new();
    for p in 1..n {
        let q = n - p;
        if p < q {
            edges.push(Edge {
                p,
                q,
                relation: Relation::Equal,
                triple: None,
            });
        }
    }

    let mut forced_zero = BTreeSet::new();
    for j in 1..n {
        for i in 1..n - j {
            let k = n - i - j;
            let left = c.entry(i, j);
            let right = c.entry(j, k);
            match (left, right) {
                (Some(l), Some(r)) if i < k => edges.push(Edge {
                    p: i + j,
                    q: j + k,
                    relation: Relation::Ratio {
                        left: l.clone(),
                        right: r.clone(),
                    },
                    triple: Some((i, j, k)),
                }),
                (Some(_), None) => {
                    forced_zero.insert(i + j);
                }
                (None, Some(_)) => {
                    forced_zero.insert(j + k);
                }
                _ => {}
            }
        }
    }

    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (idx, e) in edges.iter().enumerate() {
        adjacency[e.p].push(idx);
        adjacency[e.q].push(idx);
    }

    let mut component_of = vec![usize::MAX; n];
    let mut components = Vec::new();
    for base in 1..n {
        if component_of[base] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut ratio: BTreeMap<usize, ExactRational> = BTreeMap::new();
        let mut tree_edges = BTreeSet::new();
        ratio.insert(base, ExactRational::one());
        component_of[base] = id;
        let mut queue = VecDeque::from([base]);
        while let Some(v) = queue.pop_front() {
            for &eidx in &adjacency[v] {
                let e = &edges[eidx];
                let w = if e.p == v { e.q } else { e.p };
                if component_of[w] == usize::MAX {
                    component_of[w] = id;
                    let value = e.propagate(v, &ratio[&v]);
                    ratio.insert(w, value);
                    tree_edges.insert(eidx);
                    queue.push_back(w);
                }
            }
        }
        let vertices: Vec<usize> = ratio.keys().copied().collect();
        let incident: BTreeSet<usize> = vertices.iter().flat_map(|&v| adjacency[v].iter().copied()).collect();
        let circuit_consistent = incident
            .iter()
            .filter(|e| !tree_edges.contains(e))
            .all(|&eidx| {
                let e = &edges[eidx];
                e.holds(&ratio[&e.p], &ratio[&e.q])
            });
        let kind = if vertices.iter().any(|v| forced_zero.contains(v)) {
            ComponentKind::Contractible
        } else if circuit_consistent {
            ComponentKind::GenericNonvanishing
        } else {
            ComponentKind::GenericVanishing
        };
        components.push(ComponentInfo {
            is_tree: incident.len() + 1 == vertices.len(),
            vertices,
            kind,
            base_vertex: base,
            ratio_to_base: (kind == ComponentKind::GenericNonvanishing).then_some(ratio),
            circuit_consistent,
        });
    }

    Ok(GradedGraph {
        n,
        edges,
        forced_zero,
        components,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleSpace {
    /// One cocycle per nonvanishing component, equal to 1 at its base vertex.
    pub basis: Vec<Cocycle>,
    pub u_of_c: usize,
    pub dim: usize,
}

pub fn cocycle_space(c: &CoeffMatrix, n: usize) -> Result<CocycleSpace, CohomologyError> {
    let graph = build_graph(c, n)?;
    Ok(cocycle_space_of(&graph))
}

pub fn cocycle_space_of(graph: &GradedGraph) -> CocycleSpace {
    let basis: Vec<Cocycle> = graph.nonvanishing().map(|comp| component_cocycle(graph.n, comp)).collect();
    CocycleSpace {
        u_of_c: graph.u_of_c(),
        dim: basis.len(),
        basis,
    }
}

/// The basis cocycle supported on one nonvanishing component.
pub fn component_cocycle(n: usize, comp: &ComponentInfo) -> Cocycle {
    let mut theta = vec![ExactRational::zero(); n - 1];
    if let Some(ratio) = &comp.ratio_to_base {
        for (&v, r) in ratio {
            theta[v - 1] = r.clone();
        }
    }
    Cocycle::new(n, theta)
}

/// Checks every defining relation exactly. Shape mismatches give `false`.
pub fn is_cocycle(c: &CoeffMatrix, n: usize, theta: &[ExactRational]) -> bool {
    if n < 2 || c.dim() + 1 != n || theta.len() + 1 != n {
        return false;
    }
    let t = |i: usize| &theta[i - 1];
    for i in 1..n {
        if t(i) != t(n - i) {
            return false;
        }
    }
    for j in 1..n {
        for i in 1..n - j {
            let k = n - i - j;
            if t(i + j) * c.get(i, j) != t(j + k) * c.get(j, k) {
                return false;
            }
        }
    }
    true
}

/// The central extension `C_θ` of dimension `n`: `C` plus the antidiagonal
/// `c_{i,n−i} = θ_i`.
pub fn extend(c: &CoeffMatrix, theta: &Cocycle) -> Result<CoeffMatrix, CohomologyError> {
    let n = theta.n;
    check_extension_dim(c, n)?;
    if !is_cocycle(c, n, &theta.theta) {
        return Err(CohomologyError::NotACocycle);
    }
    let antidiagonal = (1..=n / 2)
        .filter(|&i| !theta.get(i).is_zero())
        .map(|i| (i, n - i, theta.get(i).clone()));
    let entries = c.entries().map(|((i, j), v)| (i, j, v.clone())).chain(antidiagonal);
    Ok(validate(n, entries)?)
}

/// Graphviz rendering. Contractible components get dashed edges and bold
/// vertex labels.
pub fn to_dot(graph: &GradedGraph) -> String {
    let mut contractible = BTreeSet::new();
    for comp in &graph.components {
        if comp.kind == ComponentKind::Contractible {
            contractible.extend(comp.vertices.iter().copied());
        }
    }
    let mut out = String::new();
    let _ = writeln!(out, "graph Gr {{");
    let _ = writeln!(out, "  // extension degree {}", graph.n);
    for v in 1..graph.n {
        if contractible.contains(&v) {
            let _ = writeln!(out, "  {v} [label=<<b>{v}</b>>];");
        } else {
            let _ = writeln!(out, "  {v} [label=\"{v}\"];");
        }
    }
    for e in &graph.edges {
        let (a, b) = (e.p.min(e.q), e.p.max(e.q));
        let mut attrs = Vec::new();
        if let Relation::Ratio { left, right } = &e.relation {
            attrs.push(format!("label=\"{left}:{right}\""));
        }
        if contractible.contains(&a) {
            attrs.push("style=dashed".to_string());
        }
        if attrs.is_empty() {
            let _ = writeln!(out, "  {a} -- {b};");
        } else {
            let _ = writeln!(out, "  {a} -- {b} [{}];", attrs.join(", "));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgca::{truncate_decompose, Position};

    fn q(s: &str) -> ExactRational {
        s.parse().unwrap()
    }

    fn ones(dim: usize, support: &[Position]) -> CoeffMatrix {
        validate(dim, support.iter().map(|&(i, j)| (i, j, ExactRational::one()))).unwrap()
    }

    fn pairs(v: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
        v.iter().copied().collect()
    }

    fn cocycle(n: usize, xs: &[i64]) -> Cocycle {
        Cocycle::new(n, xs.iter().map(|&x| ExactRational::from(x)).collect())
    }

    #[test]
    fn connected_generic_graph_in_degree_five() {
        let g = build_graph(&ones(4, &[(1, 2), (2, 2)]), 5).unwrap();
        assert_eq!(g.edge_pairs(), pairs(&[(1, 4), (2, 3), (3, 4)]));
        assert_eq!(g.components.len(), 1);
        assert_eq!(g.components[0].kind, ComponentKind::GenericNonvanishing);
        assert!(g.forced_zero.is_empty());
    }

    #[test]
    fn contractible_component_in_degree_five() {
        let g = build_graph(&ones(4, &[(1, 3), (2, 2)]), 5).unwrap();
        assert_eq!(g.edge_pairs(), pairs(&[(1, 4), (2, 3)]));
        let a = g.component_of(1).unwrap();
        assert_eq!(a.vertices, vec![1, 4]);
        assert_eq!(a.kind, ComponentKind::Contractible);
        let b = g.component_of(2).unwrap();
        assert_eq!(b.vertices, vec![2, 3]);
        assert_eq!(b.kind, ComponentKind::GenericNonvanishing);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        assert!(matches!(
            build_graph(&CoeffMatrix::zero(4), 6),
            Err(CohomologyError::DimMismatch { .. })
        ));
    }

    #[test]
    fn zero_matrix_cocycles() {
        let s = cocycle_space(&CoeffMatrix::zero(4), 5).unwrap();
        assert_eq!(s.dim, 2);
        assert_eq!(s.u_of_c, 2);
        assert_eq!(s.basis[0], cocycle(5, &[1, 0, 0, 1]));
        assert_eq!(s.basis[1], cocycle(5, &[0, 1, 1, 0]));
    }

    #[test]
    fn degree_eight_two_component_space() {
        let c = ones(7, &[(2, 4), (3, 3), (2, 5), (3, 4)]);
        let g = build_graph(&c, 8).unwrap();
        let s = cocycle_space_of(&g);
        assert_eq!(s.dim, 2);
        assert_eq!(s.basis[0], cocycle(8, &[0, 0, 1, 0, 1, 0, 0]));
        assert_eq!(s.basis[1], cocycle(8, &[0, 0, 0, 1, 0, 0, 0]));
        for v in [1, 2, 6, 7] {
            assert_eq!(g.component_of(v).unwrap().kind, ComponentKind::Contractible);
        }
        assert_eq!(g.component_of(4).unwrap().vertices, vec![4]);
    }

    #[test]
    fn forced_zero_kills_one_component() {
        let s = cocycle_space(&ones(4, &[(1, 3), (2, 2)]), 5).unwrap();
        assert_eq!(s.dim, 1);
        assert_eq!(s.basis[0].support(), [2, 3].into_iter().collect());
    }

    #[test]
    fn circuit_in_degree_nine() {
        let support = [(1, 4), (2, 3), (1, 6), (3, 4), (2, 6), (4, 4)];
        let g = build_graph(&ones(8, &support), 9).unwrap();
        for e in [(5, 8), (5, 7), (7, 8)] {
            assert!(g.edge_pairs().contains(&e));
        }
        let comp = g.component_of(5).unwrap();
        assert!(comp.contains(7) && comp.contains(8));
        assert!(!comp.is_tree);
        assert!(comp.circuit_consistent);

        // c14·c26·c43 = 2 while c44·c61·c32 = 1 breaks the circuit.
        let broken = validate(
            8,
            support.iter().map(|&(i, j)| {
                let v = if (i, j) == (1, 4) { q("2") } else { ExactRational::one() };
                (i, j, v)
            }),
        )
        .unwrap();
        let g = build_graph(&broken, 9).unwrap();
        assert!(!g.component_of(5).unwrap().circuit_consistent);
    }

    #[test]
    fn cocycle_checks() {
        let z = CoeffMatrix::zero(4);
        assert!(is_cocycle(&z, 5, &cocycle(5, &[0, 0, 0, 0]).theta));
        assert!(is_cocycle(&z, 5, &cocycle(5, &[1, 0, 0, 1]).theta));
        assert!(!is_cocycle(&z, 5, &cocycle(5, &[1, 0, 0, 2]).theta));
        assert!(!is_cocycle(&z, 5, &cocycle(4, &[1, 0, 1]).theta));
    }

    #[test]
    fn extension_by_zero_pads() {
        let c = ones(4, &[(1, 2), (2, 2)]);
        assert_eq!(extend(&c, &Cocycle::zero(5)).unwrap(), c.padded(5));
    }

    #[test]
    fn extension_rebuilds_the_counterexample() {
        let c = ones(7, &[(2, 4), (3, 3), (2, 5), (3, 4)]);
        let e = extend(&c, &cocycle(8, &[0, 0, 1, 1, 1, 0, 0])).unwrap();
        assert_eq!(e, ones(8, &[(2, 4), (3, 3), (2, 5), (3, 4), (3, 5), (4, 4)]));
        let (bar, theta) = truncate_decompose(&e);
        assert_eq!(bar, c);
        assert_eq!(theta, cocycle(8, &[0, 0, 1, 1, 1, 0, 0]));
    }

    #[test]
    fn extension_rejects_non_cocycles() {
        let c = CoeffMatrix::zero(4);
        assert_eq!(
            extend(&c, &cocycle(5, &[1, 0, 0, 2])),
            Err(CohomologyError::NotACocycle)
        );
    }

    #[test]
    fn dot_marks_contractible_parts() {
        let g = build_graph(&ones(4, &[(1, 3), (2, 2)]), 5).unwrap();
        let dot = to_dot(&g);
        assert!(dot.contains("1 -- 4 [style=dashed];"));
        assert!(dot.contains("2 -- 3;"));
        assert!(dot.contains("<b>4</b>"));
        assert!(!dot.contains("<b>2</b>"));
    }
}
