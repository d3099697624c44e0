mod common;

use rand::seq::SliceRandom;
use rand::Rng;

use common::oracle::{cocycle_relations, dot, nullspace, rank};
use common::{ones, q, rng};
use dgca_core::cohomology::{
    build_graph, cocycle_space, cocycle_space_of, extend, is_cocycle, to_dot, Cocycle, ComponentKind,
};
use dgca_core::dgca::{canonical_rep, multiply_basis, support_pattern, truncate_decompose, validate, CoeffMatrix};
use dgca_core::enumerate::enumerate_patterns;
use dgca_core::iso::{random_filling, random_nonzero};
use dgca_core::ExactRational;

fn zero_one_matrices(max_dim: usize) -> Vec<CoeffMatrix> {
    (1..=max_dim)
        .flat_map(|n| enumerate_patterns(n, 1).unwrap())
        .map(|p| canonical_rep(&p).unwrap())
        .collect()
}

/// The propagation basis spans exactly the dense nullspace of all relations.
fn assert_matches_oracle(c: &CoeffMatrix) {
    let n = c.dim() + 1;
    let relations = cocycle_relations(c, n);
    let expected = nullspace(&relations, n - 1);
    let space = cocycle_space(c, n).unwrap();
    assert_eq!(space.dim, expected.len(), "dimension differs for {c:?}");
    let basis: Vec<Vec<ExactRational>> = space.basis.iter().map(|b| b.theta.clone()).collect();
    for b in &basis {
        assert!(relations.iter().all(|r| dot(r, b).is_zero()), "{b:?} is not a cocycle of {c:?}");
    }
    assert_eq!(rank(&basis), basis.len());
}

#[test]
fn oracle_agrees_on_all_zero_one_patterns() {
    for c in zero_one_matrices(8) {
        assert_matches_oracle(&c);
    }
}

#[test]
fn oracle_agrees_on_random_rational_matrices() {
    let mut rng = rng(11);
    let pool: Vec<_> = (3..=8).flat_map(|n| enumerate_patterns(n, 1).unwrap()).collect();
    for _ in 0..50 {
        let p = pool.choose(&mut rng).unwrap();
        assert_matches_oracle(&random_filling(p, &mut rng).unwrap());
    }
}

#[test]
fn cocycle_dimension_bounded_by_generic_components() {
    for c in zero_one_matrices(9) {
        let g = build_graph(&c, c.dim() + 1).unwrap();
        let s = cocycle_space_of(&g);
        assert!(s.dim <= s.u_of_c);
        for comp in &g.components {
            if comp.kind.is_generic() {
                assert_eq!(comp.kind, ComponentKind::GenericNonvanishing, "{c:?}");
            }
            if comp.kind.is_generic() && comp.is_tree {
                assert!(comp.circuit_consistent);
            }
        }
        if g.components.iter().filter(|c| c.kind.is_generic()).all(|c| c.is_tree) {
            assert_eq!(s.dim, s.u_of_c);
        }
    }
}

#[test]
fn adjacent_vertices_sum_to_at_least_n() {
    for c in zero_one_matrices(8) {
        let g = build_graph(&c, c.dim() + 1).unwrap();
        for (p, q) in g.edge_pairs() {
            assert!(p != q && p + q >= g.n);
        }
    }
}

#[test]
fn cocycles_are_colinear_on_components() {
    let mut rng = rng(5);
    let pool: Vec<_> = (3..=8).flat_map(|n| enumerate_patterns(n, 1).unwrap()).collect();
    let mut pairs = 0;
    while pairs < 200 {
        let p = pool.choose(&mut rng).unwrap();
        let c = random_filling(p, &mut rng).unwrap();
        let n = c.dim() + 1;
        let g = build_graph(&c, n).unwrap();
        let space = cocycle_space_of(&g);
        if space.dim == 0 {
            continue;
        }
        let combo = |rng: &mut rand_chacha::ChaCha8Rng| {
            space.basis.iter().fold(Cocycle::zero(n), |acc, b| {
                let s = if rng.gen_bool(0.2) {
                    ExactRational::zero()
                } else {
                    random_nonzero(rng, 9)
                };
                acc.add(&b.scaled(&s))
            })
        };
        let theta = combo(&mut rng);
        let gamma = combo(&mut rng);
        assert!(is_cocycle(&c, n, &theta.theta) && is_cocycle(&c, n, &gamma.theta));
        for comp in &g.components {
            for &a in &comp.vertices {
                for &b in &comp.vertices {
                    assert_eq!(theta.get(a) * gamma.get(b), theta.get(b) * gamma.get(a));
                }
            }
        }
        pairs += 1;
    }
}

#[test]
fn truncation_round_trip_on_all_patterns() {
    for c in zero_one_matrices(10) {
        if c.dim() < 2 {
            continue;
        }
        let (bar, theta) = truncate_decompose(&c);
        assert_eq!(extend(&bar, &theta).unwrap(), c);
    }
    let mut rng = rng(3);
    for n in 2..=8 {
        for p in enumerate_patterns(n, 1).unwrap() {
            let c = random_filling(&p, &mut rng).unwrap();
            let (bar, theta) = truncate_decompose(&c);
            assert_eq!(extend(&bar, &theta).unwrap(), c);
        }
    }
}

#[test]
fn random_fillings_associate() {
    let mut rng = rng(17);
    for n in 1..=8 {
        for p in enumerate_patterns(n, 1).unwrap() {
            let c = random_filling(&p, &mut rng).unwrap();
            assert_eq!(support_pattern(&c), p);
            for i in 1..=n {
                for j in 1..=n {
                    for k in 1..=n {
                        if i + j + k > n {
                            continue;
                        }
                        let (a, _) = multiply_basis(&c, j, k);
                        let (b, _) = multiply_basis(&c, i, j + k);
                        let (x, _) = multiply_basis(&c, i, j);
                        let (y, _) = multiply_basis(&c, i + j, k);
                        assert_eq!(a * b, x * y);
                    }
                }
            }
        }
    }
}

#[test]
fn every_pattern_has_a_nonvanishing_component() {
    let mut counterexamples = Vec::new();
    for c in zero_one_matrices(9) {
        if build_graph(&c, c.dim() + 1).unwrap().nonvanishing().count() == 0 {
            counterexamples.push(support_pattern(&c));
        }
    }
    assert!(counterexamples.is_empty(), "{counterexamples:?}");
}

#[test]
fn seven_dimensional_cocycle_space() {
    let c = ones(7, &[(2, 4), (3, 3), (2, 5), (3, 4)]);
    let s = cocycle_space(&c, 8).unwrap();
    assert_eq!(s.dim, 2);
    for b in &s.basis {
        assert!(b.get(1).is_zero() && b.get(2).is_zero() && b.get(6).is_zero() && b.get(7).is_zero());
        assert_eq!(b.get(3), b.get(5));
    }
    assert_eq!(s.basis[0].support(), [3, 5].into_iter().collect());
    assert_eq!(s.basis[1].support(), [4].into_iter().collect());
}

#[test]
fn vanishing_component_with_rational_values() {
    let support = [(1, 4), (2, 3), (1, 6), (3, 4), (2, 6), (4, 4)];
    let c = validate(
        8,
        support.iter().map(|&(i, j)| (i, j, if (i, j) == (2, 6) { q("3") } else { q("1") })),
    )
    .unwrap();
    let g = build_graph(&c, 9).unwrap();
    let circuit = g.component_of(7).unwrap();
    assert!(!circuit.circuit_consistent);
    assert_matches_oracle(&c);
}

#[test]
fn dot_export_shape() {
    let g = build_graph(&ones(4, &[(1, 2), (2, 2)]), 5).unwrap();
    let dot = to_dot(&g);
    assert!(dot.starts_with("graph Gr {"));
    assert!(dot.contains("3 -- 4 [label=\"1:1\"];"));
    assert!(!dot.contains("dashed"));
}
