mod common;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use dgca_core::exact::{
    hnf, in_rational_span, left_kernel_basis, rank, solve_binomial, witness_satisfies, IntegerLattice,
    IntegerMatrix,
};
use dgca_core::ExactRational;

fn matrix_strategy(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = IntegerMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r)
            .prop_map(move |rows| IntegerMatrix::from_i64_rows(c, &rows))
    })
}

fn nonzero_rational() -> impl Strategy<Value = ExactRational> {
    ((-12i64..=12).prop_filter("nonzero", |x| *x != 0), 1i64..=12).prop_map(|(n, d)| ExactRational::new(n, d))
}

fn small_primes() -> Vec<i64> {
    vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hnf_is_unimodular_and_echelon(m in matrix_strategy(6, 6, 9)) {
        let (h, u) = hnf(&m);
        prop_assert_eq!(u.mul(&m), h.clone());
        prop_assert!(u.determinant().abs().is_one());
        prop_assert!(h.is_hermite());
    }

    #[test]
    fn left_kernel_annihilates(m in matrix_strategy(6, 6, 9)) {
        let k = left_kernel_basis(&m);
        prop_assert_eq!(k.rows() + rank(&m), m.rows());
        for r in 0..k.rows() {
            prop_assert!(m.left_apply(k.row(r)).iter().all(Zero::is_zero));
            let first = k.row(r).iter().find(|x| !x.is_zero()).unwrap();
            prop_assert!(first.is_positive());
        }
    }

    #[test]
    fn span_agrees_with_rank(m in matrix_strategy(4, 5, 5), v in prop::collection::vec(-5i64..=5, 5)) {
        let cols = m.cols();
        let v: Vec<BigInt> = v.into_iter().take(cols).map(BigInt::from).collect();
        let lattice = IntegerLattice::from_generators(cols, m.row_vecs());
        let mut extended = m.clone();
        extended.push_row(v.clone());
        prop_assert_eq!(in_rational_span(&v, &lattice), rank(&extended) == rank(&m));
        for r in 0..m.rows() {
            prop_assert!(lattice.contains(m.row(r)));
        }
    }

    /// r_e = Π_v x_v^{A[e][v]} always gives a solvable system, and the
    /// witness reproduces every right-hand side exactly.
    #[test]
    fn binomial_round_trip(
        a in matrix_strategy(6, 5, 3),
        xs in prop::collection::vec(nonzero_rational(), 5),
    ) {
        let rhs: Vec<ExactRational> = (0..a.rows())
            .map(|e| (0..a.cols()).map(|v| xs[v].pow(a.get(e, v))).product())
            .collect();
        let sol = solve_binomial(&a, &rhs).unwrap();
        prop_assert!(sol.solvable);
        prop_assert!(witness_satisfies(&a, &rhs, sol.witness_exponents.as_ref().unwrap()));
    }

    /// Multiplying one right-hand side by a fresh prime breaks solvability
    /// whenever some kernel vector uses that row.
    #[test]
    fn binomial_obstruction_soundness(
        a in matrix_strategy(6, 4, 3),
        xs in prop::collection::vec(1usize..5, 4),
        row in 0usize..6,
    ) {
        let primes = small_primes();
        let base: Vec<ExactRational> = xs.iter().map(|&i| ExactRational::from(primes[i])).collect();
        let mut rhs: Vec<ExactRational> = (0..a.rows())
            .map(|e| (0..a.cols()).map(|v| base[v].pow(a.get(e, v))).product())
            .collect();
        let e = row % a.rows();
        let kernel = left_kernel_basis(&a);
        let used = (0..kernel.rows()).any(|r| !kernel.get(r, e).is_zero());
        rhs[e] = &rhs[e] * ExactRational::from(47);
        let sol = solve_binomial(&a, &rhs).unwrap();
        prop_assert_eq!(sol.solvable, !used);
        if let Some(w) = &sol.witness_exponents {
            prop_assert!(witness_satisfies(&a, &rhs, w));
        }
    }
}

#[test]
fn fixed_examples() {
    let (h, u) = hnf(&IntegerMatrix::identity(2));
    assert_eq!(h, IntegerMatrix::identity(2));
    assert_eq!(u, IntegerMatrix::identity(2));

    let (h, _) = hnf(&IntegerMatrix::from_i64_rows(3, &[vec![3, 6, 9]]));
    assert_eq!(h, IntegerMatrix::from_i64_rows(3, &[vec![3, 6, 9]]));

    assert_eq!(left_kernel_basis(&IntegerMatrix::identity(2)).rows(), 0);
    assert_eq!(left_kernel_basis(&IntegerMatrix::zeros(3, 2)), IntegerMatrix::identity(3));
}
