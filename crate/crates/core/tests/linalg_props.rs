use num_traits::{Signed, Zero};
use proptest::prelude::*;
use supervar::linalg::{
    self, PrimeField, RankMode, Rational, SparseMatrix, DEFAULT_PRIME, SECOND_PRIME,
};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

/// Sparse 10×12 rational matrices, a third of them built as a product of
/// thin factors so that low ranks are common.
fn matrix() -> impl Strategy<Value = SparseMatrix> {
    let dense = proptest::collection::vec(
        proptest::collection::vec(
            prop_oneof![3 => Just(Rational::zero()), 2 => small_rational()],
            12,
        ),
        10,
    )
    .prop_map(|rows| SparseMatrix::from_dense(&rows));
    let product = (0usize..=6).prop_flat_map(|k| {
        (
            proptest::collection::vec(proptest::collection::vec(small_rational(), k), 10),
            proptest::collection::vec(proptest::collection::vec(small_rational(), 12), k),
        )
            .prop_map(move |(a, b)| {
                if k == 0 {
                    return SparseMatrix::zeros(10, 12);
                }
                SparseMatrix::from_dense(&a).mul(&SparseMatrix::from_dense(&b))
            })
    });
    prop_oneof![2 => dense, 1 => product]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exact_and_modular_ranks_agree(m in matrix()) {
        let exact = linalg::rank(&m, RankMode::Exact);
        let p1 = linalg::rank(&m, RankMode::Modular(PrimeField::new(DEFAULT_PRIME).unwrap()));
        if p1 != exact {
            let p2 = linalg::rank(&m, RankMode::Modular(PrimeField::new(SECOND_PRIME).unwrap()));
            prop_assert_eq!(p2, exact);
        }
        prop_assert!(p1 <= exact);
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in matrix()) {
        let ker = linalg::kernel_basis(&m);
        for v in &ker {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        prop_assert_eq!(linalg::rank_of_vectors(&ker, RankMode::Exact), ker.len());
        prop_assert_eq!(linalg::rank(&m, RankMode::Exact) + ker.len(), m.cols());
    }

    #[test]
    fn modular_kernel_has_exact_dimension(m in matrix()) {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        let ker = linalg::kernel_modular(&m, &f).expect("denominators are small");
        prop_assert_eq!(ker.len(), linalg::kernel_basis(&m).len());
    }

    #[test]
    fn stored_entries_are_nonzero_and_reduced(m in matrix()) {
        for (i, j, v) in m.iter() {
            prop_assert!(i < m.rows() && j < m.cols());
            prop_assert!(!v.is_zero());
            prop_assert!(v.denom().is_positive());
            prop_assert_eq!(num_integer::Integer::gcd(v.numer(), v.denom()), num_bigint::BigInt::from(1));
        }
    }

    #[test]
    fn transpose_preserves_rank(m in matrix()) {
        prop_assert_eq!(linalg::rank(&m, RankMode::Exact), linalg::rank(&m.transpose(), RankMode::Exact));
    }

    #[test]
    fn solve_returns_solutions(m in matrix(), x in proptest::collection::vec(small_rational(), 12)) {
        let b = m.mul_vec(&x);
        let y = linalg::solve(&m, &b).unwrap().expect("consistent by construction");
        prop_assert_eq!(m.mul_vec(&y), b);
    }
}
