use std::collections::HashSet;

use num_traits::Zero;
use proptest::prelude::*;
use supervar::algebra::{build, Family, LieSuperalgebra};
use supervar::linalg::{self, Rational, Vector};
use supervar::tables;

fn families() -> Vec<(Family, Vec<usize>)> {
    tables::in_scope_rows(5)
}

fn row() -> impl Strategy<Value = (Family, Vec<usize>)> {
    proptest::sample::select(families())
}

/// Random homogeneous vector of parity `p`.
fn homogeneous(a: &LieSuperalgebra, p: u8, coeffs: &[i64]) -> Vector {
    let mut v = linalg::zero_vec(a.dim());
    let idx = if p == 0 {
        a.even_indices()
    } else {
        a.odd_indices()
    };
    for (k, &i) in idx.iter().enumerate() {
        v[i] = Rational::from_integer(coeffs[k % coeffs.len()].into());
    }
    v
}

fn scale(v: &[Rational], c: i64) -> Vector {
    v.iter()
        .map(|x| x * Rational::from_integer(c.into()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn super_antisymmetry_on_random_vectors(
        (f, p) in row(),
        px in 0u8..2,
        py in 0u8..2,
        cx in proptest::collection::vec(-3i64..=3, 1..7),
        cy in proptest::collection::vec(-3i64..=3, 1..7),
    ) {
        let a = build(f, &p).unwrap();
        let (x, y) = (homogeneous(&a, px, &cx), homogeneous(&a, py, &cy));
        let xy = a.bracket(&x, &y).unwrap();
        let yx = a.bracket(&y, &x).unwrap();
        let sign = if px * py == 1 { 1 } else { -1 };
        prop_assert_eq!(xy.clone(), scale(&yx, sign));
        prop_assert!(a.is_homogeneous(&xy, (px + py) % 2));
    }

    #[test]
    fn bracket_is_bilinear(
        (f, p) in row(),
        cx in proptest::collection::vec(-3i64..=3, 1..5),
        cy in proptest::collection::vec(-3i64..=3, 1..5),
        cz in proptest::collection::vec(-3i64..=3, 1..5),
        s in -3i64..=3,
    ) {
        let a = build(f, &p).unwrap();
        let x = homogeneous(&a, 1, &cx);
        let y = homogeneous(&a, 0, &cy);
        let z = homogeneous(&a, 1, &cz);
        let lhs = a.bracket(&x, &y.iter().zip(&scale(&z, s)).map(|(u, v)| u + v).collect::<Vec<_>>()).unwrap();
        let r1 = a.bracket(&x, &y).unwrap();
        let r2 = scale(&a.bracket(&x, &z).unwrap(), s);
        prop_assert_eq!(lhs, r1.iter().zip(&r2).map(|(u, v)| u + v).collect::<Vec<_>>());
    }
}

#[test]
fn parity_additivity_and_weights() {
    for (f, p) in families() {
        let a = build(f, &p).unwrap();
        for (i, j, k, _) in a.structure_constants() {
            assert_eq!(a.parity(k), (a.parity(i) + a.parity(j)) % 2, "{f}{p:?}");
        }
        // non-Cartan basis vectors are weight vectors with the stated weight
        let cartan: HashSet<usize> = a.cartan().iter().copied().collect();
        for i in (0..a.dim()).filter(|i| !cartan.contains(i)) {
            let Some(w) = a.weight(i) else { continue };
            let got = a.intrinsic_weight(i).expect("weight vector");
            let want: Vector = (0..a.cartan().len())
                .map(|c| a.pair_with_cartan(w, c))
                .collect();
            assert_eq!(got, want, "{f}{p:?} basis {i}");
        }
    }
}

#[test]
fn root_multiplicities() {
    for (f, p) in families() {
        let a = build(f, &p).unwrap();
        let rs = a.roots();
        for parity in [0u8, 1] {
            let coords: Vec<&Vector> = rs
                .all()
                .filter(|r| r.parity == parity)
                .map(|r| &r.coords)
                .collect();
            let distinct: HashSet<&Vector> = coords.iter().copied().collect();
            assert_eq!(coords.len(), distinct.len(), "{f}{p:?} parity {parity}");
        }
        // negatives pair with positives
        for r in rs.all() {
            let neg: Vector = r.coords.iter().map(|x| -x).collect();
            let found = rs.all().any(|s| s.parity == r.parity && s.coords == neg);
            // P lacks some negatives of odd roots
            assert!(found || f == Family::P, "{f}{p:?} {:?}", r.coords);
        }
        let q_extra = rs.odd_zero_weight.len();
        assert_eq!(
            q_extra > 0,
            matches!(f, Family::Q | Family::QHAT),
            "{f}{p:?}"
        );
    }
}

/// `([x,y],z) = (x,[y,z])` on all basis triples.
fn form_is_invariant(a: &LieSuperalgebra) {
    let form = a.form().expect("form stored");
    let pair = |u: &[Rational], v: &[Rational]| -> Rational {
        let fv = form.mul_vec(v);
        u.iter().zip(&fv).map(|(x, y)| x * y).sum()
    };
    let n = a.dim();
    let mut nonzero = 0;
    for i in 0..n {
        for j in 0..n {
            let ij = a.bracket(&a.basis_vector(i), &a.basis_vector(j)).unwrap();
            for k in 0..n {
                let jk = a.bracket(&a.basis_vector(j), &a.basis_vector(k)).unwrap();
                let l = pair(&ij, &a.basis_vector(k));
                let r = pair(&a.basis_vector(i), &jk);
                assert_eq!(l, r, "{} triple ({i},{j},{k})", a.display_name());
                if !l.is_zero() {
                    nonzero += 1;
                }
            }
        }
    }
    assert!(nonzero > 0);
}

#[test]
fn supertrace_form_invariance() {
    form_is_invariant(&build(Family::GL, &[2, 2]).unwrap());
    form_is_invariant(&build(Family::OSP, &[3, 2]).unwrap());
}
