use std::sync::Arc;

use proptest::prelude::*;
use supervar::algebra::{build, Detecting, Family, LieSuperalgebra};
use supervar::cohomology;
use supervar::detecting;
use supervar::json::{self, ModuleJson};
use supervar::linalg::{self, Rational, Vector};
use supervar::module::{self, ModuleError, Supermodule};
use supervar::poly::binomial;

fn gl(m: usize, n: usize) -> Arc<LieSuperalgebra> {
    Arc::new(build(Family::GL, &[m, n]).unwrap())
}

fn e_of(f: Family, p: &[usize]) -> Arc<LieSuperalgebra> {
    Arc::new(
        detecting::assemble_detecting(Arc::new(build(f, p).unwrap()), Detecting::E)
            .unwrap()
            .0,
    )
}

fn odd_point(a: &LieSuperalgebra, c: &[i64]) -> Vector {
    let mut x = linalg::zero_vec(a.dim());
    for (k, &i) in a.odd_indices().iter().enumerate() {
        x[i] = Rational::from_integer(c[k % c.len()].into());
    }
    x
}

fn projective(m: &Supermodule, x: &[Rational]) -> Option<bool> {
    match module::is_projective_over_x(m, x) {
        Ok(b) => Some(b),
        Err(ModuleError::NonSemisimpleH) => None,
        Err(e) => panic!("{e}"),
    }
}

#[test]
fn constructors_produce_valid_modules() {
    for a in [
        gl(1, 1),
        gl(2, 1),
        Arc::new(build(Family::OSP, &[1, 2]).unwrap()),
        Arc::new(build(Family::QHAT, &[2]).unwrap()),
    ] {
        let nat = Supermodule::natural(a.clone()).unwrap();
        let triv = Supermodule::trivial(a.clone());
        let adj = Supermodule::adjoint(a.clone());
        let built = [
            nat.dual(),
            nat.parity_shift(),
            nat.direct_sum(&triv).unwrap(),
            nat.tensor(&nat.dual()).unwrap(),
            adj.clone(),
            adj.dual(),
        ];
        for m in built.iter().chain([&nat, &triv]) {
            let r = m.validate();
            assert!(
                r.is_ok(),
                "{} dims ({},{}): {:?}",
                a.display_name(),
                m.dim0(),
                m.dim1(),
                r
            );
        }
        let t = nat.tensor(&adj).unwrap();
        assert_eq!(t.dim(), nat.dim() * adj.dim());
        assert_eq!(t.dim0(), nat.dim0() * adj.dim0() + nat.dim1() * adj.dim1());
    }
}

#[test]
fn regular_module_of_e_is_valid_and_free() {
    for p in [[1usize, 1], [2, 2]] {
        let e = e_of(Family::GL, &p);
        let reg = Supermodule::exterior_regular(e.clone());
        assert!(reg.validate().is_ok());
        assert_eq!(reg.dim(), 1 << e.dim_odd());
    }
}

#[test]
fn rank_one_case_two_has_nonzero_square() {
    let g = gl(2, 2);
    for c in [
        [1i64, 0, 0, 0, 0, 0, 0, 0],
        [1, 0, 0, 0, 1, 0, 0, 0],
        [1, 2, -1, 3, 0, 1, 0, 2],
    ] {
        let x = odd_point(&g, &c);
        let r = module::rank_one(&g, &x).unwrap();
        assert_eq!(r.h, g.bracket(&x, &x).unwrap());
        assert_eq!(r.case_two, !linalg::is_zero_vec(&r.h));
    }
    let even = g.basis_vector(g.even_indices()[0]);
    assert_eq!(
        module::rank_one(&g, &even).unwrap_err(),
        ModuleError::NotOdd
    );
}

#[test]
fn rank_variety_report_is_consistent() {
    for p in [[1usize, 1], [2, 2]] {
        let e = e_of(Family::GL, &p);
        let basis: Vec<Vector> = e.odd_indices().iter().map(|&i| e.basis_vector(i)).collect();
        let nat = Supermodule::natural(e.clone()).unwrap();
        for m in [
            Supermodule::trivial(e.clone()),
            nat.clone(),
            Supermodule::exterior_regular(e.clone()),
        ] {
            let r = module::rank_variety_probe(&m, &basis, 3, 11).unwrap();
            assert_eq!(r.strata.len(), 1 << basis.len());
            assert!(r.estimated_dim <= basis.len() && r.estimated_dim <= r.estimated_dim_any);
            for s in &r.strata {
                for pt in &s.points {
                    let support = pt
                        .coords
                        .iter()
                        .filter(|c| !num_traits::Zero::is_zero(*c))
                        .count();
                    assert_eq!(support, s.size);
                    assert_eq!(
                        projective(&m, &module::combine(&basis, &pt.coords)),
                        pt.projective
                    );
                }
            }
        }
    }
}

#[test]
fn trivial_cohomology_of_e_is_polynomial() {
    for (f, p) in [
        (Family::GL, vec![1, 1]),
        (Family::GL, vec![2, 2]),
        (Family::OSP, vec![2, 2]),
        (Family::Q, vec![3]),
    ] {
        let e = e_of(f, &p);
        let r = e.dim_odd() as u64;
        let h = cohomology::cohomology_dims(&e, &Supermodule::trivial(e.clone()), 5).unwrap();
        let want: Vec<usize> = (0..=5u64)
            .map(|d| binomial(r + d - 1, d) as usize)
            .collect();
        assert_eq!(h.dims.dims, want, "{f}{p:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn projectivity_is_scale_invariant(
        c in proptest::collection::vec(-4i64..=4, 4),
        s in prop_oneof![-5i64..=-1, 1i64..=5],
    ) {
        let e = e_of(Family::GL, &[2, 2]);
        let x = odd_point(&e, &c);
        let sx: Vector = x.iter().map(|v| v * Rational::from_integer(s.into())).collect();
        let nat = Supermodule::natural(e.clone()).unwrap();
        for m in [nat.clone(), nat.tensor(&nat.dual()).unwrap(), Supermodule::exterior_regular(e.clone())] {
            prop_assert_eq!(projective(&m, &x), projective(&m, &sx));
        }
    }

    #[test]
    fn differentials_square_to_zero(
        pick in 0usize..4,
        shift in any::<bool>(),
    ) {
        let g = gl(1 + pick / 2, 1 + pick % 2);
        let nat = Supermodule::natural(g.clone()).unwrap();
        let m = if shift { nat.parity_shift() } else { nat.tensor(&nat.dual()).unwrap() };
        let r = cohomology::cohomology_dims(&g, &m, 4).unwrap();
        prop_assert!(r.d_squared_zero);
        prop_assert!(r.euler_consistent());
        for p in 0..4u32 {
            let d1 = cohomology::differential(&g, &m, p).unwrap();
            let d2 = cohomology::differential(&g, &m, p + 1).unwrap();
            prop_assert!(d2.mul(&d1).iter().next().is_none());
        }
    }
}

#[test]
fn reports_round_trip_through_json() {
    let a = build(Family::GL, &[2, 1]).unwrap();
    let d = detecting::detect(&a, None).unwrap();
    let back: detecting::DetectionReport =
        json::from_json(&json::to_sorted_string(&d).unwrap()).unwrap();
    assert_eq!(back, d);

    let e = e_of(Family::GL, &[1, 1]);
    let basis: Vec<Vector> = e.odd_indices().iter().map(|&i| e.basis_vector(i)).collect();
    let nat = Supermodule::natural(e.clone()).unwrap();
    let rv = module::rank_variety_probe(&nat, &basis, 2, 5).unwrap();
    let back: module::RankVarietyReport =
        json::from_json(&json::to_sorted_string(&rv).unwrap()).unwrap();
    assert_eq!(back, rv);

    let cmp = cohomology::avrunin_scott_compare(&e, &nat, 4, 6, 3).unwrap();
    let s = json::to_sorted_string(&cmp).unwrap();
    let back: cohomology::ComparisonReport = json::from_json(&s).unwrap();
    assert_eq!(back, cmp);
    assert_eq!(json::to_sorted_string(&back).unwrap(), s);

    let mj = ModuleJson::from(&nat.tensor(&nat.dual()).unwrap());
    let loaded = json::from_json::<ModuleJson>(&json::to_sorted_string(&mj).unwrap())
        .unwrap()
        .load()
        .unwrap();
    assert_eq!(ModuleJson::from(&loaded), mj);
    assert!(loaded.validate().is_ok());
}
