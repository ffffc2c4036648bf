mod common;

use common::*;
use dingstab_core::exact::{lp_minimize, LpOutcome, LpProblem, RatVector, Rational};
use dingstab_core::moments::{moment_data, simplex_moments};
use dingstab_core::polytope::{Simplex, VPolytope};
use dingstab_core::stability::{mabuchi_constant, Analysis, PLConvexFunction};
use proptest::prelude::*;

fn pt() -> impl Strategy<Value = [Rational; 2]> {
    ((-9i64..=9, 1i64..=4), (-9i64..=9, 1i64..=4))
        .prop_map(|((a, b), (c, d))| [Rational::new(a, b), Rational::new(c, d)])
}

#[test]
fn slab_oracle_on_unit_triangle() {
    let z = Rational::zero;
    let o = Rational::one;
    let t = [[z(), z()], [o(), z()], [z(), o()]];
    assert_eq!(triangle_monomial(&t, 0, 0), Rational::new(1, 2));
    assert_eq!(triangle_monomial(&t, 1, 0), Rational::new(1, 6));
    assert_eq!(triangle_monomial(&t, 1, 1), Rational::new(1, 24));
    assert_eq!(triangle_monomial(&t, 0, 2), Rational::new(1, 12));
}

#[test]
fn brute_force_lp_on_a_square() {
    let rows = vec![
        (RatVector::from_ints(&[1, 0]), Rational::one()),
        (RatVector::from_ints(&[-1, 0]), Rational::one()),
        (RatVector::from_ints(&[0, 1]), Rational::one()),
        (RatVector::from_ints(&[0, -1]), Rational::one()),
    ];
    let c = RatVector::from_ints(&[1, 2]);
    assert_eq!(brute_force_lp(&c, &rows), Some(Rational::from(-3)));
    let mut bad = rows.clone();
    bad.push((RatVector::from_ints(&[1, 1]), Rational::from(-3)));
    assert_eq!(brute_force_lp(&c, &bad), None);
}

#[test]
fn analysis_of_a_catalog_file() {
    let p = from_fan(&[&[1, 0], &[0, 1], &[-1, -1], &[1, 1]]);
    let a = Analysis::new(p.clone()).unwrap();
    assert_eq!(a.mabuchi().0, Rational::new(5, 11));
    assert_eq!(moment_data(&p).vol, Rational::from(4));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn triangle_moments_match_slab_integration(a in pt(), b in pt(), c in pt()) {
        let cross = (&b[0] - &a[0]) * (&c[1] - &a[1]) - (&b[1] - &a[1]) * (&c[0] - &a[0]);
        prop_assume!(!cross.is_zero());
        let t = [a, b, c];
        let s = Simplex::new(t.iter().map(|p| RatVector::new(p.to_vec())).collect()).unwrap();
        let m = simplex_moments(&s);
        prop_assert_eq!(&m.vol, &triangle_monomial(&t, 0, 0));
        prop_assert_eq!(&m.m1[0], &triangle_monomial(&t, 1, 0));
        prop_assert_eq!(&m.m1[1], &triangle_monomial(&t, 0, 1));
        prop_assert_eq!(m.m2.get(0, 1), &triangle_monomial(&t, 1, 1));
        prop_assert_eq!(m.m2.get(1, 1), &triangle_monomial(&t, 0, 2));
    }

    #[test]
    fn simplex_lp_matches_basic_solutions(
        c in prop::collection::vec(-5i64..=5, 2),
        extra in prop::collection::vec((-4i64..=4, -4i64..=4, -3i64..=6), 1..5),
        bound in 1i64..=5,
    ) {
        let mut rows = Vec::new();
        for i in 0..2 {
            rows.push((RatVector::unit(2, i), Rational::from(bound)));
            rows.push((RatVector::unit(2, i).neg(), Rational::from(bound)));
        }
        for (x, y, b) in extra {
            rows.push((RatVector::from_ints(&[x, y]), Rational::from(b)));
        }
        let c = RatVector::from_ints(&c);
        let lp = rows.iter().fold(LpProblem::new(c.clone()), |lp, (r, b)| lp.le(r.clone(), b.clone()));
        let got = lp_minimize(&lp).unwrap();
        match brute_force_lp(&c, &rows) {
            Some(v) => prop_assert_eq!(got.value(), Some(&v)),
            None => prop_assert_eq!(got, LpOutcome::Infeasible),
        }
    }

    #[test]
    fn mabuchi_constant_survives_unimodular_maps(seed in 0u64..1000) {
        let p: VPolytope = from_fan(&[&[1, 0], &[0, 1], &[-1, -1], &[1, 1], &[-1, 0]]);
        let u = random_unimodular(&mut rng(seed), 2);
        let q = p.transform(&u).unwrap();
        prop_assert_eq!(mabuchi_constant(&q).unwrap().0, Rational::new(304, 409));
    }

    #[test]
    fn ding_invariant_is_additive_in_affine_parts(seed in 0u64..1000) {
        let mut r = rng(seed);
        let a = Analysis::new(from_fan(&[&[1, 0], &[0, 1], &[-1, -1], &[1, 1]])).unwrap();
        let f = random_pl(&mut r, 2, 3);
        let l = random_affine(&mut r, 2, 5, 3);
        prop_assert_eq!(a.ding(&f.add_affine(&l)).unwrap(), a.ding(&f).unwrap());
        prop_assert!(a.ding(&PLConvexFunction::affine(l)).unwrap().is_zero());
    }
}
