mod common;

use conpoly::constructor::{classical_family, constrained_family_from_seeds, family_residuals};
use conpoly::measures::NumericWeight;
use conpoly::poly::{int, rat, Rational};
use conpoly::{
    constrained_family, constrained_seed, Error, MomentFunctional, Polynomial, Unit, UnitScalar,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn exact_kinds() -> Vec<MomentFunctional> {
    let mut out = Vec::new();
    for d in 1..=3 {
        out.push(MomentFunctional::LaguerreOrtho(d));
        out.push(MomentFunctional::LaguerreConstraint(d));
        out.push(MomentFunctional::Legendre(d));
    }
    out.push(MomentFunctional::Gauss(int(1)));
    out.push(MomentFunctional::Gauss(int(2)));
    out.push(MomentFunctional::Gauss(rat(1, 3)));
    out
}

/// Determinant by fraction-exact Gaussian elimination.
fn det(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut d = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            a.swap(p, k);
            d = -d;
        }
        d *= &a[k][k];
        for i in k + 1..n {
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let v = &f * &a[k][j];
                a[i][j] -= v;
            }
        }
    }
    d
}

#[test]
fn hankel_minors_positive() {
    for f in exact_kinds() {
        let m: Vec<Rational> = (0..20).map(|k| f.exact_moment(k).unwrap()).collect();
        for size in 1..=10 {
            let h = (0..size)
                .map(|i| (0..size).map(|j| m[i + j].clone()).collect())
                .collect();
            assert!(det(h) > Rational::zero(), "{f} size {size}");
        }
    }
}

fn poly15() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-20i64..=20, 1i64..=5), 1..=16)
        .prop_map(|c| Polynomial::new(c.into_iter().map(|(n, d)| rat(n, d)).collect()))
}

proptest! {
    #[test]
    fn positive_definite(p in poly15()) {
        prop_assume!(!p.is_zero());
        for f in exact_kinds() {
            prop_assert!(f.pair(&p, &p).unwrap().is_positive(), "{}", f);
        }
    }

    #[test]
    fn pair_is_symmetric_bilinear(p in poly15(), q in poly15(), a in -5i64..=5) {
        for f in exact_kinds() {
            prop_assert_eq!(f.pair(&p, &q).unwrap(), f.pair(&q, &p).unwrap());
            let lhs = f.apply(&p.scale(&int(a))).unwrap();
            prop_assert_eq!(lhs, f.apply(&p).unwrap().scale(&int(a)));
        }
    }

    #[test]
    fn gram_schmidt_unique(mix in prop::collection::vec(-7i64..=7, 15), d in 1u32..=3, scale in 1i64..=9) {
        let o = MomentFunctional::LaguerreOrtho(d);
        let c = MomentFunctional::LaguerreConstraint(d);
        let reference = constrained_family(&o, &c, 6).unwrap();
        let base: Vec<Polynomial> = (1..=6).map(|n| constrained_seed(n, &c).unwrap()).collect();
        let mut k = 0;
        let seeds = (0..6)
            .map(|i| {
                let mut s = base[i].scale(&rat(scale, 1));
                for b in &base[..i] {
                    s = &s + &b.scale(&rat(mix[k], 3));
                    k += 1;
                }
                s
            })
            .collect();
        let fam = constrained_family_from_seeds(&o, &c, seeds).unwrap();
        prop_assert_eq!(fam.polys, reference.polys);
    }
}

#[test]
fn moment_examples() {
    let m = MomentFunctional::LaguerreConstraint(1).moment(1).unwrap();
    assert_eq!(m, UnitScalar::rational(int(4)));
    assert_eq!(MomentFunctional::Legendre(3).moment(0).unwrap(), UnitScalar::rational(rat(1, 3)));
    let g = MomentFunctional::Gauss(int(1)).moment(2).unwrap();
    assert_eq!(g, UnitScalar::new(rat(1, 2), Unit::SqrtPiOver(int(1))));
    assert!((g.to_f64() - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-15);
    assert!(MomentFunctional::Gauss(int(1)).moment(3).unwrap().is_zero());
}

#[test]
fn apply_and_pair_examples() {
    let p = |c: &[i64]| Polynomial::from_ints(c);
    assert!(MomentFunctional::LaguerreConstraint(1).apply(&p(&[-2, 1])).unwrap().is_zero());
    assert!(MomentFunctional::Legendre(2).apply(&p(&[-2, 3])).unwrap().is_zero());
    assert_eq!(
        MomentFunctional::Gauss(int(1)).apply(&Polynomial::one()).unwrap(),
        UnitScalar::new(int(1), Unit::SqrtPiOver(int(1)))
    );
    let lo = MomentFunctional::LaguerreOrtho(1);
    assert_eq!(lo.pair(&p(&[-2, 1]), &p(&[-2, 1])).unwrap(), UnitScalar::rational(int(2)));
    assert!(lo.pair(&p(&[-2, 1]), &p(&[2, -5, 1])).unwrap().is_zero());
    assert_eq!(
        MomentFunctional::Legendre(1).pair(&p(&[-1, 2]), &p(&[-1, 2])).unwrap(),
        UnitScalar::rational(rat(1, 3))
    );
}

#[test]
fn numeric_matches_legendre_two() {
    let w = NumericWeight::new(1, 0.0, 0.0, 1.0).with_order(20);
    for k in 0..20 {
        let want = 1.0 / (k as f64 + 2.0);
        assert!((w.moment(k).unwrap() - want).abs() < 1e-12);
    }
}

#[test]
fn descriptors_round_trip() {
    for s in ["laguerre:d=2", "laguerre-constraint:d=1", "legendre:d=3", "gauss:a=2", "gauss:a=1/3"] {
        let f: MomentFunctional = s.parse().unwrap();
        assert_eq!(f.to_string(), s);
    }
    assert!("gauss:a=0".parse::<MomentFunctional>().and_then(|f| f.validate()).is_err());
    assert!("laguerre:q=1".parse::<MomentFunctional>().is_err());
    let n: MomentFunctional = "numeric:p=1,c=2,lo=0,hi=1,order=32".parse().unwrap();
    assert!(!n.is_exact());
}

#[test]
fn seed_examples() {
    assert_eq!(
        constrained_seed(1, &MomentFunctional::LaguerreConstraint(1)).unwrap(),
        Polynomial::from_ints(&[-2, 1])
    );
    assert_eq!(
        constrained_seed(2, &MomentFunctional::LaguerreConstraint(3)).unwrap(),
        Polynomial::from_ints(&[-48, 0, 1])
    );
    assert_eq!(
        constrained_seed(1, &MomentFunctional::Legendre(2)).unwrap(),
        Polynomial::new(vec![rat(-2, 3), int(1)])
    );
}

#[test]
fn family_examples() {
    let lag = constrained_family(
        &MomentFunctional::LaguerreOrtho(1),
        &MomentFunctional::LaguerreConstraint(1),
        4,
    )
    .unwrap();
    for n in 1..=4 {
        assert_eq!(lag.polys[n - 1], common::laguerre_row(1, n));
    }
    let leg = constrained_family(&MomentFunctional::Legendre(3), &MomentFunctional::Legendre(3), 2).unwrap();
    assert_eq!(leg.polys[0], Polynomial::new(vec![rat(-3, 4), int(1)]));
    assert_eq!(leg.polys[1], Polynomial::new(vec![rat(2, 5), rat(-4, 3), int(1)]));
    let herm = constrained_family(&MomentFunctional::Gauss(int(2)), &MomentFunctional::Gauss(int(1)), 2).unwrap();
    assert_eq!(herm.polys[0], Polynomial::x());
    assert_eq!(herm.polys[1], Polynomial::new(vec![rat(-1, 2), int(0), int(1)]));
    assert!(constrained_family(&MomentFunctional::Legendre(1), &MomentFunctional::Legendre(1), 0).is_err());
}

#[test]
fn exact_families_reverify_to_zero() {
    for f in exact_kinds() {
        let c = match &f {
            MomentFunctional::LaguerreOrtho(d) => MomentFunctional::LaguerreConstraint(*d),
            MomentFunctional::Gauss(_) => MomentFunctional::Gauss(int(1)),
            other => other.clone(),
        };
        let fam = constrained_family(&f, &c, 8).unwrap();
        for (n, p) in fam.polys.iter().enumerate() {
            assert!(p.is_monic() && p.degree() == Some(n + 1));
            assert!(c.apply(p).unwrap().is_zero());
            for q in &fam.polys[..n] {
                assert!(f.pair(p, q).unwrap().is_zero());
            }
        }
        assert_eq!(family_residuals(&fam).unwrap(), (0.0, 0.0));
        assert_eq!(fam.polys[0], constrained_seed(1, &c).unwrap());
    }
}

#[test]
fn legendre_d1_is_shifted_legendre() {
    let f = MomentFunctional::Legendre(1);
    let constrained = constrained_family(&f, &f, 10).unwrap();
    let classical = classical_family(&f, 10).unwrap();
    assert_eq!(constrained.polys, classical.polys[1..].to_vec());
}

#[test]
fn classical_examples() {
    let lag = classical_family(&MomentFunctional::LaguerreOrtho(1), 2).unwrap();
    assert_eq!(lag.polys, vec![Polynomial::one(), Polynomial::from_ints(&[-1, 1]), Polynomial::from_ints(&[2, -4, 1])]);
    let leg = classical_family(&MomentFunctional::Legendre(1), 1).unwrap();
    assert_eq!(leg.polys[1], Polynomial::new(vec![rat(-1, 2), int(1)]));
    let her = classical_family(&MomentFunctional::Gauss(int(1)), 2).unwrap();
    assert_eq!(her.polys[2], Polynomial::new(vec![rat(-1, 2), int(0), int(1)]));
}

#[test]
fn numeric_family_within_tolerance() {
    for k in [0.5, 1.0, 2.0] {
        let fam = conpoly::toymodel::centrifuge_family(k, 5, 64).unwrap();
        let (c, o) = family_residuals(&fam).unwrap();
        assert!(c < 1e-10 && o < 1e-10, "K={k}: {c:e} {o:e}");
    }
}

#[test]
fn under_resolved_quadrature_is_reported() {
    let w = MomentFunctional::Numeric(NumericWeight::new(1, 4.0, 0.0, 1.0).with_order(4));
    let err = constrained_family(&w, &w, 6).unwrap_err();
    assert!(matches!(err, Error::QuadratureDivergence { .. }), "{err}");
}
