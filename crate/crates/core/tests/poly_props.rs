use conpoly::poly::{int, rat, to_f64, Rational};
use conpoly::resultant::{sylvester_matrix, sylvester_resultant, sylvester_resultant_exact};
use conpoly::Polynomial;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn rational_poly(max_degree: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-30i64..=30, 1i64..=7), 0..=max_degree + 1)
        .prop_map(|c| Polynomial::new(c.into_iter().map(|(n, d)| rat(n, d)).collect()))
}

fn integer_poly(max_degree: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-1000i64..=1000, 1..=max_degree + 1).prop_map(|c| Polynomial::from_ints(&c))
}

proptest! {
    #[test]
    fn ring_axioms(p in rational_poly(12), q in rational_poly(12), s in rational_poly(12)) {
        prop_assert_eq!(&(&p + &q) + &s, &p + &(&q + &s));
        prop_assert_eq!(&(&p * &q) * &s, &p * &(&q * &s));
        prop_assert_eq!(&p * &(&q + &s), &(&p * &q) + &(&p * &s));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn product_degree(p in rational_poly(12), q in rational_poly(12)) {
        prop_assume!(!p.is_zero() && !q.is_zero());
        prop_assert_eq!((&p * &q).degree(), Some(p.degree().unwrap() + q.degree().unwrap()));
    }

    #[test]
    fn product_rule(p in rational_poly(10), q in rational_poly(10)) {
        let lhs = (&p * &q).derivative();
        let rhs = &(&p.derivative() * &q) + &(&p * &q.derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn eval_matches_exact(p in integer_poly(30), k in -51200i64..=51200) {
        // x = k/1024 is exact in binary, as are the integer coefficients
        let x = rat(k, 1024);
        let exact = p.eval_exact(&x);
        let scale: f64 = p
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| to_f64(&c.abs()) * (k as f64 / 1024.0).abs().powi(i as i32))
            .sum();
        let want = to_f64(&exact);
        // skip catastrophic cancellation, where no float method is relative-accurate
        prop_assume!(want.abs() > 1e-3 * scale);
        let got = p.eval(k as f64 / 1024.0);
        prop_assert!((got - want).abs() <= 1e-12 * want.abs(), "{} vs {}", got, want);
    }

    #[test]
    fn resultant_vanishes_on_repeated_root(a in -6i64..=6, rest in prop::collection::vec(-6i64..=6, 0..4)) {
        let lin = |r: i64| Polynomial::from_ints(&[-r, 1]);
        let mut p = &lin(a) * &lin(a);
        for &r in &rest {
            p = &p * &lin(r);
        }
        let dp = p.derivative();
        prop_assert!(sylvester_resultant_exact(&p, &dp).unwrap().is_zero());
        let pf = p.to_f64_coeffs();
        let dpf = dp.to_f64_coeffs();
        // relative to the Hadamard bound of the Sylvester matrix
        let bound: f64 = sylvester_matrix(&pf, &dpf)
            .iter()
            .map(|row| row.iter().map(|v| v * v).sum::<f64>().sqrt())
            .product();
        let res = sylvester_resultant(&pf, &dpf).unwrap();
        prop_assert!(res.abs() <= 1e-12 * bound, "{} vs bound {}", res, bound);
    }

    #[test]
    fn resultant_nonzero_on_distinct_roots(roots in prop::collection::btree_set(-8i64..=8, 2..6)) {
        let mut p = Polynomial::one();
        for &r in &roots {
            p = &p * &Polynomial::from_ints(&[-r, 1]);
        }
        let res = sylvester_resultant_exact(&p, &p.derivative()).unwrap();
        prop_assert!(!res.is_zero());
    }
}

#[test]
fn addition_examples() {
    let p = |c: &[i64]| Polynomial::from_ints(c);
    assert_eq!(&p(&[-2, 1]) + &p(&[2]), p(&[0, 1]));
    assert_eq!(&p(&[2, -5, 1]) + &p(&[0, 5]), p(&[2, 0, 1]));
    assert_eq!(&p(&[-2, 1]) + &p(&[2, -5, 1]), p(&[0, -4, 1]));
}

#[test]
fn multiplication_examples() {
    let p = |c: &[i64]| Polynomial::from_ints(c);
    assert_eq!(&p(&[-1, 2]) * &p(&[1, -10, 10]), p(&[-1, 12, -30, 20]));
    assert!((&p(&[3, 1]) * &Polynomial::zero()).is_zero());
    assert_eq!(&p(&[-2, 1]) * &p(&[-2, 1]), p(&[4, -4, 1]));
}

#[test]
fn derivative_and_eval_examples() {
    let p = |c: &[i64]| Polynomial::from_ints(c);
    assert_eq!(p(&[2, -5, 1]).derivative(), p(&[-5, 2]));
    assert!(p(&[7]).derivative().is_zero());
    assert_eq!(p(&[-8, 20, -10, 1]).derivative(), p(&[20, -20, 3]));
    assert_eq!(p(&[15, -140, 420, -504, 210]).eval(1.0), 1.0);
    assert_eq!(p(&[-4, 1]).eval(4.0), 0.0);
    assert_eq!(p(&[9, 3, 3]).eval(0.0), 9.0);
}

#[test]
fn resultant_examples() {
    assert_eq!(sylvester_resultant(&[-1.0, 0.0, 1.0], &[0.0, 2.0]).unwrap(), -4.0);
    assert_eq!(sylvester_resultant(&[1.0, -2.0, 1.0], &[-2.0, 2.0]).unwrap(), 0.0);
    assert!(sylvester_resultant(&[0.0], &[1.0, 1.0]).is_err());
    let exact = sylvester_resultant_exact(
        &Polynomial::from_ints(&[-1, 0, 1]),
        &Polynomial::from_ints(&[0, 2]),
    )
    .unwrap();
    assert_eq!(exact, int(-4));
}

#[test]
fn json_round_trip() {
    let p = Polynomial::new(vec![rat(3, 10), rat(-6, 5), Rational::from_integer(1.into())]);
    let s = serde_json::to_string(&p).unwrap();
    assert_eq!(s, r#"{"coeffs":["3/10","-6/5","1/1"]}"#);
    let back: Polynomial = serde_json::from_str(&s).unwrap();
    assert_eq!(back, p);
    assert_eq!(p.to_string(), "r^2-(6/5)r+3/10");
}
