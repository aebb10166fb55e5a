use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

use super::*;

fn p(s: &str) -> MultiPoly {
    s.parse().unwrap()
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[test]
fn square_in_t_basis() {
    let qt = p("q + t");
    let sq = &qt * &qt;
    assert_eq!(sq, p("q^2 + 2q t + t^2"));
    assert_eq!(rebase_t(&sq).unwrap().to_string(), "q^2 + 2*q*t + t^2");
}

#[test]
fn geometric_factorization() {
    let lhs = (p("w") - 1) * p("1 + w + w^2");
    assert_eq!(lhs, p("w^3 - 1"));
}

#[test]
fn zero_annihilates() {
    assert!((p("v") * MultiPoly::zero()).is_zero());
}

#[test]
fn substitution_identity_and_constant() {
    let z = p("s(s+v)w^2 + 2s(q-s)w + (q-s)(q-s+v)");
    assert_eq!(z.substitute(&[]).unwrap(), z);
    let ph = z.subs_int(Var::V, -1);
    assert_eq!(ph, p("s(s-1)w^2 + 2s(q-s)w + (q-s)(q-s-1)"));
}

#[test]
fn rational_substitution_requires_integers() {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let err = p("q + s").subs(Var::Q, half.clone()).unwrap_err();
    assert!(matches!(err, crate::Error::NonIntegerResult));
    assert_eq!(p("2q + s").subs(Var::Q, half).unwrap(), p("1 + s"));
}

#[test]
fn rebase_examples() {
    assert_eq!(rebase_t(&p("s(w-1)")).unwrap().to_string(), "t");
    let zl2 = p("s(s+v)w^2 + 2s(q-s)w + (q-s)(q-s+v)");
    let t = rebase_t(&zl2).unwrap();
    assert_eq!(t.expand(), zl2);
    assert_eq!(t.expand(), p("q^2 + (2t+v)q + t[t + v(w+1)]"));
    assert!(matches!(rebase_t(&p("s")), Err(crate::Error::NotExpressible)));
}

#[test]
fn eval_examples() {
    // q + t at q=3, s=1, w=0
    let v = p("q + t").eval([c(3.0), c(1.0), c(0.0), c(0.0)]);
    assert!((v - c(2.0)).norm() < 1e-15);
}

#[test]
fn exact_division() {
    let a = p("s v w (w-1) (q + s)");
    assert_eq!(a.div_exact(&p("w-1")).unwrap(), p("s v w (q+s)"));
    assert!(a.div_exact(&p("q - s")).is_none());
    assert!(p("3q").div_exact(&p("2")).is_none());
}

#[test]
fn renders() {
    let x = p("-3q^2 s + 2w - 1");
    assert_eq!(x.to_string(), "-3*q^2*s + 2*w - 1");
    assert_eq!(x.to_latex(), "-3 q^{2} s + 2 w - 1");
    assert_eq!(MultiPoly::zero().to_string(), "0");
}

#[test]
fn json_shape() {
    let x = p("2q - 5");
    let j = x.to_json();
    assert_eq!(j.to_string(), r#"{"terms":[{"c":"2","e":[1,0,0,0]},{"c":"-5","e":[0,0,0,0]}]}"#);
    assert_eq!(MultiPoly::from_json(&j).unwrap(), x);
}

#[test]
fn rational_expr_content_reduction() {
    let r = RationalExpr::new(p("4q"), p("-6s")).unwrap();
    assert_eq!(r.numerator, p("-2q"));
    assert_eq!(r.denominator, p("3s"));
    assert!(RationalExpr::new(p("q"), MultiPoly::zero()).is_err());
}

fn arb_poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3, 0u32..3), -5i64..6), 0..6)
        .prop_map(|ts| MultiPoly::from_terms(ts.into_iter().map(|((a, b, c, d), k)| ([a, b, c, d], BigInt::from(k)))))
}

proptest! {
    #[test]
    fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn product_divides_back(a in arb_poly(), b in arb_poly()) {
        prop_assume!(!b.is_zero());
        let prod = &a * &b;
        prop_assert_eq!(prod.div_exact(&b), Some(a));
    }

    #[test]
    fn substitute_then_eval(a in arb_poly(), q in -2.0f64..2.0, s in -2.0f64..2.0, w in -2.0f64..2.0) {
        let direct = a.eval([c(q), c(s), c(-1.0), c(w)]);
        let via = a.subs_int(Var::V, -1).eval([c(q), c(s), c(7.0), c(w)]);
        prop_assert!((direct - via).norm() <= 1e-9 * (1.0 + direct.norm()));
    }

    #[test]
    fn json_and_text_round_trip(a in arb_poly()) {
        prop_assert_eq!(MultiPoly::from_json(&a.to_json()).unwrap(), a.clone());
        let reparsed: MultiPoly = a.to_string().parse().unwrap();
        prop_assert_eq!(reparsed, a);
    }
}
