use proptest::prelude::*;

use qfold::qarith::{bar_scalar, q_binomial, q_factorial, q_integer, reduce_mod, BaseRing, LaurentPoly, RationalFn};

const Z: BaseRing = BaseRing::Integers;

fn laurent(ring: BaseRing) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i32..=6, -9i64..=9), 0..5).prop_map(move |ts| {
        ts.into_iter().fold(LaurentPoly::zero(ring), |acc, (e, c)| acc + LaurentPoly::monomial(c, e, ring))
    })
}

fn nonzero(ring: BaseRing) -> impl Strategy<Value = LaurentPoly> {
    laurent(ring).prop_filter("nonzero", |p| !p.is_zero())
}

#[test]
fn oracles() {
    assert_eq!(q_integer(3, 1).to_string(), LaurentPoly::parse("q^-2 + 1 + q^2", Z).unwrap().to_string());
    assert_eq!(q_binomial(4, 2, 1).unwrap(), LaurentPoly::parse("q^-4 + q^-2 + 2 + q^2 + q^4", Z).unwrap());
    assert_eq!(q_factorial(2, 2), q_integer(2, 2));
    let r = RationalFn::parse("(q^2 - q^-2)/(q - q^-1)", Z).unwrap();
    assert_eq!(r, RationalFn::parse("q + q^-1", Z).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in laurent(Z), b in laurent(Z), c in laurent(Z)) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a * c);
    }

    #[test]
    fn no_zero_coefficients(a in laurent(Z), b in laurent(Z)) {
        for p in [a.clone() + b.clone(), a.clone() - b.clone(), a * b] {
            prop_assert!(p.terms().iter().all(|(_, c)| *c != ibig::IBig::from(0)));
        }
    }

    #[test]
    fn bar_is_an_involutive_automorphism(a in laurent(Z), b in laurent(Z)) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((a.clone() * b.clone()).bar(), a.bar() * b.bar());
        prop_assert_eq!((a.clone() + b.clone()).bar(), a.bar() + b.bar());
        prop_assert_eq!(bar_scalar(&a), a.bar());
    }

    #[test]
    fn reduction_is_a_homomorphism(a in laurent(Z), b in laurent(Z), eps in 2i64..=3) {
        let r = |p: &LaurentPoly| reduce_mod(p, eps).unwrap();
        prop_assert_eq!(r(&(a.clone() * b.clone())), r(&a) * r(&b));
        prop_assert_eq!(r(&(a.clone() + b.clone())), r(&a) + r(&b));
        prop_assert_eq!(r(&a).bar(), r(&a.bar()));
    }

    #[test]
    fn binomials_are_laurent_and_symmetric(n in 0i64..9, k in 0i64..9, d in 1u32..=3) {
        if k > n {
            prop_assert!(q_binomial(n, k, d).is_err());
        } else {
            let b = q_binomial(n, k, d).unwrap();
            prop_assert_eq!(b.bar(), b.clone());
            prop_assert_eq!(b * q_factorial(k as u32, d) * q_factorial((n - k) as u32, d), q_factorial(n as u32, d));
        }
    }

    #[test]
    fn rational_canonical_form(a in laurent(Z), b in nonzero(Z), c in nonzero(Z)) {
        let x = RationalFn::new(a.clone() * c.clone(), b.clone() * c.clone()).unwrap();
        let y = RationalFn::new(a.clone(), b.clone()).unwrap();
        prop_assert_eq!(&x, &y);
        let back = y.checked_mul(&RationalFn::from_laurent(b)).unwrap();
        prop_assert_eq!(back, RationalFn::from_laurent(a));
    }

    #[test]
    fn rational_field_ops(a in nonzero(Z), b in nonzero(Z), c in laurent(Z)) {
        let x = RationalFn::new(c, a.clone()).unwrap();
        let y = RationalFn::new(a, b).unwrap();
        let z = x.checked_div(&y).unwrap().checked_mul(&y).unwrap();
        prop_assert_eq!(&z, &x);
        prop_assert_eq!(x.bar().bar(), x.clone());
        prop_assert_eq!(x.checked_mul(&y).unwrap().bar(), x.bar().checked_mul(&y.bar()).unwrap());
    }

    #[test]
    fn finite_field_arithmetic(a in laurent(BaseRing::ModEps(3)), b in nonzero(BaseRing::ModEps(3))) {
        let x = RationalFn::new(a.clone(), b.clone()).unwrap();
        prop_assert_eq!(x.checked_mul(&RationalFn::from_laurent(b)).unwrap(), RationalFn::from_laurent(a.clone()));
        prop_assert_eq!(a.clone() + a.clone() + a, LaurentPoly::zero(BaseRing::ModEps(3)));
    }
}
