use std::cmp::Ordering;

use grs_core::exactnum::{compare, decimal_approx, min_poly_of, reduce_poly, signifier, KElem, QAlpha, TriPoly};
use grs_core::scalar::rat;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn qalpha() -> impl Strategy<Value = QAlpha> {
    (-30i64..30, -30i64..30, -30i64..30, 1i64..12).prop_map(|(p, q, r, d)| QAlpha::from_ints_over(p, q, r, d))
}

fn kelem() -> impl Strategy<Value = KElem> {
    (qalpha(), qalpha()).prop_map(|(u, v)| KElem::new(u, v))
}

/// Decimal endpoints of `decimal_approx`, as exact rationals.
fn endpoints(s: &str) -> (BigRational, BigRational) {
    let inner = s.trim_start_matches('[').trim_end_matches(']');
    let (a, b) = inner.split_once(", ").unwrap();
    let parse = |x: &str| {
        let neg = x.starts_with('-');
        let x = x.trim_start_matches('-');
        let (w, f) = x.split_once('.').unwrap_or((x, ""));
        let den = num_bigint::BigInt::from(10u32).pow(f.len() as u32);
        let v = BigRational::new(format!("{w}{f}").parse().unwrap(), den);
        if neg { -v } else { v }
    };
    (parse(a), parse(b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn field_axioms(a in qalpha(), b in qalpha(), c in qalpha()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inverse().unwrap(), QAlpha::int(1));
            prop_assert_eq!((&b / &a).unwrap(), &b * &a.inverse().unwrap());
        }
    }

    #[test]
    fn compare_is_an_ordered_field(a in qalpha(), b in qalpha(), c in qalpha()) {
        prop_assert_eq!(compare(&a, &b), compare(&b, &a).reverse());
        prop_assert_eq!(compare(&a, &b), compare(&(&a + &c), &(&b + &c)));
        let pos = compare(&c, &QAlpha::int(0));
        let scaled = compare(&(&a * &c), &(&b * &c));
        match pos {
            Ordering::Greater => prop_assert_eq!(scaled, compare(&a, &b)),
            Ordering::Less => prop_assert_eq!(scaled, compare(&a, &b).reverse()),
            Ordering::Equal => prop_assert_eq!(scaled, Ordering::Equal),
        }
        prop_assert_eq!(compare(&(&a * &a), &QAlpha::int(0)) != Ordering::Less, true);
    }

    #[test]
    fn signifier_sign_is_value_sign(a in qalpha()) {
        let s = signifier(&a);
        prop_assert_eq!(s.is_zero(), a.is_zero());
        prop_assert_eq!(compare(&a, &QAlpha::int(0)), s.cmp(&BigRational::zero()));
    }

    #[test]
    fn decimal_interval_brackets(a in qalpha(), d in 0u32..10) {
        let (lo, hi) = endpoints(&decimal_approx(&a, d));
        prop_assert!(compare(&QAlpha::rational(lo.clone()), &a) != Ordering::Greater);
        prop_assert!(compare(&a, &QAlpha::rational(hi.clone())) != Ordering::Greater);
        let width = &hi - &lo;
        let unit = BigRational::new(1.into(), num_bigint::BigInt::from(10u32).pow(d));
        prop_assert!(width == unit || width.is_zero());
    }

    #[test]
    fn minimal_polynomial_annihilates(a in qalpha()) {
        match min_poly_of(&a) {
            Ok((s, t, u)) => {
                let v = &(&(&(&a * &a) * &a) + &(&QAlpha::rational(s) * &(&a * &a))) + &(&QAlpha::rational(t) * &a);
                prop_assert!((&v + &QAlpha::rational(u)).is_zero());
            }
            Err(_) => prop_assert!(a.as_rational().is_some()),
        }
    }

    #[test]
    fn serialization_round_trips(a in qalpha(), k in kelem()) {
        prop_assert_eq!(QAlpha::parse(&a.serialize()).unwrap(), a);
        prop_assert_eq!(KElem::parse(&k.serialize()).unwrap(), k);
    }

    #[test]
    fn conjugation_is_a_ring_automorphism(a in kelem(), b in kelem()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        prop_assert!((&a * &a.conj()).is_real());
    }

    #[test]
    fn reduction_is_a_ring_map(e in prop::collection::vec((0u32..4, 0u32..4, 0u32..4, -5i64..5), 1..5)) {
        let mut poly = TriPoly::zero();
        for &(i, j, k, c) in &e {
            poly = &poly + &TriPoly::monomial(rat(c), [i, j, k]);
        }
        let direct = reduce_poly(&poly).unwrap();
        let mut by_hand = KElem::int(0);
        for (exps, c) in poly.terms() {
            let mut term = KElem::real(QAlpha::rational(c.clone()));
            for (j, &p) in exps.iter().enumerate() {
                term = &term * &KElem::root(j as i64).pow(p);
            }
            by_hand = &by_hand + &term;
        }
        prop_assert_eq!(direct, by_hand);
    }
}

#[test]
fn symmetric_functions_of_the_roots() {
    let (x, y, z) = (TriPoly::x(), TriPoly::y(), TriPoly::z());
    let e1 = &(&x + &y) + &z;
    let e2 = &(&(&x * &y) + &(&x * &z)) + &(&y * &z);
    let e3 = &(&x * &y) * &z;
    assert_eq!(reduce_poly(&e1).unwrap(), KElem::int(-1));
    assert_eq!(reduce_poly(&e2).unwrap(), KElem::int(-2));
    assert_eq!(reduce_poly(&e3).unwrap(), KElem::int(4));
}

#[test]
fn swapping_alpha1_and_alpha2_is_conjugation() {
    for j in 0..3 {
        let r = KElem::root(j);
        let swapped = match j {
            1 => KElem::root(2),
            2 => KElem::root(1),
            _ => r.clone(),
        };
        assert_eq!(r.conj(), swapped);
    }
}
