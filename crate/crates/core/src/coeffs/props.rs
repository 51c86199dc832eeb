use std::collections::HashMap;

use num_rational::BigRational;
use proptest::prelude::*;

use super::*;

fn rational() -> impl Strategy<Value = Scalar> {
    (-20i64..20, 1i64..12).prop_map(|(n, d)| Scalar::Rational(BigRational::new(n.into(), d.into())))
}

fn modular() -> impl Strategy<Value = Scalar> {
    (0i64..7).prop_map(|n| FieldDescriptor::PrimeField { p: 7 }.from_int(n))
}

fn ratfun() -> impl Strategy<Value = Scalar> {
    (
        prop::collection::vec(-3i64..4, 1..4),
        prop::collection::vec(-3i64..4, 1..3),
    )
        .prop_filter_map("nonzero denominator", |(n, d)| {
            Scalar::rational_function("q", &n, &d)
        })
}

fn check_axioms(a: &Scalar, b: &Scalar, c: &Scalar) {
    assert_eq!(&(a + b) + c, a + &(b + c));
    assert_eq!(&(a * b) * c, a * &(b * c));
    assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    assert_eq!(a + b, b + a);
    assert_eq!(a * b, b * a);
    let same = a.clone();
    assert!((a - &same).is_zero());
    if !a.is_zero() {
        assert!((a * &a.inv().unwrap()).is_one());
    }
}

proptest! {
    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        check_axioms(&a, &b, &c);
    }

    #[test]
    fn prime_field_axioms(a in modular(), b in modular(), c in modular()) {
        check_axioms(&a, &b, &c);
    }

    #[test]
    fn rational_function_axioms(a in ratfun(), b in ratfun(), c in ratfun()) {
        check_axioms(&a, &b, &c);
    }

    #[test]
    fn canonical_forms_unique(n in prop::collection::vec(-3i64..4, 1..4), d in prop::collection::vec(-3i64..4, 1..3), k in prop::collection::vec(-2i64..3, 1..3)) {
        // multiplying numerator and denominator by a common factor changes nothing
        let mul = |a: &[i64], b: &[i64]| {
            let mut out = vec![0i64; a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            out
        };
        prop_assume!(k.iter().any(|&x| x != 0));
        if let Some(f) = Scalar::rational_function("q", &n, &d) {
            let g = Scalar::rational_function("q", &mul(&n, &k), &mul(&d, &k)).unwrap();
            prop_assert_eq!(f, g);
        }
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(
        fs in prop::collection::vec((0u32..3, 0u32..3, -5i64..5), 0..5),
        gs in prop::collection::vec((0u32..3, 0u32..3, -5i64..5), 0..5),
        w in prop::collection::vec(-4i64..5, 3),
    ) {
        let q = FieldDescriptor::Rationals;
        let build = |ts: &[(u32, u32, i64)]| {
            CentralPoly::from_terms(ts.iter().map(|&(v, e, c)| (CMonomial::from_exponents([(v, e), ((v + 1) % 3, 1)]), q.from_int(c))))
        };
        let (f, g) = (build(&fs), build(&gs));
        let omega: HashMap<u32, Scalar> = w.iter().enumerate().map(|(i, &x)| (i as u32, q.from_int(x))).collect();
        let ev = |p: &CentralPoly| p.evaluate(&omega, &q.zero()).unwrap();
        prop_assert_eq!(ev(&f.mul(&g)), &ev(&f) * &ev(&g));
        prop_assert_eq!(ev(&f.add(&g)), &ev(&f) + &ev(&g));
    }
}
