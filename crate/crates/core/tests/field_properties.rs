use num_rational::BigRational;
use proptest::prelude::*;
use qfft_core::Scalar;

fn laurent() -> impl Strategy<Value = Scalar> {
    (-3i32..3, prop::collection::vec(-5i64..=5, 1..4))
        .prop_map(|(low, c)| Scalar::laurent_v(low, &c))
}

fn element() -> impl Strategy<Value = Scalar> {
    (laurent(), laurent()).prop_filter_map("nonzero denominator", |(n, d)| n.checked_div(&d).ok())
}

/// Elements with no pole at v = 1: a denominator that is a monomial times a
/// polynomial not vanishing at 1.
fn regular() -> impl Strategy<Value = Scalar> {
    (laurent(), -2i32..2, 1i64..4).prop_map(|(n, e, c)| {
        let den = Scalar::laurent_v(e, &[c, 1]);
        n.checked_div(&den).expect("1 + c v^.. is nonzero")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in element(), b in element(), c in element()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a - &a, Scalar::zero());
    }

    #[test]
    fn inverses(a in element()) {
        if a.is_zero() {
            prop_assert!(a.inv().is_err());
        } else {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn canonical_form_round_trips(a in element(), b in element()) {
        let printed = a.to_string();
        prop_assert_eq!(Scalar::parse(&printed).unwrap(), a.clone());
        prop_assert_eq!(a == b, (&a - &b).is_zero());
    }

    #[test]
    fn classical_limit_is_a_ring_map(a in regular(), b in regular()) {
        let (la, lb) = (a.classical_limit().unwrap(), b.classical_limit().unwrap());
        prop_assert_eq!((&a + &b).classical_limit().unwrap(), &la + &lb);
        prop_assert_eq!((&a * &b).classical_limit().unwrap(), &la * &lb);
    }
}

#[test]
fn quantum_integer_identities() {
    let q = Scalar::q();
    let qi = Scalar::q_pow(-1);
    assert_eq!(
        &(&q - &qi) * &(&q + &qi),
        &Scalar::q_pow(2) - &Scalar::q_pow(-2)
    );
    assert_eq!(Scalar::qint(3), Scalar::laurent_q(-2, &[1, 0, 1, 0, 1]));
    let c = &Scalar::q_pow(-1) * &(&Scalar::q_pow(1) + &Scalar::q_pow(-1));
    assert_eq!(c, &Scalar::one() + &Scalar::q_pow(-2));
}

#[test]
fn classical_limits() {
    let four = BigRational::from_integer(4.into());
    assert_eq!(Scalar::qint(4).classical_limit().unwrap(), four);
    assert_eq!(
        Scalar::q_minus_qinv().classical_limit().unwrap(),
        BigRational::from_integer(0.into())
    );
    let pole = Scalar::one()
        .checked_div(&(&Scalar::q() - &Scalar::one()))
        .unwrap();
    assert!(pole.classical_limit().is_err());
}
