use proptest::prelude::*;
use qfft_core::algebras::{build_akl, build_am, build_exterior, AlgebraHandle};
use qfft_core::ncpoly::{NCPolynomial, Word};
use qfft_core::{Family, LieTypeSpec, Scalar};

fn grid() -> Vec<AlgebraHandle> {
    let spec = |f, n| LieTypeSpec::new(f, n).unwrap();
    vec![
        build_am(spec(Family::D, 2), 2, false).unwrap(),
        build_am(spec(Family::B, 1), 2, false).unwrap(),
        build_am(spec(Family::C, 2), 2, false).unwrap(),
        build_akl(2, 1, 1).unwrap(),
        build_exterior(2, 2).unwrap(),
    ]
}

fn coeff() -> impl Strategy<Value = Scalar> {
    (-2i32..3, prop::collection::vec(-3i64..=3, 1..3))
        .prop_map(|(low, c)| Scalar::laurent_q(low, &c))
}

/// Random polynomial given as (letter indices, coefficient) terms, unordered words.
fn raw_terms() -> impl Strategy<Value = Vec<(Vec<usize>, Scalar)>> {
    prop::collection::vec((prop::collection::vec(0usize..64, 0..4), coeff()), 1..4)
}

fn realize(h: &AlgebraHandle, terms: &[(Vec<usize>, Scalar)]) -> NCPolynomial {
    let letters = h.alphabet().letters();
    NCPolynomial::from_terms(terms.iter().map(|(ix, c)| {
        (
            Word(ix.iter().map(|i| letters[i % letters.len()]).collect()),
            c.clone(),
        )
    }))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normal_form_is_idempotent(which in 0usize..5, t in raw_terms()) {
        let h = &grid()[which];
        let nf = h.normal_form(&realize(h, &t)).unwrap();
        prop_assert_eq!(h.normal_form(&nf).unwrap(), nf);
    }

    #[test]
    fn normal_form_is_linear(which in 0usize..5, p in raw_terms(), r in raw_terms(), a in coeff(), b in coeff()) {
        let h = &grid()[which];
        let (p, r) = (realize(h, &p), realize(h, &r));
        let lhs = h.normal_form(&(&p.scale(&a) + &r.scale(&b))).unwrap();
        let rhs = &h.normal_form(&p).unwrap().scale(&a) + &h.normal_form(&r).unwrap().scale(&b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplication_is_associative(which in 0usize..5, a in raw_terms(), b in raw_terms(), c in raw_terms()) {
        let h = &grid()[which];
        let (a, b, c) = (realize(h, &a), realize(h, &b), realize(h, &c));
        let left = h.multiply(&h.multiply(&a, &b).unwrap(), &c).unwrap();
        let right = h.multiply(&a, &h.multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn unit_is_neutral(which in 0usize..5, p in raw_terms()) {
        let h = &grid()[which];
        let p = h.normal_form(&realize(h, &p)).unwrap();
        prop_assert_eq!(h.multiply(&NCPolynomial::one(), &p).unwrap(), p.clone());
        prop_assert_eq!(h.multiply(&p, &NCPolynomial::one()).unwrap(), p);
    }
}
