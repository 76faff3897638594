use qfft_core::algebras::{
    build_akl, build_am, build_exterior, build_sq, graded_dimension, tensor_oracle_product, x, y,
    AlgebraHandle,
};
use qfft_core::invariants::{phi_partial, psi, Partial, PsiRef};
use qfft_core::ncpoly::NCPolynomial;
use qfft_core::{Family, LieTypeSpec, Scalar};

fn spec(f: Family, n: usize) -> LieTypeSpec {
    LieTypeSpec::new(f, n).unwrap()
}

fn q(e: i32) -> Scalar {
    Scalar::q_pow(e)
}

fn qq() -> Scalar {
    Scalar::q_minus_qinv()
}

fn xx(i: usize, a: usize, j: usize, b: usize) -> NCPolynomial {
    x(i, a).concat(&x(j, b))
}

fn mul(h: &AlgebraHandle, a: &NCPolynomial, b: &NCPolynomial) -> NCPolynomial {
    h.multiply(a, b).unwrap()
}

#[test]
fn d2_same_label_copies_q_commute() {
    let h = build_am(spec(Family::D, 2), 2, false).unwrap();
    assert_eq!(mul(&h, &x(2, 1), &x(1, 1)), xx(1, 1, 2, 1).scale(&q(1)));
}

#[test]
fn d2_cross_rule_with_partial_sum() {
    let h = build_am(spec(Family::D, 2), 2, false).unwrap();
    // X_{22} X_{13}: t = 2, partner label 3 = v_{-2}
    let psi2 = phi_partial(&h, Partial::Psi, PsiRef(1, 2), 2).unwrap();
    let want = &xx(1, 3, 2, 2).scale(&q(1)) - &psi2.scale(&qq());
    assert_eq!(mul(&h, &x(2, 2), &x(1, 3)), want);
}

#[test]
fn quantum_matrices_2x2() {
    let h = build_am(spec(Family::GL, 2), 2, false).unwrap();
    let want = &xx(1, 1, 2, 2) + &xx(1, 2, 2, 1).scale(&qq());
    assert_eq!(mul(&h, &x(2, 2), &x(1, 1)), want);
    assert_eq!(mul(&h, &x(2, 1), &x(1, 2)), xx(1, 2, 2, 1));
}

#[test]
fn c2_generators_are_skew() {
    let h = build_am(spec(Family::C, 2), 2, false).unwrap();
    let (p12, p21) = (
        psi(&h, PsiRef(1, 2)).unwrap(),
        psi(&h, PsiRef(2, 1)).unwrap(),
    );
    assert_eq!(p21, p12.scale(&-q(-5)));
}

#[test]
fn mixed_algebra_cross_rules() {
    let h = build_akl(2, 1, 1).unwrap();
    let xy = |a: usize, b: usize| x(1, a).concat(&y(1, b));
    let want = &xy(1, 1).scale(&q(1)) - &(&xy(1, 1) + &xy(2, 2)).scale(&qq());
    assert_eq!(mul(&h, &y(1, 1), &x(1, 1)), want);
    assert_eq!(mul(&h, &y(1, 2), &x(1, 1)), xy(1, 2));
}

#[test]
fn exterior_relations() {
    let h = build_exterior(2, 2).unwrap();
    assert!(mul(&h, &x(1, 1), &x(1, 1)).is_zero());
    assert_eq!(mul(&h, &x(1, 2), &x(1, 1)), xx(1, 1, 1, 2).scale(&-q(-1)));
    // the correction term is X_22 X_11 before ordering, and X_22 X_11 = -X_11 X_22
    let want = &xx(1, 1, 2, 2).scale(&qq()) - &xx(1, 2, 2, 1);
    assert_eq!(mul(&h, &x(2, 1), &x(1, 2)), want);
    let ordered = xx(1, 1, 2, 2);
    assert_eq!(h.normal_form(&ordered).unwrap(), ordered);
}

#[test]
fn graded_dimensions() {
    let sq = build_sq(spec(Family::D, 2)).unwrap();
    assert_eq!(graded_dimension(&sq, &[2]), 10);
    assert_eq!(
        sq.graded_words(&[0]),
        vec![qfft_core::ncpoly::Word::empty()]
    );
    let a2 = build_am(spec(Family::D, 2), 2, false).unwrap();
    assert_eq!(graded_dimension(&a2, &[1, 1]), 16);
    let ext = build_exterior(2, 2).unwrap();
    let total = |k: usize| -> usize {
        ext.alphabet()
            .multidegrees_of_total(k)
            .iter()
            .map(|d| graded_dimension(&ext, d))
            .sum()
    };
    assert_eq!(total(4), 1);
    assert_eq!(total(2), 6);
}

#[test]
fn oracle_on_generator_pairs() {
    let h = build_am(spec(Family::D, 2), 2, false).unwrap();
    let letters: Vec<NCPolynomial> = h
        .alphabet()
        .letters()
        .iter()
        .map(|l| NCPolynomial::letter(*l))
        .collect();
    let mut pairs = 0;
    for a in &letters {
        for b in &letters {
            assert_eq!(
                tensor_oracle_product(&h, a, b).unwrap(),
                mul(&h, a, b),
                "{a} . {b}"
            );
            pairs += 1;
        }
    }
    assert_eq!(pairs, 64);
    let y = x(2, 3);
    assert_eq!(
        tensor_oracle_product(&h, &NCPolynomial::one(), &y).unwrap(),
        y
    );
}
