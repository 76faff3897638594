use qfft_core::algebras::{build_akl, build_am, build_exterior, build_sq, x, y, AlgebraHandle};
use qfft_core::invariants::{
    exterior_highest_weight, fft_suite, fft_verify, generator_invariance_suite, phi_partial, psi,
    single_copy_suite, skew_duality_check, verify_relation_suite, Partial, PsiRef,
};
use qfft_core::ncpoly::NCPolynomial;
use qfft_core::{Family, LieTypeSpec, Scalar};

fn spec(f: Family, n: usize) -> LieTypeSpec {
    LieTypeSpec::new(f, n).unwrap()
}

fn am(f: Family, n: usize, m: usize) -> AlgebraHandle {
    build_am(spec(f, n), m, false).unwrap()
}

fn q(e: i32) -> Scalar {
    Scalar::q_pow(e)
}

fn xx(i: usize, a: usize, j: usize, b: usize) -> NCPolynomial {
    x(i, a).concat(&x(j, b))
}

#[test]
fn relation_suites_pass() {
    let grid = [
        am(Family::D, 2, 4),
        am(Family::D, 3, 3),
        am(Family::B, 1, 4),
        am(Family::B, 2, 3),
        am(Family::C, 2, 4),
        am(Family::C, 2, 3),
        build_akl(2, 2, 2).unwrap(),
    ];
    for h in &grid {
        for s in verify_relation_suite(h).unwrap() {
            assert!(s.all_pass(), "{}: {:?}", s.name, s.failures().next());
        }
    }
}

/// The printed forms that the corrected suites replace must actually fail somewhere,
/// otherwise the correction is unnecessary.
#[test]
fn printed_forms_are_recorded_as_failing() {
    let fails = |h: &AlgebraHandle, citation_start: &str| {
        verify_relation_suite(h)
            .unwrap()
            .iter()
            .flat_map(|s| s.entries.clone())
            .filter(|e| e.citation.starts_with(citation_start))
            .any(|e| {
                e.residual
                    .as_deref()
                    .is_some_and(|r| r.contains("as printed: fails"))
            })
    };
    let d2 = am(Family::D, 2, 4);
    assert!(fails(&d2, "printed: Psi(i,k)Psi(i,j)"));
    let b1 = am(Family::B, 1, 4);
    assert!(fails(&b1, "printed: varphi(i,i)"));
    let c2 = am(Family::C, 2, 4);
    assert!(fails(&c2, "printed: [X_ka, Psi(i,j)]"));
    assert!(fails(&c2, "printed: [Psi(k,l), Psi(i,j)]"));
}

#[test]
fn generators_are_invariant() {
    for h in [
        am(Family::D, 2, 3),
        am(Family::B, 1, 3),
        am(Family::C, 2, 3),
        build_akl(2, 2, 2).unwrap(),
    ] {
        assert!(generator_invariance_suite(&h).unwrap().all_pass(), "{h}");
    }
}

#[test]
fn d2_generator_formula_and_trace() {
    let h = am(Family::D, 2, 2);
    let n = 2i32;
    let bar = |k: usize| 5 - k;
    let want = (1..=2).fold(NCPolynomial::zero(), |acc, k| {
        let kk = k as i32;
        &(&acc + &xx(1, k, 2, bar(k)).scale(&q(n - kk))) + &xx(1, bar(k), 2, k).scale(&q(kk - n))
    });
    let p12 = psi(&h, PsiRef(1, 2)).unwrap();
    assert_eq!(p12, want);
    assert_eq!(psi(&h, PsiRef(2, 1)).unwrap(), p12.scale(&q(-3)));
    let b = am(Family::B, 2, 2);
    assert_eq!(
        psi(&b, PsiRef(2, 1)).unwrap(),
        psi(&b, PsiRef(1, 2)).unwrap().scale(&q(-4))
    );
}

#[test]
fn diagonal_generator_through_phi_plus() {
    for n in 2..=4 {
        let h = build_sq(spec(Family::D, n)).unwrap();
        let ni = n as i32;
        let c = &q(1 - ni) * &(&q(ni - 1) + &q(1 - ni));
        let plus = phi_partial(&h, Partial::PhiPlus, PsiRef(1, 1), 1).unwrap();
        assert_eq!(psi(&h, PsiRef(1, 1)).unwrap(), plus.scale(&c), "D{n}");
    }
    let d2 = build_sq(spec(Family::D, 2)).unwrap();
    let want = &xx(1, 1, 1, 4).scale(&q(1)) + &xx(1, 2, 1, 3);
    assert_eq!(
        phi_partial(&d2, Partial::PhiPlus, PsiRef(1, 1), 1).unwrap(),
        want
    );
}

/// φ⁺_t and φ⁻_t differ by q^{2(n-t)}; the uniform factor q^{2n-2} is only right at t = 1.
#[test]
fn phi_plus_minus_ratio() {
    for n in 2..=4usize {
        let h = build_sq(spec(Family::D, n)).unwrap();
        for t in 1..=n {
            let plus = phi_partial(&h, Partial::PhiPlus, PsiRef(1, 1), t).unwrap();
            let minus = phi_partial(&h, Partial::PhiMinus, PsiRef(1, 1), t).unwrap();
            assert_eq!(plus, minus.scale(&q(2 * (n - t) as i32)), "D{n} t={t}");
            if t > 1 {
                assert_ne!(plus, minus.scale(&q(2 * n as i32 - 2)), "D{n} t={t}");
            }
        }
    }
}

#[test]
fn odd_correction_element() {
    let h = am(Family::B, 1, 1);
    let varphi = phi_partial(&h, Partial::Varphi, PsiRef(1, 1), 0).unwrap();
    let c = (&Scalar::one() - &q(-1))
        .checked_div(&Scalar::q_minus_qinv())
        .unwrap();
    let barpsi = phi_partial(&h, Partial::BarPsi, PsiRef(1, 1), 1).unwrap();
    let want = h
        .normal_form(&(&barpsi + &xx(1, 2, 1, 2).scale(&c)))
        .unwrap();
    assert_eq!(varphi, want);
    // Ψ^{(1,1)} = (1 + q^{1-2n}) φ^{(1,1)} at n = 1
    let p11 = psi(&h, PsiRef(1, 1)).unwrap();
    assert_eq!(p11, varphi.scale(&(&Scalar::one() + &q(-1))));
}

#[test]
fn gl_generator_commutator() {
    let h = build_akl(2, 2, 2).unwrap();
    let p = |i, b| psi(&h, PsiRef(i, b)).unwrap();
    let m = |a: &NCPolynomial, b: &NCPolynomial| h.multiply(a, b).unwrap();
    let lhs = &m(&p(2, 1), &p(1, 2)) - &m(&p(1, 2), &p(2, 1));
    assert_eq!(lhs, m(&p(1, 1), &p(2, 2)).scale(&Scalar::q_minus_qinv()));
    let want = &x(1, 1).concat(&y(1, 1)) + &x(1, 2).concat(&y(1, 2));
    assert_eq!(p(1, 1), want);
}

#[test]
fn single_copy_quadratic_invariant() {
    for (f, n) in [
        (Family::D, 2),
        (Family::D, 3),
        (Family::D, 4),
        (Family::B, 1),
        (Family::B, 2),
        (Family::C, 2),
    ] {
        let s = single_copy_suite(spec(f, n)).unwrap();
        assert!(s.all_pass(), "{f}{n}: {:?}", s.failures().next());
    }
}

/// Classical counts for O(N), N > m: bidegree (a, b) invariants of two vectors are
/// monomials p11^i p12^j p22^k with 2i + j = a, j + 2k = b.
fn orthogonal_count(a: usize, b: usize) -> usize {
    (0..=a.min(b))
        .filter(|j| (a - j).is_multiple_of(2) && (b - j).is_multiple_of(2))
        .count()
}

#[test]
fn fft_dimensions_two_copies() {
    for h in [am(Family::D, 2, 2), am(Family::B, 1, 2)] {
        for a in 0..=4usize {
            for b in 0..=(4 - a) {
                let p = fft_verify(&h, &[a, b]).unwrap();
                assert_eq!(p.invariants, orthogonal_count(a, b), "{h} d=({a},{b})");
                assert_eq!(
                    (p.span, p.contained),
                    (p.invariants, true),
                    "{h} d=({a},{b})"
                );
            }
        }
    }
    let c2 = am(Family::C, 2, 2);
    for (d, want) in [([1, 1], 1), ([2, 2], 1), ([2, 0], 0), ([1, 2], 0)] {
        let p = fft_verify(&c2, &d).unwrap();
        assert_eq!((p.invariants, p.span), (want, want), "{d:?}");
    }
    let d2 = am(Family::D, 2, 1);
    assert_eq!(fft_verify(&d2, &[3]).unwrap().invariants, 0);
}

#[test]
fn fft_mixed_algebra() {
    let h = build_akl(2, 2, 2).unwrap();
    let p = fft_verify(&h, &[1, 0, 1, 0]).unwrap();
    assert_eq!((p.invariants, p.span, p.contained), (1, 1, true));
    let p = fft_verify(&h, &[1, 1, 1, 1]).unwrap();
    assert_eq!((p.invariants, p.span, p.contained), (2, 2, true));
    let (suite, _) = fft_suite(&h, 3).unwrap();
    assert!(suite.all_pass());
}

#[test]
fn exterior_highest_weight_vectors() {
    let ext = build_exterior(2, 2).unwrap();
    let (pi, suite) = exterior_highest_weight(&ext, &[2, 1]).unwrap();
    assert_eq!(pi, x(1, 1).concat(&x(1, 2)).concat(&x(2, 1)));
    assert!(suite.all_pass());
    let (pi, suite) = exterior_highest_weight(&ext, &[]).unwrap();
    assert_eq!(pi, NCPolynomial::one());
    assert!(suite.all_pass());
}

#[test]
fn skew_duality() {
    for (m, n) in [(2, 2), (2, 3), (1, 3)] {
        for s in skew_duality_check(m, n).unwrap() {
            assert!(
                s.all_pass(),
                "{m}x{n} {}: {:?}",
                s.name,
                s.failures().next()
            );
        }
    }
}
