use qfft_core::algebras::{
    associativity_suite, build_akl, build_am, build_exterior, classical_limit_suite,
    flatness_suite, oracle_diff, oracle_equivalence_suite, Reading,
};
use qfft_core::{Family, LieTypeSpec};

fn spec(f: Family, n: usize) -> LieTypeSpec {
    LieTypeSpec::new(f, n).unwrap()
}

#[test]
fn presented_product_matches_braided_tensor_product() {
    for (f, n) in [(Family::D, 2), (Family::B, 1), (Family::C, 2)] {
        let h = build_am(spec(f, n), 2, false).unwrap();
        let s = oracle_equivalence_suite(&h, 3).unwrap();
        assert!(s.all_pass(), "{h}: {:?}", s.failures().next());
    }
}

#[test]
fn printed_cross_rules_against_the_oracle() {
    for (f, n) in [(Family::D, 2), (Family::B, 1), (Family::C, 2)] {
        let printed = oracle_diff(spec(f, n), Reading::Printed).unwrap();
        assert!(
            printed.failures().count() > 0,
            "{f}{n}: printed rules unexpectedly agree"
        );
    }
    for (f, ranks) in [(Family::D, 2..=4), (Family::B, 1..=3), (Family::C, 1..=4)] {
        for n in ranks {
            let s = oracle_diff(spec(f, n), Reading::Corrected).unwrap();
            assert!(s.all_pass(), "{f}{n}: {:?}", s.failures().next());
        }
    }
}

/// With the printed cross rules some overlaps do not resolve.
#[test]
fn printed_systems_are_not_confluent() {
    for (f, n) in [(Family::D, 2), (Family::B, 1), (Family::C, 2)] {
        let h = build_am(spec(f, n), 2, true).unwrap();
        let s = flatness_suite(&h, 2).unwrap();
        assert!(!s.all_pass(), "{h}");
    }
    let c1 = build_am(spec(Family::C, 1), 2, true).unwrap();
    assert!(flatness_suite(&c1, 3).unwrap().all_pass());
}

#[test]
fn flatness_grid() {
    let mut grid = Vec::new();
    for (f, n) in [
        (Family::D, 2),
        (Family::B, 1),
        (Family::C, 2),
        (Family::GL, 2),
    ] {
        for m in 1..=2 {
            grid.push(build_am(spec(f, n), m, false).unwrap());
        }
    }
    grid.push(build_akl(2, 2, 2).unwrap());
    for h in &grid {
        let s = flatness_suite(h, 4).unwrap();
        assert!(s.all_pass(), "{h}: {:?}", s.failures().next());
    }
    for (m, n) in [(2, 2), (2, 3)] {
        let h = build_exterior(m, n).unwrap();
        assert!(flatness_suite(&h, m * n).unwrap().all_pass(), "{h}");
    }
}

#[test]
fn classical_degeneration_and_associativity() {
    let mut grid = vec![build_akl(2, 2, 2).unwrap(), build_exterior(2, 3).unwrap()];
    for (f, n) in [
        (Family::D, 2),
        (Family::D, 3),
        (Family::B, 1),
        (Family::B, 2),
        (Family::C, 2),
        (Family::GL, 3),
    ] {
        grid.push(build_am(spec(f, n), 2, false).unwrap());
    }
    for h in &grid {
        assert!(classical_limit_suite(h).all_pass(), "{h}");
        assert!(associativity_suite(h).unwrap().all_pass(), "{h}");
    }
}
