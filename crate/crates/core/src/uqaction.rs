//! U_q action on presented algebras via the coproduct, weights, and exact
//! invariant subspaces.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::algebras::{AlgebraHandle, AlgebraKind};
use crate::braiding::{tensor_action, trivial_vector};
use crate::linalg::{LinearOperator, Rref, SparseVec, TensorShape};
use crate::ncpoly::{Letter, LetterKind, NCPolynomial, NcError, Word};
use crate::report::Suite;
use crate::rootdata::{
    invariance_generators, natural_rep, sigma_candidate, Family, GenKind, GeneratorRef,
    LieTypeSpec, RepData, RootDataError, Side,
};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error(transparent)]
    Rewrite(#[from] NcError),
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error("{0}")]
    Unsupported(String),
}

fn side_rep(h: &AlgebraHandle, side: Side) -> Result<&RepData, ActionError> {
    match side {
        Side::Primary => Ok(&h.rep),
        Side::Secondary => h
            .row_rep
            .as_ref()
            .ok_or_else(|| ActionError::Unsupported(format!("{h} has no secondary action"))),
    }
}

fn check_index(rep: &RepData, g: GeneratorRef) -> Result<(), ActionError> {
    let bound = match g.kind {
        GenKind::E | GenKind::F => rep.chevalley_rank(),
        GenKind::K | GenKind::KInv => rep.k_count(),
        GenKind::Sigma => {
            return match rep.spec.family {
                Family::B | Family::D => Ok(()),
                _ => Err(ActionError::Unsupported(format!(
                    "sigma is not defined for {}",
                    rep.spec
                ))),
            }
        }
    };
    if g.index == 0 || g.index > bound {
        return Err(ActionError::Unsupported(format!(
            "{g} out of range for {}",
            rep.spec
        )));
    }
    Ok(())
}

/// Weight of a letter in the ε-basis of the acting side.
pub fn letter_weight(h: &AlgebraHandle, l: &Letter, side: Side) -> Vec<i32> {
    match side {
        Side::Primary => {
            let w = &h.rep.weights[l.label() - 1];
            match l.kind {
                LetterKind::X => w.clone(),
                LetterKind::Y => w.iter().map(|x| -x).collect(),
            }
        }
        Side::Secondary => h
            .row_rep
            .as_ref()
            .map_or_else(Vec::new, |r| r.weights[l.factor() - 1].clone()),
    }
}

pub fn weight(h: &AlgebraHandle, w: &Word, side: Side) -> Vec<i32> {
    let dim = side_rep(h, side).map_or(0, |r| r.weights.first().map_or(0, Vec::len));
    w.letters().iter().fold(vec![0; dim], |mut acc, l| {
        for (a, x) in acc.iter_mut().zip(letter_weight(h, l, side)) {
            *a += x;
        }
        acc
    })
}

/// π(g) on V for e, f and σ.
fn generator_matrix(rep: &RepData, g: GeneratorRef) -> Result<LinearOperator, ActionError> {
    Ok(match g.kind {
        GenKind::E => rep.e_mats[g.index - 1].clone(),
        GenKind::F => rep.f_mats[g.index - 1].clone(),
        GenKind::Sigma => sigma_candidate(rep.spec, None)?,
        GenKind::K | GenKind::KInv => unreachable!("k acts diagonally"),
    })
}

/// π(S(g)): S(e) = -e k^-1, S(f) = -k f, S(σ) = σ.
fn antipode_matrix(rep: &RepData, g: GeneratorRef) -> Result<LinearOperator, ActionError> {
    let m = generator_matrix(rep, g)?;
    let alpha = || &rep.simple_roots[g.index - 1];
    Ok(match g.kind {
        GenKind::E => m.compose(&rep.diag_q(alpha(), -1)).scale(&-Scalar::one()),
        GenKind::F => rep.diag_q(alpha(), 1).compose(&m).scale(&-Scalar::one()),
        _ => m,
    })
}

/// Image of a single letter under e, f or σ.
pub fn letter_action(
    h: &AlgebraHandle,
    g: GeneratorRef,
    l: &Letter,
) -> Result<Vec<(Scalar, Letter)>, ActionError> {
    let rep = side_rep(h, g.side)?;
    check_index(rep, g)?;
    let sh = TensorShape::new(rep.dim, 1);
    let label = |k: usize| sh.decode(k)[0];
    Ok(match (g.side, l.kind) {
        (Side::Primary, LetterKind::X) => {
            let m = generator_matrix(rep, g)?;
            m.column(sh.encode(&[l.label()]))
                .into_iter()
                .flatten()
                .map(|(r, c)| (c.clone(), l.with_label(label(*r))))
                .collect()
        }
        (Side::Primary, LetterKind::Y) => {
            let m = antipode_matrix(rep, g)?;
            let row = sh.encode(&[l.label()]);
            m.columns()
                .filter_map(|(c, col)| col.get(&row).map(|x| (x.clone(), l.with_label(label(*c)))))
                .collect()
        }
        (Side::Secondary, _) => {
            let m = generator_matrix(rep, g)?;
            m.column(sh.encode(&[l.factor()]))
                .into_iter()
                .flatten()
                .map(|(r, c)| {
                    (
                        c.clone(),
                        Letter {
                            factor: label(*r) as u16,
                            ..*l
                        },
                    )
                })
                .collect()
        }
    })
}

/// g·p by the coproduct Leibniz rule, returned in normal form.
pub fn act(
    h: &AlgebraHandle,
    g: GeneratorRef,
    p: &NCPolynomial,
) -> Result<NCPolynomial, ActionError> {
    let rep = side_rep(h, g.side)?;
    check_index(rep, g)?;
    let mut images: HashMap<Letter, Vec<(Scalar, Letter)>> = HashMap::new();
    let mut image = |l: &Letter| -> Result<Vec<(Scalar, Letter)>, ActionError> {
        if let Some(v) = images.get(l) {
            return Ok(v.clone());
        }
        let v = letter_action(h, g, l)?;
        images.insert(*l, v.clone());
        Ok(v)
    };
    let mut out = NCPolynomial::zero();
    for (w, c) in p.terms() {
        let ls = w.letters();
        let wts: Vec<Vec<i32>> = ls.iter().map(|l| letter_weight(h, l, g.side)).collect();
        match g.kind {
            GenKind::K | GenKind::KInv => {
                let s = if g.kind == GenKind::K { 1 } else { -1 };
                let e: i32 = wts.iter().map(|wt| rep.k_exponent(g.index, wt)).sum();
                out.add_term(w.clone(), c * &Scalar::q_pow(s * e));
            }
            GenKind::Sigma => {
                let mut acc = vec![(c.clone(), Vec::new())];
                for l in ls {
                    let img = image(l)?;
                    acc = acc
                        .into_iter()
                        .flat_map(|(x, pre): (Scalar, Vec<Letter>)| {
                            img.iter().map(move |(y, nl)| {
                                let mut v = pre.clone();
                                v.push(*nl);
                                (&x * y, v)
                            })
                        })
                        .collect();
                }
                for (x, v) in acc {
                    out.add_term(Word(v), x);
                }
            }
            GenKind::E | GenKind::F => {
                let ex: Vec<i32> = wts
                    .iter()
                    .map(|wt| rep.k_exponent_for(g.index, wt))
                    .collect();
                for (k, l) in ls.iter().enumerate() {
                    let shift = if g.kind == GenKind::E {
                        ex[k + 1..].iter().sum::<i32>()
                    } else {
                        -ex[..k].iter().sum::<i32>()
                    };
                    let factor = c * &Scalar::q_pow(shift);
                    for (x, nl) in image(l)? {
                        let mut v = ls.to_vec();
                        v[k] = nl;
                        out.add_term(Word(v), &factor * &x);
                    }
                }
            }
        }
    }
    Ok(h.normal_form(&out)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantReport {
    pub element: String,
    /// Per generator: g·p − ε(g)p, rendered; empty when zero.
    pub residuals: Vec<(String, String)>,
    pub verdict: bool,
}

/// Checks e_i p = f_i p = 0 and k p = p on the primary side.
pub fn is_invariant(
    h: &AlgebraHandle,
    p: &NCPolynomial,
    element: &str,
) -> Result<InvariantReport, ActionError> {
    let mut residuals = Vec::new();
    for g in invariance_generators(&h.rep) {
        let img = act(h, g, p)?;
        let res = if g.kind == GenKind::K { &img - p } else { img };
        residuals.push((
            g.to_string(),
            if res.is_zero() {
                String::new()
            } else {
                res.to_string()
            },
        ));
    }
    let verdict = residuals.iter().all(|(_, r)| r.is_empty());
    Ok(InvariantReport {
        element: element.to_string(),
        residuals,
        verdict,
    })
}

/// Basis of the invariants in the multidegree-d component.
///
/// Only weight-zero words can carry invariants, so the k-conditions are
/// imposed by restriction and e_i, f_i give the linear system.
pub fn invariant_basis(h: &AlgebraHandle, d: &[usize]) -> Result<Vec<NCPolynomial>, ActionError> {
    let zero_weight: Vec<Word> = h
        .graded_words(d)
        .into_iter()
        .filter(|w| weight(h, w, Side::Primary).iter().all(|x| *x == 0))
        .collect();
    if zero_weight.is_empty() {
        return Ok(Vec::new());
    }
    let gens: Vec<GeneratorRef> = (1..=h.rep.chevalley_rank())
        .flat_map(|i| [GeneratorRef::e(i), GeneratorRef::f(i)])
        .collect();
    let mut rows: BTreeMap<(usize, Word), SparseVec> = BTreeMap::new();
    for (col, w) in zero_weight.iter().enumerate() {
        let p = NCPolynomial::from_word(w.clone());
        for (gi, g) in gens.iter().enumerate() {
            for (u, c) in act(h, *g, &p)?.into_terms() {
                rows.entry((gi, u)).or_default().insert(col, c);
            }
        }
    }
    let mut rref = Rref::new();
    for row in rows.values() {
        rref.insert(row);
    }
    Ok(rref
        .nullspace(zero_weight.len())
        .iter()
        .map(|v| NCPolynomial::from_sparse(v, &zero_weight))
        .collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct PairVector {
    pub spec: LieTypeSpec,
    /// (left alias, right alias, coefficient).
    pub terms: Vec<(i32, i32, Scalar)>,
    /// c_i c_{-i}^{-1} q^{-(2ρ, λ_i)}, common to all i when the check passes.
    pub constant: Option<Scalar>,
}

/// The invariant T ∈ V⊗V with its invariance and normalization checks.
pub fn invariant_pair_vector(spec: LieTypeSpec) -> Result<(PairVector, Suite), ActionError> {
    if spec.family == Family::GL {
        return Err(ActionError::Unsupported(
            "V⊗V has no invariant for GL".into(),
        ));
    }
    let rep = natural_rep(spec)?;
    let terms = trivial_vector(spec);
    let sh = TensorShape::new(rep.dim, 2);
    let t: SparseVec = terms
        .iter()
        .map(|(a, b, c)| (sh.encode(&[spec.pos(*a), spec.pos(*b)]), c.clone()))
        .collect();
    let mut suite = Suite::new(format!("invariant pair vector {spec}"));
    for g in invariance_generators(&rep) {
        let img = tensor_action(&rep, g, 2).apply(&t);
        let ok = if g.kind == GenKind::K {
            img == t
        } else {
            img.is_empty()
        };
        suite.push(
            "T is invariant under the coproduct",
            format!("{spec} {g}"),
            ok,
        );
    }
    let coeff = |a: i32, b: i32| {
        terms
            .iter()
            .find(|(x, y, _)| *x == a && *y == b)
            .map(|(_, _, c)| c.clone())
            .unwrap_or_else(Scalar::zero)
    };
    let mut constants = Vec::new();
    let zero_weight = spec.family == Family::B;
    for i in (if zero_weight { 0 } else { 1 })..=spec.rank as i32 {
        let ratio = coeff(i, -i)
            .checked_div(&coeff(-i, i))
            .expect("T pairs every label with its partner");
        constants.push(&ratio * &Scalar::q_pow(-rep.rho_pairing(spec.pos(i))));
    }
    let constant = constants.first().cloned();
    let same = constants.windows(2).all(|w| w[0] == w[1]);
    suite.push(
        "c_i c_-i^-1 q^-(2rho, lambda_i) is independent of i",
        format!(
            "{spec}: {}",
            constant.as_ref().map_or("-".into(), |c| c.to_string())
        ),
        same,
    );
    if zero_weight {
        suite.push(
            "normalization constant is 1 when zero is a weight",
            spec.to_string(),
            constant.as_ref().is_some_and(Scalar::is_one),
        );
    }
    Ok((
        PairVector {
            spec,
            terms,
            constant: same.then_some(constant).flatten(),
        },
        suite,
    ))
}

/// Leibniz compatibility with the product, weight additivity and the
/// [e_i, f_i] relation, checked on all generator pairs.
pub fn module_algebra_suite(h: &AlgebraHandle, side: Side) -> Result<Suite, ActionError> {
    let rep = side_rep(h, side)?;
    let mut suite = Suite::new(format!("module algebra {h} ({side:?})"));
    let letters: Vec<NCPolynomial> = h
        .alphabet()
        .letters()
        .iter()
        .map(|l| NCPolynomial::letter(*l))
        .collect();
    for i in 1..=rep.chevalley_rank() {
        let (e, f) = (GeneratorRef::e(i).on(side), GeneratorRef::f(i).on(side));
        let kmu = |p: &NCPolynomial, sign: i32| -> NCPolynomial {
            NCPolynomial::from_terms(p.terms().map(|(w, c)| {
                let ex: i32 = w
                    .letters()
                    .iter()
                    .map(|l| rep.k_exponent_for(i, &letter_weight(h, l, side)))
                    .sum();
                (w.clone(), c * &Scalar::q_pow(sign * ex))
            }))
        };
        let mut bad_leibniz = Vec::new();
        let mut bad_ladder = Vec::new();
        for x in &letters {
            for y in &letters {
                let xy = h.multiply(x, y)?;
                let lhs_e = act(h, e, &xy)?;
                let rhs_e =
                    &h.multiply(&act(h, e, x)?, &kmu(y, 1))? + &h.multiply(x, &act(h, e, y)?)?;
                let lhs_f = act(h, f, &xy)?;
                let rhs_f =
                    &h.multiply(&act(h, f, x)?, y)? + &h.multiply(&kmu(x, -1), &act(h, f, y)?)?;
                if lhs_e != rhs_e || lhs_f != rhs_f {
                    bad_leibniz.push(xy.to_string());
                }
                let ef = &act(h, e, &act(h, f, &xy)?)? - &act(h, f, &act(h, e, &xy)?)?;
                let want = (&kmu(&xy, 1) - &kmu(&xy, -1))
                    .scale(&rep.comm_denoms[i - 1].inv().expect("nonzero denominator"));
                if ef != want {
                    bad_ladder.push(xy.to_string());
                }
            }
        }
        let n = letters.len() * letters.len();
        suite.push_residual(
            "g(xy) agrees with the coproduct expansion",
            format!("{h} index {i}: {n} letter pairs"),
            (!bad_leibniz.is_empty()).then(|| bad_leibniz.join(", ")),
        );
        suite.push_residual(
            "[e_i, f_i] acts as (k_i - k_i^-1)/(q_i - q_i^-1)",
            format!("{h} index {i}: {n} letter pairs"),
            (!bad_ladder.is_empty()).then(|| bad_ladder.join(", ")),
        );
    }
    let mut bad_weight = Vec::new();
    for x in h.alphabet().letters() {
        for y in h.alphabet().letters() {
            let want: Vec<i32> = letter_weight(h, x, side)
                .iter()
                .zip(letter_weight(h, y, side))
                .map(|(a, b)| a + b)
                .collect();
            let p = h.multiply(&NCPolynomial::letter(*x), &NCPolynomial::letter(*y))?;
            if p.terms().any(|(w, _)| weight(h, w, side) != want) {
                bad_weight.push(format!("{x}*{y}"));
            }
        }
    }
    suite.push_residual(
        "weights are additive through straightening",
        h.to_string(),
        (!bad_weight.is_empty()).then(|| bad_weight.join(", ")),
    );
    Ok(suite)
}

/// Which sides act on the handle.
pub fn sides(h: &AlgebraHandle) -> Vec<Side> {
    match h.kind {
        AlgebraKind::Exterior { .. } => vec![Side::Primary, Side::Secondary],
        _ => vec![Side::Primary],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{build_akl, build_am, build_exterior, build_sq, x, y};

    fn spec(f: Family, n: usize) -> LieTypeSpec {
        LieTypeSpec::new(f, n).unwrap()
    }

    #[test]
    fn d2_e1_on_letters() {
        let h = build_sq(spec(Family::D, 2)).unwrap();
        // v_2 = position 2, v_1 = 1, v_{-1} = 4, v_{-2} = 3
        assert_eq!(act(&h, GeneratorRef::e(1), &x(1, 2)).unwrap(), x(1, 1));
        assert_eq!(
            act(&h, GeneratorRef::e(1), &x(1, 4)).unwrap(),
            x(1, 3).scale(&-Scalar::one())
        );
    }

    #[test]
    fn gl_e1_on_matrix_coordinate() {
        let h = build_am(spec(Family::GL, 2), 1, false).unwrap();
        assert_eq!(act(&h, GeneratorRef::e(1), &x(1, 2)).unwrap(), x(1, 1));
    }

    #[test]
    fn weights_of_letters() {
        let h = build_akl(2, 1, 1).unwrap();
        assert_eq!(
            weight(&h, &Word(vec![Letter::x(1, 2)]), Side::Primary),
            vec![0, 1]
        );
        assert_eq!(
            weight(&h, &Word(vec![Letter::y(1, 2)]), Side::Primary),
            vec![0, -1]
        );
    }

    #[test]
    fn gl_pairing_is_invariant() {
        let h = build_akl(2, 1, 1).unwrap();
        let psi =
            &h.multiply(&x(1, 1), &y(1, 1)).unwrap() + &h.multiply(&x(1, 2), &y(1, 2)).unwrap();
        assert!(is_invariant(&h, &psi, "Psi_11").unwrap().verdict);
        assert!(!is_invariant(&h, &x(1, 1), "X_11").unwrap().verdict);
    }

    #[test]
    fn d2_quadratic_invariants() {
        let h = build_sq(spec(Family::D, 2)).unwrap();
        assert_eq!(invariant_basis(&h, &[2]).unwrap().len(), 1);
        assert_eq!(invariant_basis(&h, &[3]).unwrap().len(), 0);
        let c = build_sq(spec(Family::C, 2)).unwrap();
        assert_eq!(invariant_basis(&c, &[2]).unwrap().len(), 0);
    }

    #[test]
    fn pair_vectors() {
        for (f, n) in [
            (Family::D, 2),
            (Family::B, 1),
            (Family::B, 2),
            (Family::C, 2),
        ] {
            let (pv, suite) = invariant_pair_vector(spec(f, n)).unwrap();
            assert!(
                suite.all_pass(),
                "{f}{n}: {:?}",
                suite.failures().collect::<Vec<_>>()
            );
            if f == Family::B {
                assert!(pv.constant.unwrap().is_one());
            }
        }
    }

    #[test]
    fn module_algebra_laws() {
        for h in [
            build_am(spec(Family::D, 2), 2, false).unwrap(),
            build_am(spec(Family::B, 1), 2, false).unwrap(),
            build_akl(2, 1, 1).unwrap(),
        ] {
            let s = module_algebra_suite(&h, Side::Primary).unwrap();
            assert!(s.all_pass(), "{h}: {:?}", s.failures().collect::<Vec<_>>());
        }
        let ext = build_exterior(2, 2).unwrap();
        for side in sides(&ext) {
            let s = module_algebra_suite(&ext, side).unwrap();
            assert!(
                s.all_pass(),
                "{ext}: {:?}",
                s.failures().collect::<Vec<_>>()
            );
        }
    }
}
