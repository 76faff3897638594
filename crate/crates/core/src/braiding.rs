//! Ř on V⊗V from spectral data, its cablings, and braid/skein checks.

use std::collections::BTreeMap;

use crate::linalg::{inverse, rank, LinearOperator, SparseVec, TensorShape};
use crate::report::Suite;
use crate::rootdata::{
    natural_rep, Family, GenKind, GeneratorRef, LieTypeSpec, RepData, RootDataError,
};
use crate::scalar::Scalar;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidingError {
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error("listed vectors for {spec} fail to form a basis of V⊗V: {detail}")]
    NotABasis { spec: LieTypeSpec, detail: String },
}

#[derive(Debug, Clone)]
pub struct Summand {
    /// "s", "a" or "0"
    pub name: &'static str,
    pub eigenvalue: Scalar,
    pub vectors: Vec<SparseVec>,
}

#[derive(Debug, Clone)]
pub struct SpectralData {
    pub spec: LieTypeSpec,
    pub summands: Vec<Summand>,
}

/// Tensor-word vectors keyed by label tuples.
pub type TensorVec = BTreeMap<Vec<usize>, Scalar>;

pub fn tv_add(acc: &mut TensorVec, key: Vec<usize>, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&key) {
        Some(x) => {
            *x += &c;
            if x.is_zero() {
                acc.remove(&key);
            }
        }
        None => {
            acc.insert(key, c);
        }
    }
}

/// Applies a two-site operator at positions (p, p+1).
pub fn apply_local(op2: &LinearOperator, p: usize, v: &TensorVec) -> TensorVec {
    let sh = op2.domain;
    let mut out = TensorVec::new();
    for (t, c) in v {
        let col = sh.encode(&t[p..p + 2]);
        if let Some(img) = op2.column(col) {
            for (r, x) in img {
                let pair = sh.decode(*r);
                let mut nt = t.clone();
                nt[p] = pair[0];
                nt[p + 1] = pair[1];
                tv_add(&mut out, nt, c * x);
            }
        }
    }
    out
}

struct VecBuilder<'a> {
    spec: &'a LieTypeSpec,
    sh: TensorShape,
}

impl VecBuilder<'_> {
    fn v(&self, terms: &[(i32, i32, Scalar)]) -> SparseVec {
        let mut out = SparseVec::new();
        for (a, b, c) in terms {
            let k = self.sh.encode(&[self.spec.pos(*a), self.spec.pos(*b)]);
            crate::linalg::vec_add_scaled(
                &mut out,
                &Scalar::one(),
                &SparseVec::from([(k, c.clone())]),
            );
        }
        out
    }
}

fn q(e: i32) -> Scalar {
    Scalar::q_pow(e)
}

/// The invariant vector spanning L_0.
pub fn trivial_vector(spec: LieTypeSpec) -> Vec<(i32, i32, Scalar)> {
    let n = spec.rank as i32;
    let mut t = Vec::new();
    for i in 1..=n {
        let (ci, cmi) = match spec.family {
            Family::D => (q(n - i), q(i - n)),
            Family::B => (q(n - i), q(i - n - 1)),
            Family::C => (q(n - i + 1), -q(i - n - 1)),
            Family::GL => unreachable!("no invariant in V⊗V for GL"),
        };
        t.push((i, -i, ci));
        t.push((-i, i, cmi));
    }
    if spec.family == Family::B {
        t.push((0, 0, Scalar::one()));
    }
    t
}

/// Listed bases of the summands of V⊗V together with the Ř eigenvalues.
pub fn spectral_data(spec: LieTypeSpec) -> SpectralData {
    let n = spec.rank as i32;
    let b = VecBuilder {
        spec: &spec,
        sh: TensorShape::new(spec.dim_v(), 2),
    };
    let one = Scalar::one;
    let m1 = || -Scalar::one();
    let mut s = Vec::new();
    let mut a = Vec::new();
    let fam = spec.family;
    if fam == Family::GL {
        for i in 1..=n {
            s.push(b.v(&[(i, i, one())]));
            for j in i + 1..=n {
                s.push(b.v(&[(i, j, one()), (j, i, q(1))]));
                a.push(b.v(&[(i, j, one()), (j, i, -q(-1))]));
            }
        }
        return SpectralData {
            spec,
            summands: vec![
                Summand {
                    name: "s",
                    eigenvalue: q(1),
                    vectors: s,
                },
                Summand {
                    name: "a",
                    eigenvalue: -q(-1),
                    vectors: a,
                },
            ],
        };
    }
    // B treats v_{n+1} as v_0 in the pair lists; squares run over i ≤ n only,
    // since v_0⊗v_0 itself is not in L_{2ε_1}.
    let top = if fam == Family::B { n + 1 } else { n };
    let al = |i: i32| if i == n + 1 { 0 } else { i };
    for i in 1..=n {
        s.push(b.v(&[(i, i, one())]));
        s.push(b.v(&[(-i, -i, one())]));
    }
    for i in 1..=top {
        for j in i + 1..=top {
            let (x, y) = (al(i), al(j));
            s.push(b.v(&[(x, y, one()), (y, x, q(1))]));
            s.push(b.v(&[(-y, -x, one()), (-x, -y, q(1))]));
            a.push(b.v(&[(x, y, one()), (y, x, -q(-1))]));
            a.push(b.v(&[(-y, -x, one()), (-x, -y, -q(-1))]));
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                s.push(b.v(&[(i, -j, one()), (-j, i, q(1))]));
                a.push(b.v(&[(i, -j, one()), (-j, i, -q(-1))]));
            }
        }
    }
    match fam {
        Family::D | Family::B => {
            for i in 1..n {
                s.push(b.v(&[
                    (i, -i, q(-1)),
                    (-i, i, q(1)),
                    (i + 1, -i - 1, m1()),
                    (-i - 1, i + 1, m1()),
                ]));
            }
        }
        Family::C => {
            for i in 1..n {
                s.push(b.v(&[
                    (i + 1, -i - 1, one()),
                    (-i - 1, i + 1, one()),
                    (i, -i, -q(-1)),
                    (-i, i, -q(1)),
                ]));
            }
            s.push(b.v(&[(n, -n, q(-1)), (-n, n, q(1))]));
        }
        Family::GL => unreachable!(),
    }
    if fam == Family::B {
        s.push(b.v(&[(0, 0, q(1) + one()), (n, -n, -q(-1)), (-n, n, -q(1))]));
        a.push(b.v(&[(0, 0, q(1) - one()), (n, -n, m1()), (-n, n, one())]));
    }
    let generic_a_top = if fam == Family::D { n - 1 } else { n };
    for i in 1..generic_a_top {
        a.push(b.v(&[
            (i, -i, one()),
            (-i, i, m1()),
            (i + 1, -i - 1, -q(1)),
            (-i - 1, i + 1, q(-1)),
        ]));
    }
    if fam == Family::D {
        let m = n - 1;
        a.push(b.v(&[
            (m, -m, one()),
            (-m, m, m1()),
            (n, -n, -q(1)),
            (-n, n, q(-1)),
        ]));
        a.push(b.v(&[
            (m, -m, one()),
            (-m, m, m1()),
            (n, -n, q(-1)),
            (-n, n, -q(1)),
        ]));
    }
    let t = b.v(&trivial_vector(spec));
    let kappa = match fam {
        Family::D => q(1 - 2 * n),
        Family::B => q(-2 * n),
        Family::C => -q(-2 * n - 1),
        Family::GL => unreachable!(),
    };
    SpectralData {
        spec,
        summands: vec![
            Summand {
                name: "s",
                eigenvalue: q(1),
                vectors: s,
            },
            Summand {
                name: "a",
                eigenvalue: -q(-1),
                vectors: a,
            },
            Summand {
                name: "0",
                eigenvalue: kappa,
                vectors: vec![t],
            },
        ],
    }
}

#[derive(Debug, Clone)]
pub struct Projectors {
    pub ps: LinearOperator,
    pub pa: LinearOperator,
    pub p0: Option<LinearOperator>,
}

fn basis_change(data: &SpectralData) -> Result<(LinearOperator, LinearOperator), BraidingError> {
    let dim = data.spec.dim_v();
    let sh = TensorShape::new(dim, 2);
    let mut detail = Vec::new();
    let mut all = Vec::new();
    for s in &data.summands {
        let r = rank(&s.vectors);
        if r != s.vectors.len() {
            detail.push(format!(
                "summand {} has rank {r} < {}",
                s.name,
                s.vectors.len()
            ));
        }
        all.extend(s.vectors.iter().cloned());
    }
    if all.len() != sh.size() || rank(&all) != sh.size() {
        detail.push(format!(
            "{} vectors of total rank {} in dimension {}",
            all.len(),
            rank(&all),
            sh.size()
        ));
    }
    if !detail.is_empty() {
        return Err(BraidingError::NotABasis {
            spec: data.spec,
            detail: detail.join("; "),
        });
    }
    let bmat = LinearOperator::from_columns(sh, sh, |c| all[c].clone());
    let inv = inverse(&bmat).ok_or_else(|| BraidingError::NotABasis {
        spec: data.spec,
        detail: "singular basis matrix".into(),
    })?;
    Ok((bmat, inv))
}

fn spectral_operators(data: &SpectralData) -> Result<Vec<LinearOperator>, BraidingError> {
    let (bmat, inv) = basis_change(data)?;
    let sh = bmat.domain;
    let mut out = Vec::new();
    let mut offset = 0;
    for s in &data.summands {
        let range = offset..offset + s.vectors.len();
        offset = range.end;
        let mask = LinearOperator::from_columns(sh, sh, |c| {
            if range.contains(&c) {
                SparseVec::from([(c, Scalar::one())])
            } else {
                SparseVec::new()
            }
        });
        out.push(bmat.compose(&mask).compose(&inv));
    }
    Ok(out)
}

pub fn projectors(spec: LieTypeSpec) -> Result<Projectors, BraidingError> {
    let data = spectral_data(spec);
    let mut ops = spectral_operators(&data)?.into_iter();
    Ok(Projectors {
        ps: ops.next().unwrap(),
        pa: ops.next().unwrap(),
        p0: ops.next(),
    })
}

/// R = 1⊗1 + (q−1)Σ E_aa⊗E_aa + (q−q^{-1})Σ_{a<b} E_ab⊗E_ba on V⊗V for gl_n.
pub fn gl_r_matrix(n: usize) -> LinearOperator {
    gl_r_generic(n, &Scalar::q(), &Scalar::q_minus_qinv())
}

/// R^{-1} = 1⊗1 + (q^{-1}−1)Σ E_aa⊗E_aa − (q−q^{-1})Σ_{a<b} E_ab⊗E_ba.
pub fn gl_r_inverse(n: usize) -> LinearOperator {
    gl_r_generic(n, &Scalar::q_pow(-1), &-Scalar::q_minus_qinv())
}

fn gl_r_generic(n: usize, diag: &Scalar, off: &Scalar) -> LinearOperator {
    let sh = TensorShape::new(n, 2);
    LinearOperator::from_columns(sh, sh, |col| {
        let t = sh.decode(col);
        let (c, d) = (t[0], t[1]);
        let mut v = SparseVec::new();
        v.insert(col, if c == d { diag.clone() } else { Scalar::one() });
        if d < c {
            v.insert(sh.encode(&[d, c]), off.clone());
        }
        v
    })
}

pub fn flip(dim: usize) -> LinearOperator {
    let sh = TensorShape::new(dim, 2);
    LinearOperator::from_columns(sh, sh, |col| {
        let t = sh.decode(col);
        SparseVec::from([(sh.encode(&[t[1], t[0]]), Scalar::one())])
    })
}

pub fn rcheck(spec: LieTypeSpec) -> Result<LinearOperator, BraidingError> {
    if spec.family == Family::GL {
        let spec = LieTypeSpec::new(spec.family, spec.rank)?;
        return Ok(flip(spec.dim_v()).compose(&gl_r_matrix(spec.rank)));
    }
    let data = spectral_data(LieTypeSpec::new(spec.family, spec.rank)?);
    let ops = spectral_operators(&data)?;
    let sh = ops[0].domain;
    let mut r = LinearOperator::zero(sh, sh);
    for (op, s) in ops.iter().zip(&data.summands) {
        r = r.add(&op.scale(&s.eigenvalue));
    }
    Ok(r)
}

/// Image of one basis tensor of V^{⊗k}⊗V^{⊗l} under the cabled braiding.
pub fn cabled_apply(r: &LinearOperator, k: usize, l: usize, word: &[usize]) -> TensorVec {
    let mut v = TensorVec::from([(word.to_vec(), Scalar::one())]);
    for s in 0..l {
        for p in (s..k + s).rev() {
            v = apply_local(r, p, &v);
        }
    }
    v
}

/// P∘R on V^{⊗k}⊗V^{⊗l} → V^{⊗l}⊗V^{⊗k}, built from k·l elementary Ř's.
pub fn rcheck_cabled(
    spec: LieTypeSpec,
    k: usize,
    l: usize,
) -> Result<LinearOperator, BraidingError> {
    let r = rcheck(spec)?;
    Ok(cable(&r, k, l))
}

pub fn cable(r: &LinearOperator, k: usize, l: usize) -> LinearOperator {
    let sh = TensorShape::new(r.domain.dim, k + l);
    LinearOperator::from_columns(sh, sh, |col| {
        cabled_apply(r, k, l, &sh.decode(col))
            .into_iter()
            .map(|(t, c)| (sh.encode(&t), c))
            .collect()
    })
}

/// The coproduct image of a generator on V^{⊗arity}.
pub fn tensor_action(rep: &RepData, g: GeneratorRef, arity: usize) -> LinearOperator {
    let id = LinearOperator::identity(rep.shape());
    let i = g.index;
    let (x, left, right): (LinearOperator, LinearOperator, LinearOperator) = match g.kind {
        GenKind::E => (rep.e_mats[i - 1].clone(), id.clone(), rep.k_simple(i)),
        GenKind::F => (
            rep.f_mats[i - 1].clone(),
            rep.diag_q(&rep.simple_roots[i - 1], -1),
            id.clone(),
        ),
        GenKind::K | GenKind::KInv => {
            let sign = if g.kind == GenKind::K { 1 } else { -1 };
            let k = rep.diag_q(&rep.k_weights[i - 1], sign);
            return power(&k, arity);
        }
        GenKind::Sigma => {
            let s = crate::rootdata::sigma_candidate(rep.spec, None).expect("sigma for B/D");
            return power(&s, arity);
        }
    };
    let mut total: Option<LinearOperator> = None;
    for j in 0..arity {
        let mut term: Option<LinearOperator> = None;
        for p in 0..arity {
            let f = if p < j {
                &left
            } else if p == j {
                &x
            } else {
                &right
            };
            term = Some(match term {
                None => f.clone(),
                Some(t) => t.kron(f),
            });
        }
        let term = term.unwrap();
        total = Some(match total {
            None => term,
            Some(t) => t.add(&term),
        });
    }
    total.unwrap()
}

fn power(op: &LinearOperator, arity: usize) -> LinearOperator {
    let mut acc = op.clone();
    for _ in 1..arity {
        acc = acc.kron(op);
    }
    acc
}

fn all_generators(rep: &RepData) -> Vec<GeneratorRef> {
    crate::rootdata::invariance_generators(rep)
}

pub fn kappa(spec: LieTypeSpec) -> Option<Scalar> {
    let n = spec.rank as i32;
    match spec.family {
        Family::D => Some(q(1 - 2 * n)),
        Family::B => Some(q(-2 * n)),
        Family::C => Some(-q(-2 * n - 1)),
        Family::GL => None,
    }
}

/// Braid identity, minimal polynomial, coproduct commutation, projector algebra.
pub fn verify_braid_and_skein(spec: LieTypeSpec) -> Suite {
    let mut suite = Suite::new(format!("braiding {spec}"));
    let rep = match natural_rep(spec) {
        Ok(r) => r,
        Err(e) => {
            suite.push("natural module", e.to_string(), false);
            return suite;
        }
    };
    let r = match rcheck(spec) {
        Ok(r) => r,
        Err(e) => {
            suite.push("spectral bases", e.to_string(), false);
            return suite;
        }
    };
    let dim = rep.dim;
    let sh1 = rep.shape();
    let sh2 = TensorShape::new(dim, 2);
    let id1 = LinearOperator::identity(sh1);
    let id2 = LinearOperator::identity(sh2);
    let r1 = r.kron(&id1);
    let r2 = id1.kron(&r);
    let lhs = r1.compose(&r2).compose(&r1);
    let rhs = r2.compose(&r1).compose(&r2);
    suite.push(
        "braid relation R1 R2 R1 = R2 R1 R2",
        format!("{spec} on V^3"),
        lhs == rhs,
    );

    let mut poly = r.sub(&id2.scale(&q(1))).compose(&r.add(&id2.scale(&q(-1))));
    let label = match kappa(spec) {
        Some(k) => {
            poly = poly.compose(&r.sub(&id2.scale(&k)));
            format!("(R - q)(R + q^-1)(R - {k}) = 0")
        }
        None => "(R - q)(R + q^-1) = 0".to_string(),
    };
    suite.push(
        "minimal polynomial",
        format!("{spec}: {label}"),
        poly.is_zero(),
    );

    for g in all_generators(&rep) {
        let d = tensor_action(&rep, g, 2);
        suite.push(
            "R commutes with coproduct",
            format!("{spec} {g}"),
            r.compose(&d) == d.compose(&r),
        );
    }
    let c21 = cable(&r, 2, 1);
    for g in all_generators(&rep) {
        let d = tensor_action(&rep, g, 3);
        suite.push(
            "cabled R(2,1) intertwines coproduct",
            format!("{spec} {g}"),
            c21.compose(&d) == d.compose(&c21),
        );
    }
    let c12 = cable(&r, 1, 2);
    let c22 = cable(&r, 2, 2);
    let id = |k: usize| LinearOperator::identity(TensorShape::new(dim, k));
    // moving two strands past two = (id_1 ⊗ R(2,1)) ∘ (R(2,1) ⊗ id_1)
    let coherent = id(1).kron(&c21).compose(&c21.kron(&id(1))) == c22;
    suite.push(
        "cabling coherence R(2,2) from R(2,1)",
        format!("{spec}"),
        coherent,
    );
    let coherent12 = c12 == id1.kron(&r).compose(&r.kron(&id1));
    suite.push("cabling coherence R(1,2)", format!("{spec}"), coherent12);

    if let Ok(p) = projectors(spec) {
        let mut ops = vec![("s", &p.ps), ("a", &p.pa)];
        if let Some(p0) = &p.p0 {
            ops.push(("0", p0));
        }
        let data = spectral_data(spec);
        let mut sum = LinearOperator::zero(sh2, sh2);
        for (idx, (name, op)) in ops.iter().enumerate() {
            suite.push(
                "projector idempotent",
                format!("{spec} P_{name}"),
                op.compose(op) == **op,
            );
            for (name2, op2) in ops.iter().skip(idx + 1) {
                suite.push(
                    "projectors orthogonal",
                    format!("{spec} P_{name} P_{name2}"),
                    op.compose(op2).is_zero() && op2.compose(op).is_zero(),
                );
            }
            let ev = &data.summands[idx].eigenvalue;
            suite.push(
                "R restricted to summand is scalar",
                format!("{spec} P_{name}: {ev}"),
                r.compose(op) == op.scale(ev),
            );
            sum = sum.add(op);
        }
        suite.push("projectors sum to identity", format!("{spec}"), sum == id2);
    }
    if spec.family != Family::GL {
        let b = VecBuilder {
            spec: &spec,
            sh: sh2,
        };
        let t = b.v(&trivial_vector(spec));
        let k = kappa(spec).unwrap();
        suite.push(
            "R T = kappa T",
            format!("{spec}"),
            r.apply(&t) == crate::linalg::vec_scale(&t, &k),
        );
    }
    suite
}

/// Ranks of the projector images, in the order (s, a, 0).
pub fn projector_ranks(spec: LieTypeSpec) -> Vec<usize> {
    spectral_data(spec)
        .summands
        .iter()
        .map(|s| rank(&s.vectors))
        .collect()
}

/// The trivial vector T as a sparse vector in V⊗V.
pub fn trivial_sparse(spec: LieTypeSpec) -> SparseVec {
    let b = VecBuilder {
        spec: &spec,
        sh: TensorShape::new(spec.dim_v(), 2),
    };
    b.v(&trivial_vector(spec))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(f: Family, n: usize) -> LieTypeSpec {
        LieTypeSpec::new(f, n).unwrap()
    }

    #[test]
    fn d2_projector_ranks() {
        assert_eq!(projector_ranks(spec(Family::D, 2)), vec![9, 6, 1]);
    }

    #[test]
    fn gl2_rcheck_entries() {
        let r = rcheck(spec(Family::GL, 2)).unwrap();
        let sh = r.domain;
        let img = r.apply(&SparseVec::from([(sh.encode(&[2, 1]), Scalar::one())]));
        let want = SparseVec::from([
            (sh.encode(&[1, 2]), Scalar::one()),
            (sh.encode(&[2, 1]), Scalar::q_minus_qinv()),
        ]);
        assert_eq!(img, want);
        let img = r.apply(&SparseVec::from([(sh.encode(&[1, 1]), Scalar::one())]));
        assert_eq!(img, SparseVec::from([(sh.encode(&[1, 1]), Scalar::q())]));
    }

    #[test]
    fn cabled_base_case() {
        let s = spec(Family::D, 2);
        assert_eq!(rcheck_cabled(s, 1, 1).unwrap(), rcheck(s).unwrap());
    }

    #[test]
    fn gl_cabling_matches_r13_r23() {
        let n = 2;
        let r = gl_r_matrix(n);
        let id = LinearOperator::identity(TensorShape::new(n, 1));
        let p12 = flip(n).kron(&id);
        let p23 = id.kron(&flip(n));
        let r23 = id.kron(&r);
        let r13 = p23.compose(&r.kron(&id)).compose(&p23);
        // full flip (a⊗b)⊗c ↦ c⊗(a⊗b)
        let cyc = p12.compose(&p23);
        let want = cyc.compose(&r13).compose(&r23);
        assert_eq!(rcheck_cabled(spec(Family::GL, 2), 2, 1).unwrap(), want);
    }

    #[test]
    fn braid_suites_small() {
        for (f, n) in [
            (Family::D, 2),
            (Family::B, 1),
            (Family::C, 2),
            (Family::GL, 2),
        ] {
            let s = verify_braid_and_skein(spec(f, n));
            let bad: Vec<_> = s.failures().collect();
            assert!(bad.is_empty(), "{f}{n}: {bad:?}");
        }
    }
}
