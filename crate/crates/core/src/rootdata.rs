//! Natural modules of U_q(gl_n), U_q(so_{2n+1}), U_q(sp_{2n}), U_q(so_{2n}).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{LinearOperator, TensorShape};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    GL,
    B,
    C,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::GL => "GL",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        })
    }
}

impl FromStr for Family {
    type Err = RootDataError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "GL" | "A" => Ok(Family::GL),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            _ => Err(RootDataError::UnknownFamily(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootDataError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("rank {rank} out of range for type {family}")]
    RankOutOfRange { family: Family, rank: usize },
    #[error("partition {0:?} has more than {1} parts")]
    PartitionTooLong(Vec<usize>, usize),
    #[error("not a partition: {0:?}")]
    NotAPartition(Vec<usize>),
    #[error("operation not defined for type {0}")]
    Unsupported(Family),
    #[error("sigma fails to intertwine generator {0}")]
    SigmaValidation(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LieTypeSpec {
    pub family: Family,
    pub rank: usize,
}

impl LieTypeSpec {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootDataError> {
        let min = if family == Family::D { 2 } else { 1 };
        if rank < min {
            return Err(RootDataError::RankOutOfRange { family, rank });
        }
        Ok(LieTypeSpec { family, rank })
    }

    pub fn dim_v(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::GL => n,
            Family::B => 2 * n + 1,
            Family::C | Family::D => 2 * n,
        }
    }

    pub fn is_orthosymplectic(&self) -> bool {
        self.family != Family::GL
    }

    /// Position 1..dimV of the semantic basis vector v_alias.
    pub fn pos(&self, alias: i32) -> usize {
        let n = self.rank as i32;
        let p = match self.family {
            Family::GL => alias,
            Family::B if alias == 0 => n + 1,
            Family::B if alias < 0 => 2 * n + 2 + alias,
            Family::C | Family::D if alias < 0 => 2 * n + 1 + alias,
            _ => alias,
        };
        assert!(
            p >= 1 && p as usize <= self.dim_v(),
            "label v_{alias} out of range"
        );
        p as usize
    }

    /// Semantic index of position a.
    pub fn alias(&self, a: usize) -> i32 {
        let n = self.rank as i32;
        let a = a as i32;
        match self.family {
            Family::GL => a,
            Family::B if a == n + 1 => 0,
            Family::B if a > n + 1 => a - 2 * n - 2,
            Family::C | Family::D if a > n => a - 2 * n - 1,
            _ => a,
        }
    }

    /// Position of the dual partner v_{-alias}.
    pub fn partner(&self, a: usize) -> usize {
        self.pos(-self.alias(a))
    }
}

impl fmt::Display for LieTypeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GenKind {
    E,
    F,
    K,
    KInv,
    Sigma,
}

/// `Primary` acts on generator labels. `Secondary` is the U_q(gl_m) factor acting on
/// row indices of the exterior algebra.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default,
)]
pub enum Side {
    #[default]
    Primary,
    Secondary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GeneratorRef {
    pub kind: GenKind,
    pub index: usize,
    #[serde(default)]
    pub side: Side,
}

impl GeneratorRef {
    pub fn e(i: usize) -> Self {
        GeneratorRef {
            kind: GenKind::E,
            index: i,
            side: Side::Primary,
        }
    }
    pub fn f(i: usize) -> Self {
        GeneratorRef {
            kind: GenKind::F,
            index: i,
            side: Side::Primary,
        }
    }
    pub fn k(i: usize) -> Self {
        GeneratorRef {
            kind: GenKind::K,
            index: i,
            side: Side::Primary,
        }
    }
    pub fn k_inv(i: usize) -> Self {
        GeneratorRef {
            kind: GenKind::KInv,
            index: i,
            side: Side::Primary,
        }
    }
    pub fn sigma() -> Self {
        GeneratorRef {
            kind: GenKind::Sigma,
            index: 0,
            side: Side::Primary,
        }
    }
    pub fn on(self, side: Side) -> Self {
        GeneratorRef { side, ..self }
    }
}

impl fmt::Display for GeneratorRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.kind {
            GenKind::E => format!("e_{}", self.index),
            GenKind::F => format!("f_{}", self.index),
            GenKind::K => format!("k_{}", self.index),
            GenKind::KInv => format!("k_{}^-1", self.index),
            GenKind::Sigma => "sigma".to_string(),
        };
        match self.side {
            Side::Primary => f.write_str(&base),
            Side::Secondary => write!(f, "{base}'"),
        }
    }
}

/// Generators whose annihilation (e, f) or fixing (k) defines invariance.
pub fn invariance_generators(rep: &RepData) -> Vec<GeneratorRef> {
    let mut out = Vec::new();
    for i in 1..=rep.chevalley_rank() {
        out.push(GeneratorRef::e(i));
        out.push(GeneratorRef::f(i));
    }
    for b in 1..=rep.k_count() {
        out.push(GeneratorRef::k(b));
    }
    out
}

fn dot(a: &[i32], b: &[i32]) -> i32 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Debug, Clone)]
pub struct RepData {
    pub spec: LieTypeSpec,
    pub dim: usize,
    /// Semantic alias per position (index 0 ↔ position 1).
    pub aliases: Vec<i32>,
    pub weights: Vec<Vec<i32>>,
    /// Simple roots α_i in the ε-basis, one per e/f index.
    pub simple_roots: Vec<Vec<i32>>,
    pub e_mats: Vec<LinearOperator>,
    pub f_mats: Vec<LinearOperator>,
    /// Weights μ with k-generator acting by q^{(μ, λ)}: α_i for B/C/D, ε_b for GL.
    pub k_weights: Vec<Vec<i32>>,
    pub k_mats: Vec<LinearOperator>,
    /// Denominator in [e_i, f_i] = (k_i − k_i^{-1}) / d_i.
    pub comm_denoms: Vec<Scalar>,
    pub positive_roots: Vec<Vec<i32>>,
    pub two_rho: Vec<i32>,
    pub qdim: Scalar,
}

impl RepData {
    pub fn chevalley_rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn k_count(&self) -> usize {
        self.k_weights.len()
    }

    pub fn shape(&self) -> TensorShape {
        TensorShape::new(self.dim, 1)
    }

    /// q-exponent of the coproduct k attached to e_i on a vector of weight λ.
    pub fn k_exponent_for(&self, i: usize, wt: &[i32]) -> i32 {
        dot(&self.simple_roots[i - 1], wt)
    }

    pub fn k_exponent(&self, b: usize, wt: &[i32]) -> i32 {
        dot(&self.k_weights[b - 1], wt)
    }

    pub fn rho_pairing(&self, label: usize) -> i32 {
        dot(&self.two_rho, &self.weights[label - 1])
    }

    pub fn pairing(&self, a: &[i32], b: &[i32]) -> i32 {
        dot(a, b)
    }

    /// The Chevalley-index k_i acting on V (for GL: K_i K_{i+1}^{-1}).
    pub fn k_simple(&self, i: usize) -> LinearOperator {
        self.diag_q(&self.simple_roots[i - 1], 1)
    }

    pub fn diag_q(&self, mu: &[i32], sign: i32) -> LinearOperator {
        let entries: Vec<_> = (1..=self.dim)
            .map(|a| (a, a, Scalar::q_pow(sign * dot(mu, &self.weights[a - 1]))))
            .collect();
        LinearOperator::from_entries(self.dim, &entries)
    }

    pub fn label_name(&self, a: usize) -> String {
        let s = self.aliases[a - 1];
        format!("v_{s}")
    }
}

fn unit(n: usize, i: usize, s: i32) -> Vec<i32> {
    let mut v = vec![0; n];
    v[i - 1] = s;
    v
}

fn add(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn positive_roots(spec: LieTypeSpec) -> Vec<Vec<i32>> {
    let n = spec.rank;
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(add(&unit(n, i, 1), &unit(n, j, -1)));
            if spec.family != Family::GL {
                out.push(add(&unit(n, i, 1), &unit(n, j, 1)));
            }
        }
        match spec.family {
            Family::B => out.push(unit(n, i, 1)),
            Family::C => out.push(unit(n, i, 2)),
            _ => {}
        }
    }
    out
}

/// Builds the natural representation with explicit Chevalley matrices.
pub fn natural_rep(spec: LieTypeSpec) -> Result<RepData, RootDataError> {
    let spec = LieTypeSpec::new(spec.family, spec.rank)?;
    let n = spec.rank;
    let dim = spec.dim_v();
    let aliases: Vec<i32> = (1..=dim).map(|a| spec.alias(a)).collect();
    let weights: Vec<Vec<i32>> = aliases
        .iter()
        .map(|&s| {
            if s == 0 {
                vec![0; n]
            } else {
                unit(n, s.unsigned_abs() as usize, s.signum())
            }
        })
        .collect();
    let one = Scalar::one();
    let m_one = -Scalar::one();
    // E_{ab} with semantic labels
    let e = |pairs: &[(i32, i32, &Scalar)]| {
        let entries: Vec<_> = pairs
            .iter()
            .map(|(a, b, c)| (spec.pos(*a), spec.pos(*b), (*c).clone()))
            .collect();
        LinearOperator::from_entries(dim, &entries)
    };
    let ni = n as i32;
    let mut simple_roots = Vec::new();
    let mut e_mats = Vec::new();
    let mut f_mats = Vec::new();
    let chev = if spec.family == Family::GL { n - 1 } else { n };
    for i in 1..=chev as i32 {
        let iu = i as usize;
        let last = i == ni && spec.family != Family::GL;
        let (alpha, em, fm) = if !last {
            let alpha = add(&unit(n, iu, 1), &unit(n, iu + 1, -1));
            if spec.family == Family::GL {
                (alpha, e(&[(i, i + 1, &one)]), e(&[(i + 1, i, &one)]))
            } else {
                (
                    alpha,
                    e(&[(i, i + 1, &one), (-i - 1, -i, &m_one)]),
                    e(&[(i + 1, i, &one), (-i, -i - 1, &m_one)]),
                )
            }
        } else {
            match spec.family {
                Family::D => (
                    add(&unit(n, n - 1, 1), &unit(n, n, 1)),
                    e(&[(ni - 1, -ni, &one), (ni, -ni + 1, &m_one)]),
                    e(&[(-ni, ni - 1, &one), (-ni + 1, ni, &m_one)]),
                ),
                Family::B => (
                    unit(n, n, 1),
                    e(&[(ni, 0, &one), (0, -ni, &m_one)]),
                    e(&[(0, ni, &one), (-ni, 0, &m_one)]),
                ),
                Family::C => (unit(n, n, 2), e(&[(ni, -ni, &one)]), e(&[(-ni, ni, &one)])),
                Family::GL => unreachable!(),
            }
        };
        simple_roots.push(alpha);
        e_mats.push(em);
        f_mats.push(fm);
    }
    let k_weights: Vec<Vec<i32>> = if spec.family == Family::GL {
        (1..=n).map(|b| unit(n, b, 1)).collect()
    } else {
        simple_roots.clone()
    };
    let comm_denoms = simple_roots
        .iter()
        .map(|a| match spec.family {
            Family::B => Scalar::q_minus_qinv(),
            _ => {
                let l = dot(a, a);
                &Scalar::v_pow(l) - &Scalar::v_pow(-l)
            }
        })
        .collect();
    let positive_roots = positive_roots(spec);
    let two_rho = positive_roots
        .iter()
        .fold(vec![0; n], |acc, r| add(&acc, r));
    let mut rep = RepData {
        spec,
        dim,
        aliases,
        weights,
        simple_roots,
        e_mats,
        f_mats,
        k_weights,
        k_mats: Vec::new(),
        comm_denoms,
        positive_roots,
        two_rho,
        qdim: Scalar::zero(),
    };
    rep.k_mats = rep.k_weights.iter().map(|mu| rep.diag_q(mu, 1)).collect();
    rep.qdim = quantum_dimension_of(&rep);
    Ok(rep)
}

fn quantum_dimension_of(rep: &RepData) -> Scalar {
    let n = rep.spec.rank as i32;
    match rep.spec.family {
        Family::D => &Scalar::qint(n) * &(&Scalar::q_pow(n - 1) + &Scalar::q_pow(1 - n)),
        Family::B => {
            let num = &(&Scalar::q_pow(1 - 2 * n) + &Scalar::one())
                * &(&Scalar::q_pow(2 * n) - &Scalar::q_pow(-1));
            num.checked_div(&Scalar::q_minus_qinv()).expect("nonzero")
        }
        _ => gamma_q(rep),
    }
}

/// Σ_a q^{-(2ρ, λ_a)}
pub fn gamma_q(rep: &RepData) -> Scalar {
    (1..=rep.dim).fold(Scalar::zero(), |acc, a| {
        acc + Scalar::q_pow(-rep.rho_pairing(a))
    })
}

pub fn quantum_dimension(spec: LieTypeSpec) -> Result<Scalar, RootDataError> {
    Ok(natural_rep(spec)?.qdim)
}

pub fn rho_pairing(spec: LieTypeSpec, label: usize) -> Result<i32, RootDataError> {
    Ok(natural_rep(spec)?.rho_pairing(label))
}

pub fn conjugate_partition(lambda: &[usize]) -> Vec<usize> {
    let len = lambda.first().copied().unwrap_or(0);
    (1..=len)
        .map(|c| lambda.iter().filter(|&&r| r >= c).count())
        .collect()
}

/// Weyl dimension formula for gl_k.
pub fn irrep_dim_gl(k: usize, lambda: &[usize]) -> Result<u64, RootDataError> {
    let parts: Vec<usize> = lambda.iter().copied().filter(|&p| p > 0).collect();
    if parts.windows(2).any(|w| w[0] < w[1])
        || parts.len() != lambda.iter().take_while(|&&p| p > 0).count()
    {
        return Err(RootDataError::NotAPartition(lambda.to_vec()));
    }
    if parts.len() > k {
        return Err(RootDataError::PartitionTooLong(lambda.to_vec(), k));
    }
    let l = |i: usize| parts.get(i).copied().unwrap_or(0) as i64;
    let mut acc = BigRational::one();
    for i in 0..k {
        for j in i + 1..k {
            let num = l(i) - l(j) + (j - i) as i64;
            acc *= BigRational::new(BigInt::from(num), BigInt::from((j - i) as i64));
        }
    }
    Ok(acc.to_integer().to_u64().expect("dimension fits u64"))
}

/// All partitions fitting in a rows × cols box, in reverse lexicographic order.
pub fn partitions_in_box(rows: usize, cols: usize) -> Vec<Vec<usize>> {
    fn rec(rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        if cur.len() == rows {
            return;
        }
        for p in (1..=max).rev() {
            cur.push(p);
            rec(rows, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(rows, cols, &mut Vec::new(), &mut out);
    out
}

/// The Dynkin-diagram automorphism used for the orthogonal group extension.
pub fn sigma_candidate(
    spec: LieTypeSpec,
    sign: Option<i32>,
) -> Result<LinearOperator, RootDataError> {
    let rep = natural_rep(spec)?;
    let n = spec.rank;
    let s = Scalar::from_int(sign.unwrap_or(if n % 2 == 1 { -1 } else { 1 }) as i64);
    let sigma = match spec.family {
        Family::D => {
            let entries: Vec<_> = (1..=rep.dim)
                .map(|a| {
                    let b = if a == n {
                        n + 1
                    } else if a == n + 1 {
                        n
                    } else {
                        a
                    };
                    (b, a, s.clone())
                })
                .collect();
            LinearOperator::from_entries(rep.dim, &entries)
        }
        Family::B => LinearOperator::scalar(rep.shape(), &s),
        f => return Err(RootDataError::Unsupported(f)),
    };
    // σ is an involution up to the sign², so σ^{-1} = σ
    let image = |i: usize| match spec.family {
        Family::D if i == n - 1 => n,
        Family::D if i == n => n - 1,
        _ => i,
    };
    for i in 1..=n {
        let j = image(i);
        let checks = [
            ("e", &rep.e_mats[i - 1], &rep.e_mats[j - 1]),
            ("f", &rep.f_mats[i - 1], &rep.f_mats[j - 1]),
            ("k", &rep.k_mats[i - 1], &rep.k_mats[j - 1]),
        ];
        for (name, x, y) in checks {
            if sigma.compose(x).compose(&sigma) != *y {
                return Err(RootDataError::SigmaValidation(format!("{name}_{i}")));
            }
        }
    }
    Ok(sigma)
}

/// Failures of the defining relations of U_q on V, as readable strings.
pub fn check_defining_relations(rep: &RepData) -> Vec<String> {
    let mut bad = Vec::new();
    let r = rep.chevalley_rank();
    let id = LinearOperator::identity(rep.shape());
    for (b, mu) in rep.k_weights.iter().enumerate() {
        let k = &rep.k_mats[b];
        let kinv = rep.diag_q(mu, -1);
        if k.compose(&kinv) != id {
            bad.push(format!("k_{} not invertible", b + 1));
        }
        for j in 0..r {
            let c = dot(mu, &rep.simple_roots[j]);
            if k.compose(&rep.e_mats[j]).compose(&kinv) != rep.e_mats[j].scale(&Scalar::q_pow(c)) {
                bad.push(format!("k_{} e_{} scaling", b + 1, j + 1));
            }
            if k.compose(&rep.f_mats[j]).compose(&kinv) != rep.f_mats[j].scale(&Scalar::q_pow(-c)) {
                bad.push(format!("k_{} f_{} scaling", b + 1, j + 1));
            }
        }
    }
    for i in 0..r {
        for j in 0..r {
            let comm = rep.e_mats[i]
                .compose(&rep.f_mats[j])
                .sub(&rep.f_mats[j].compose(&rep.e_mats[i]));
            let expect = if i == j {
                let k = rep.k_simple(i + 1);
                let kinv = rep.diag_q(&rep.simple_roots[i], -1);
                k.sub(&kinv)
                    .scale(&rep.comm_denoms[i].inv().expect("nonzero"))
            } else {
                LinearOperator::zero(rep.shape(), rep.shape())
            };
            if comm != expect {
                bad.push(format!("[e_{}, f_{}]", i + 1, j + 1));
            }
        }
    }
    // Serre relations
    for i in 0..r {
        for j in 0..r {
            if i == j {
                continue;
            }
            let ai = &rep.simple_roots[i];
            let aii = dot(ai, ai);
            let aij = 2 * dot(ai, &rep.simple_roots[j]) / aii;
            let top = 1 - aij;
            for (name, mats) in [("e", &rep.e_mats), ("f", &rep.f_mats)] {
                let mut acc = LinearOperator::zero(rep.shape(), rep.shape());
                for s in 0..=top {
                    let mut term = LinearOperator::identity(rep.shape());
                    for _ in 0..top - s {
                        term = term.compose(&mats[i]);
                    }
                    term = term.compose(&mats[j]);
                    for _ in 0..s {
                        term = term.compose(&mats[i]);
                    }
                    let mut c = Scalar::qbinom_in(top, s, aii);
                    if s % 2 == 1 {
                        c = -c;
                    }
                    acc = acc.add(&term.scale(&c));
                }
                if !acc.is_zero() {
                    bad.push(format!("Serre {name}_{} {name}_{}", i + 1, j + 1));
                }
            }
        }
    }
    // weight bookkeeping
    for i in 0..r {
        for (mats, sgn) in [(&rep.e_mats, 1), (&rep.f_mats, -1)] {
            for (c, col) in mats[i].columns() {
                for row in col.keys() {
                    let want = add(
                        &rep.weights[*c],
                        &rep.simple_roots[i]
                            .iter()
                            .map(|x| sgn * x)
                            .collect::<Vec<_>>(),
                    );
                    if rep.weights[*row] != want {
                        bad.push(format!("weight of generator {} at column {}", i + 1, c + 1));
                    }
                }
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(f: Family, n: usize) -> LieTypeSpec {
        LieTypeSpec::new(f, n).unwrap()
    }

    #[test]
    fn rank_bounds() {
        assert!(LieTypeSpec::new(Family::D, 1).is_err());
        assert!(LieTypeSpec::new(Family::B, 0).is_err());
        assert!(LieTypeSpec::new(Family::C, 1).is_ok());
    }

    #[test]
    fn d2_e2_entries() {
        let r = natural_rep(spec(Family::D, 2)).unwrap();
        let e2 = &r.e_mats[1];
        assert_eq!(e2.nnz(), 2);
        let s = r.spec;
        assert_eq!(e2.entry(s.pos(1) - 1, s.pos(-2) - 1), Scalar::one());
        assert_eq!(e2.entry(s.pos(2) - 1, s.pos(-1) - 1), -Scalar::one());
    }

    #[test]
    fn b1_matrices() {
        let r = natural_rep(spec(Family::B, 1)).unwrap();
        let want =
            LinearOperator::from_entries(3, &[(1, 2, Scalar::one()), (2, 3, -Scalar::one())]);
        assert_eq!(r.e_mats[0], want);
        let k = LinearOperator::from_entries(
            3,
            &[
                (1, 1, Scalar::q()),
                (2, 2, Scalar::one()),
                (3, 3, Scalar::q_pow(-1)),
            ],
        );
        assert_eq!(r.k_mats[0], k);
    }

    #[test]
    fn gl2_matrices() {
        let r = natural_rep(spec(Family::GL, 2)).unwrap();
        assert_eq!(
            r.e_mats[0],
            LinearOperator::from_entries(2, &[(1, 2, Scalar::one())])
        );
        assert_eq!(
            r.f_mats[0],
            LinearOperator::from_entries(2, &[(2, 1, Scalar::one())])
        );
        assert_eq!(
            r.k_mats[0],
            LinearOperator::from_entries(2, &[(1, 1, Scalar::q()), (2, 2, Scalar::one())])
        );
    }

    #[test]
    fn defining_relations_hold_on_grid() {
        for (f, n) in [
            (Family::D, 2),
            (Family::D, 3),
            (Family::D, 4),
            (Family::B, 1),
            (Family::B, 2),
            (Family::B, 3),
            (Family::C, 1),
            (Family::C, 2),
            (Family::C, 3),
            (Family::GL, 2),
            (Family::GL, 3),
        ] {
            let r = natural_rep(spec(f, n)).unwrap();
            assert!(
                check_defining_relations(&r).is_empty(),
                "{f}{n}: {:?}",
                check_defining_relations(&r)
            );
        }
    }

    #[test]
    fn quantum_dimensions() {
        let d2 = quantum_dimension(spec(Family::D, 2)).unwrap();
        assert_eq!(d2, Scalar::laurent_q(-2, &[1, 0, 2, 0, 1]));
        let b1 = quantum_dimension(spec(Family::B, 1)).unwrap();
        assert_eq!(b1, Scalar::laurent_q(-1, &[1, 1, 1]));
        let d3 = quantum_dimension(spec(Family::D, 3)).unwrap();
        assert_eq!(
            d3.classical_limit().unwrap(),
            BigRational::from_integer(6.into())
        );
        for (f, n) in [
            (Family::D, 2),
            (Family::D, 3),
            (Family::B, 1),
            (Family::B, 2),
        ] {
            let r = natural_rep(spec(f, n)).unwrap();
            assert_eq!(r.qdim, gamma_q(&r), "{f}{n}");
        }
    }

    #[test]
    fn rho_values() {
        assert_eq!(rho_pairing(spec(Family::D, 2), 1).unwrap(), 2);
        let b1 = spec(Family::B, 1);
        assert_eq!(rho_pairing(b1, b1.pos(0)).unwrap(), 0);
        assert_eq!(rho_pairing(spec(Family::GL, 2), 2).unwrap(), -1);
    }

    #[test]
    fn weyl_dimensions() {
        assert_eq!(irrep_dim_gl(2, &[1]).unwrap(), 2);
        assert_eq!(irrep_dim_gl(2, &[2, 1]).unwrap(), 2);
        assert_eq!(irrep_dim_gl(3, &[1, 1]).unwrap(), 3);
        assert!(irrep_dim_gl(1, &[1, 1]).is_err());
        assert_eq!(partitions_in_box(2, 2).len(), 6);
        assert_eq!(conjugate_partition(&[2, 1]), vec![2, 1]);
        assert_eq!(conjugate_partition(&[3]), vec![1, 1, 1]);
    }

    #[test]
    fn sigma_d2() {
        let s = spec(Family::D, 2);
        let sigma = sigma_candidate(s, None).unwrap();
        let id = LinearOperator::identity(TensorShape::new(4, 1));
        assert_eq!(sigma.compose(&sigma), id);
        let r = natural_rep(s).unwrap();
        assert_eq!(sigma.compose(&r.e_mats[0]).compose(&sigma), r.e_mats[1]);
        let k12 = r.k_mats[0].compose(&r.k_mats[1]);
        assert_eq!(sigma.compose(&k12), k12.compose(&sigma));
        assert!(sigma_candidate(spec(Family::B, 2), None).is_ok());
        assert!(sigma_candidate(spec(Family::D, 3), None).is_ok());
    }
}
