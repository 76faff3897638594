//! Presented algebras: S_q(V), the braided tensor powers A_m, A_{k,l} and Λ_q,
//! together with the tensor-level product used to audit their rule sets.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::braiding::{rcheck, spectral_data, BraidingError};
use crate::linalg::{LinearOperator, TensorShape};
use crate::ncpoly::{
    Alphabet, Letter, NCPolynomial, NcError, RewriteSystem, Rule, Word, DEFAULT_FUEL,
};
use crate::report::Suite;
use crate::rootdata::{natural_rep, Family, LieTypeSpec, RepData, RootDataError};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error(transparent)]
    Braiding(#[from] BraidingError),
    #[error(transparent)]
    Rewrite(#[from] NcError),
    #[error("{0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum AlgebraKind {
    Sq,
    Am { m: usize },
    Akl { k: usize, l: usize },
    Exterior { m: usize, n: usize },
}

/// A presented algebra with its U_q-module data.
#[derive(Debug, Clone)]
pub struct AlgebraHandle {
    pub spec: LieTypeSpec,
    pub kind: AlgebraKind,
    /// Acts on generator labels.
    pub rep: RepData,
    /// U_q(gl_m) acting on row indices (exterior algebra only).
    pub row_rep: Option<RepData>,
    pub system: RewriteSystem,
    pub strict_paper: bool,
    pub fuel: u64,
}

impl fmt::Display for AlgebraHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strict = if self.strict_paper {
            " (printed rules)"
        } else {
            ""
        };
        match self.kind {
            AlgebraKind::Sq => write!(f, "S_q({}){strict}", self.spec),
            AlgebraKind::Am { m } => write!(f, "A_{m}({}){strict}", self.spec),
            AlgebraKind::Akl { k, l } => write!(f, "A_{{{k},{l}}}(GL{})", self.spec.rank),
            AlgebraKind::Exterior { m, n } => write!(f, "Lambda_q({m}x{n})"),
        }
    }
}

impl AlgebraHandle {
    pub fn alphabet(&self) -> &Alphabet {
        self.system.alphabet()
    }

    pub fn with_fuel(mut self, fuel: u64) -> Self {
        self.fuel = fuel;
        self
    }

    pub fn normal_form(&self, p: &NCPolynomial) -> Result<NCPolynomial, NcError> {
        self.system.normal_form(p, self.fuel)
    }

    pub fn multiply(&self, p: &NCPolynomial, r: &NCPolynomial) -> Result<NCPolynomial, NcError> {
        self.system.multiply(p, r, self.fuel)
    }

    /// Normal form of a product of several factors, left to right.
    pub fn product(&self, factors: &[&NCPolynomial]) -> Result<NCPolynomial, NcError> {
        let mut acc = NCPolynomial::one();
        for f in factors {
            acc = self.multiply(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn graded_words(&self, d: &[usize]) -> Vec<Word> {
        self.alphabet().graded_words(d)
    }

    /// Number of generator copies (m for A_m, k+l for A_{k,l}, rows for Λ_q).
    pub fn copies(&self) -> usize {
        match self.kind {
            AlgebraKind::Sq => 1,
            AlgebraKind::Am { m } => m,
            AlgebraKind::Akl { k, l } => k + l,
            AlgebraKind::Exterior { m, .. } => m,
        }
    }

    pub fn render_word(&self, w: &Word) -> String {
        if self.kind != AlgebraKind::Sq {
            return w.to_string();
        }
        if w.is_empty() {
            return "1".into();
        }
        w.letters()
            .iter()
            .map(|l| format!("v[{}]", l.label))
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn render(&self, p: &NCPolynomial) -> String {
        if p.is_zero() {
            return "0".into();
        }
        p.terms()
            .rev()
            .map(|(w, c)| format!("({c})*{}", self.render_word(w)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// X_{i a} as a polynomial.
pub fn x(i: usize, a: usize) -> NCPolynomial {
    NCPolynomial::letter(Letter::x(i, a))
}

/// Y_{β b} as a polynomial.
pub fn y(beta: usize, b: usize) -> NCPolynomial {
    NCPolynomial::letter(Letter::y(beta, b))
}

fn xx(i: usize, a: usize, j: usize, b: usize) -> NCPolynomial {
    NCPolynomial::from_word(Word(vec![Letter::x(i, a), Letter::x(j, b)]))
}

fn q(e: i32) -> Scalar {
    Scalar::q_pow(e)
}

fn qq() -> Scalar {
    Scalar::q_minus_qinv()
}

/// Quadratic relations of S_q(V) in slot `slot`, read off the Ř-eigenvectors
/// that must vanish (L_a, plus L_0 for C).
pub fn sq_relations(spec: LieTypeSpec, slot: usize) -> Vec<(NCPolynomial, String)> {
    let data = spectral_data(spec);
    let sh = TensorShape::new(spec.dim_v(), 2);
    let killed: &[&str] = if spec.family == Family::C {
        &["a", "0"]
    } else {
        &["a"]
    };
    let mut out = Vec::new();
    for s in data.summands.iter().filter(|s| killed.contains(&s.name)) {
        for v in &s.vectors {
            let p = NCPolynomial::from_terms(v.iter().map(|(k, c)| {
                let t = sh.decode(*k);
                (
                    Word(vec![Letter::x(slot, t[0]), Letter::x(slot, t[1])]),
                    c.clone(),
                )
            }));
            out.push((p, format!("S_q(V) relation from L_{}", s.name)));
        }
    }
    out
}

fn slot_letters(spec: LieTypeSpec, slot: usize, grade: usize) -> Vec<(Letter, usize)> {
    (1..=spec.dim_v())
        .map(|a| (Letter::x(slot, a), grade))
        .collect()
}

pub fn build_sq(spec: LieTypeSpec) -> Result<AlgebraHandle, AlgebraError> {
    let rep = natural_rep(spec)?;
    let spec = rep.spec;
    let alphabet = Alphabet::new(slot_letters(spec, 1, 0), false);
    let system = RewriteSystem::from_relations(alphabet, &sq_relations(spec, 1))?;
    Ok(AlgebraHandle {
        spec,
        kind: AlgebraKind::Sq,
        rep,
        row_rep: None,
        system,
        strict_paper: false,
        fuel: DEFAULT_FUEL,
    })
}

fn relabel_rule(r: &Rule, slot: usize) -> Rule {
    let mv = |l: Letter| Letter::x(slot, l.label());
    Rule {
        lhs: (mv(r.lhs.0), mv(r.lhs.1)),
        rhs: r
            .rhs
            .iter()
            .map(|(c, a, b)| (c.clone(), mv(*a), mv(*b)))
            .collect(),
        citation: r.citation.clone(),
    }
}

/// X_{j a} X_{i b} = Σ Ř(v_a⊗v_b)_{a'b'} X_{i a'} X_{j b'} for i < j.
pub fn cross_rules_from_rcheck(r: &LinearOperator, i: usize, j: usize) -> Vec<Rule> {
    let sh = r.domain;
    let dim = sh.dim;
    let mut out = Vec::new();
    for a in 1..=dim {
        for b in 1..=dim {
            let rhs = r
                .column(sh.encode(&[a, b]))
                .map(|col| {
                    col.iter()
                        .map(|(k, c)| {
                            let t = sh.decode(*k);
                            (c.clone(), Letter::x(i, t[0]), Letter::x(j, t[1]))
                        })
                        .collect()
                })
                .unwrap_or_default();
            out.push(Rule {
                lhs: (Letter::x(j, a), Letter::x(i, b)),
                rhs,
                citation: "cross-factor rule from the braiding".into(),
            });
        }
    }
    out
}

fn rule_from_poly(lhs: (Letter, Letter), rhs: &NCPolynomial, citation: &str) -> Rule {
    Rule {
        lhs,
        rhs: rhs
            .terms()
            .map(|(w, c)| {
                assert_eq!(w.len(), 2, "printed rule must be quadratic");
                (c.clone(), w.letters()[0], w.letters()[1])
            })
            .collect(),
        citation: citation.into(),
    }
}

/// Which version of the hand-written cross-factor rules to produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Reading {
    /// As printed.
    Printed,
    /// With the paired-index rules repaired so they agree with Ř.
    Corrected,
}

/// The hand-written cross-factor rules for types D, B, C (slots i < j).
///
/// Only the paired-index rules differ between the two readings. For B and D
/// the printed sign of the (q-q^-1) X_{i,t'} X_{jt} term is flipped, and D
/// takes B's form q^-1 X_{it} X_{j,t'} with partial sum ψ̄_t. For C the
/// first paired rule gains a -(q-q^-1) q^{n+1-t} ψ_{t-1} term and the partial
/// sum in the second runs over k < t.
pub fn printed_cross_rules(spec: LieTypeSpec, i: usize, j: usize, reading: Reading) -> Vec<Rule> {
    let n = spec.rank as i32;
    let nu = spec.rank;
    let mid = match reading {
        Reading::Printed => -Scalar::one(),
        Reading::Corrected => Scalar::one(),
    };
    let mut out = Vec::new();
    let mut push = |lhs: (usize, usize), rhs: NCPolynomial, cite: &str| {
        out.push(rule_from_poly(
            (Letter::x(j, lhs.0), Letter::x(i, lhs.1)),
            &rhs,
            cite,
        ));
    };
    match spec.family {
        Family::D => {
            let bar = |t: usize| 2 * nu + 1 - t;
            let psi = |t: usize| {
                (1..=t).fold(NCPolynomial::zero(), |acc, k| {
                    &acc + &xx(i, bar(k), j, k).scale(&q(k as i32 - n))
                })
            };
            let psibar = |t: usize| {
                (1..=t).fold(NCPolynomial::zero(), |acc, k| {
                    &acc + &xx(i, k, j, bar(k)).scale(&q(n - k as i32))
                })
            };
            let big = &psi(nu) + &psibar(nu);
            for a in 1..=2 * nu {
                push(
                    (a, a),
                    xx(i, a, j, a).scale(&q(1)),
                    "X_ja X_ia = q X_ia X_ja",
                );
                for b in a + 1..=2 * nu {
                    if b == bar(a) {
                        continue;
                    }
                    push(
                        (b, a),
                        &xx(i, a, j, b) + &xx(i, b, j, a).scale(&qq()),
                        "X_jb X_ia, a<b unpaired",
                    );
                    push((a, b), xx(i, b, j, a), "X_ja X_ib, a<b unpaired");
                }
            }
            for t in 1..=nu {
                let tt = t as i32;
                push(
                    (t, bar(t)),
                    &xx(i, bar(t), j, t).scale(&q(1)) - &psi(t).scale(&(&qq() * &q(n - tt))),
                    "X_jt X_i,t' paired",
                );
                let (lead, partial) = match reading {
                    Reading::Printed => (q(1), psibar(t + 1)),
                    Reading::Corrected => (q(-1), psibar(t)),
                };
                let corr = &partial - &big;
                push(
                    (bar(t), t),
                    &(&xx(i, t, j, bar(t)).scale(&lead)
                        + &xx(i, bar(t), j, t).scale(&(&mid * &qq())))
                        + &corr.scale(&(&qq() * &q(tt - n))),
                    "X_jt' X_it paired",
                );
            }
        }
        Family::B => {
            let z = nu + 1;
            let bar = |t: usize| 2 * nu + 2 - t;
            let psi = |t: usize| {
                (1..=t).fold(NCPolynomial::zero(), |acc, s| {
                    &acc + &xx(i, bar(s), j, s).scale(&q(s as i32 - n - 1))
                })
            };
            let psibar = |t: usize| {
                (1..=t).fold(NCPolynomial::zero(), |acc, s| {
                    &acc + &xx(i, s, j, bar(s)).scale(&q(n - s as i32))
                })
            };
            let big = &(&psi(nu) + &xx(i, z, j, z)) + &psibar(nu);
            for a in 1..=2 * nu + 1 {
                if a != z {
                    push(
                        (a, a),
                        xx(i, a, j, a).scale(&q(1)),
                        "X_ja X_ia = q X_ia X_ja",
                    );
                }
                for b in a + 1..=2 * nu + 1 {
                    if a + b == 2 * nu + 2 {
                        continue;
                    }
                    push(
                        (b, a),
                        &xx(i, a, j, b) + &xx(i, b, j, a).scale(&qq()),
                        "X_jb X_ia, a<b unpaired",
                    );
                    push((a, b), xx(i, b, j, a), "X_ja X_ib, a<b unpaired");
                }
            }
            push((z, z), &xx(i, z, j, z) - &psi(nu).scale(&qq()), "X_j0 X_i0");
            for t in 1..=nu {
                let tt = t as i32;
                push(
                    (t, bar(t)),
                    &xx(i, bar(t), j, t).scale(&q(1)) - &psi(t).scale(&(&qq() * &q(n - tt + 1))),
                    "X_jt X_i,t' paired",
                );
                let corr = &psibar(t) - &big;
                push(
                    (bar(t), t),
                    &(&xx(i, t, j, bar(t)).scale(&q(-1))
                        + &xx(i, bar(t), j, t).scale(&(&mid * &qq())))
                        + &corr.scale(&(&qq() * &q(tt - n))),
                    "X_jt' X_it paired",
                );
            }
        }
        Family::C => {
            let bar = |t: usize| 2 * nu + 1 - t;
            let big = (1..=nu).fold(NCPolynomial::zero(), |acc, k| {
                let kk = k as i32;
                &(&acc + &xx(i, k, j, bar(k)).scale(&q(n + 1 - kk)))
                    - &xx(i, bar(k), j, k).scale(&q(kk - n - 1))
            });
            // printed: tail sums with ψ̄_{n+1} = 0; corrected: sums over k < t
            let psibar = |t: usize| {
                let range = match reading {
                    Reading::Printed => t..nu + 1,
                    Reading::Corrected => 1..t - 1,
                };
                range.fold(NCPolynomial::zero(), |acc, k| {
                    &acc + &xx(i, k, j, bar(k)).scale(&q(n + 1 - k as i32))
                })
            };
            let psi = |t: usize| {
                (1..=t).fold(NCPolynomial::zero(), |acc, k| {
                    &acc + &xx(i, bar(k), j, k).scale(&q(k as i32 - n - 1))
                })
            };
            for a in 1..=2 * nu {
                push(
                    (a, a),
                    xx(i, a, j, a).scale(&q(1)),
                    "X_ta X_sa = q X_sa X_ta",
                );
                for b in a + 1..=2 * nu {
                    if b == bar(a) {
                        continue;
                    }
                    push((a, b), xx(i, b, j, a), "X_ta X_sb, a<b unpaired");
                    push(
                        (b, a),
                        &xx(i, a, j, b) + &xx(i, b, j, a).scale(&qq()),
                        "X_tb X_sa, a<b unpaired",
                    );
                }
            }
            for t in 1..=nu {
                let tt = t as i32;
                let mut rhs = xx(i, bar(t), j, t).scale(&q(-1));
                if reading == Reading::Corrected {
                    rhs = &rhs - &psi(t - 1).scale(&(&qq() * &q(n + 1 - tt)));
                }
                push((t, bar(t)), rhs, "X_ti X_s,i' paired");
                let corr = &psibar(t + 1) - &big;
                push(
                    (bar(t), t),
                    &(&xx(i, t, j, bar(t)).scale(&q(1)) + &xx(i, bar(t), j, t).scale(&qq()))
                        + &corr.scale(&(&qq() * &q(tt - n - 1))),
                    "X_ti' X_si paired",
                );
            }
        }
        Family::GL => {}
    }
    out
}

/// The m-fold braided tensor power of S_q(V); for GL this is M_{m,n}.
///
/// With `strict_paper` the cross-factor rules are the printed ones instead of
/// those read off Ř.
pub fn build_am(
    spec: LieTypeSpec,
    m: usize,
    strict_paper: bool,
) -> Result<AlgebraHandle, AlgebraError> {
    if m == 0 {
        return Err(AlgebraError::Unsupported("A_m needs m >= 1".into()));
    }
    let sq = build_sq(spec)?;
    let spec = sq.spec;
    let r = rcheck(spec)?;
    let mut letters = Vec::new();
    let mut rules = Vec::new();
    for i in 1..=m {
        letters.extend(slot_letters(spec, i, i - 1));
        rules.extend(sq.system.rules().iter().map(|rl| relabel_rule(rl, i)));
        for j in i + 1..=m {
            if strict_paper && spec.family != Family::GL {
                rules.extend(printed_cross_rules(spec, i, j, Reading::Printed));
            } else {
                rules.extend(cross_rules_from_rcheck(&r, i, j));
            }
        }
    }
    let system = RewriteSystem::new(Alphabet::new(letters, false), rules)?;
    Ok(AlgebraHandle {
        spec,
        kind: AlgebraKind::Am { m },
        rep: sq.rep,
        row_rep: None,
        system,
        strict_paper,
        fuel: DEFAULT_FUEL,
    })
}

/// A_{k,l} = M_{k,n} ⊗ M̄_{l,n} with the braided cross relations.
pub fn build_akl(n: usize, k: usize, l: usize) -> Result<AlgebraHandle, AlgebraError> {
    if k == 0 || l == 0 {
        return Err(AlgebraError::Unsupported("A_{k,l} needs k, l >= 1".into()));
    }
    let spec = LieTypeSpec::new(Family::GL, n)?;
    let mk = build_am(spec, k, false)?;
    let mut letters: Vec<(Letter, usize)> = mk
        .alphabet()
        .letters()
        .iter()
        .map(|l| (*l, mk.alphabet().slot(l)))
        .collect();
    let mut rules: Vec<Rule> = mk.system.rules().to_vec();
    let yy = |b1: usize, a: usize, b2: usize, c: usize, s: Scalar| {
        (s, Letter::y(b1, a), Letter::y(b2, c))
    };
    for beta in 1..=l {
        letters.extend((1..=n).map(|b| (Letter::y(beta, b), k + beta - 1)));
        for a in 1..=n {
            for b in a + 1..=n {
                rules.push(Rule {
                    lhs: (Letter::y(beta, b), Letter::y(beta, a)),
                    rhs: vec![yy(beta, a, beta, b, q(-1))],
                    citation: "dual row relation".into(),
                });
            }
        }
        for alpha in 1..beta {
            for a in 1..=n {
                for b in 1..=n {
                    let rhs = match a.cmp(&b) {
                        std::cmp::Ordering::Equal => vec![yy(alpha, a, beta, a, q(-1))],
                        std::cmp::Ordering::Less => vec![
                            yy(alpha, a, beta, b, Scalar::one()),
                            yy(alpha, b, beta, a, -qq()),
                        ],
                        std::cmp::Ordering::Greater => vec![yy(alpha, a, beta, b, Scalar::one())],
                    };
                    rules.push(Rule {
                        lhs: (Letter::y(beta, b), Letter::y(alpha, a)),
                        rhs,
                        citation: "dual cross-row relation".into(),
                    });
                }
            }
        }
        for i in 1..=k {
            for a in 1..=n {
                for b in 1..=n {
                    let xy = |c: usize, s: Scalar| (s, Letter::x(i, c), Letter::y(beta, c));
                    let rhs = if a == b {
                        let mut v = vec![xy(a, q(-1))];
                        v.extend((a + 1..=n).map(|c| xy(c, -qq())));
                        v
                    } else {
                        vec![(Scalar::one(), Letter::x(i, a), Letter::y(beta, b))]
                    };
                    rules.push(Rule {
                        lhs: (Letter::y(beta, b), Letter::x(i, a)),
                        rhs,
                        citation: "Y-X cross relation".into(),
                    });
                }
            }
        }
    }
    let system = RewriteSystem::new(Alphabet::new(letters, false), rules)?;
    Ok(AlgebraHandle {
        spec,
        kind: AlgebraKind::Akl { k, l },
        rep: mk.rep,
        row_rep: None,
        system,
        strict_paper: false,
        fuel: DEFAULT_FUEL,
    })
}

/// Defining relations of the braided exterior algebra of V^(m) ⊗ V^(n).
pub fn exterior_relations(m: usize, n: usize) -> Vec<(NCPolynomial, String)> {
    let mut out = Vec::new();
    for i in 1..=m {
        for kk in 1..=n {
            out.push((xx(i, kk, i, kk), "X_ik^2 = 0".to_string()));
            for ll in kk + 1..=n {
                out.push((
                    &xx(i, ll, i, kk) + &xx(i, kk, i, ll).scale(&q(-1)),
                    "same row q-anticommutation".into(),
                ));
            }
            for j in i + 1..=m {
                out.push((
                    &xx(j, kk, i, kk) + &xx(i, kk, j, kk).scale(&q(-1)),
                    "same column q-anticommutation".into(),
                ));
                for ll in kk + 1..=n {
                    out.push((
                        &(&xx(i, ll, j, kk) + &xx(j, kk, i, ll)) + &xx(j, ll, i, kk).scale(&qq()),
                        "mixed relation".into(),
                    ));
                    out.push((
                        &xx(i, kk, j, ll) + &xx(j, ll, i, kk),
                        "diagonal anticommutation".into(),
                    ));
                }
            }
        }
    }
    out
}

pub fn build_exterior(m: usize, n: usize) -> Result<AlgebraHandle, AlgebraError> {
    if m == 0 || n == 0 {
        return Err(AlgebraError::Unsupported(
            "exterior algebra needs m, n >= 1".into(),
        ));
    }
    let rep = natural_rep(LieTypeSpec::new(Family::GL, n)?)?;
    let row_rep = natural_rep(LieTypeSpec::new(Family::GL, m)?)?;
    let letters = (1..=m)
        .flat_map(|i| (1..=n).map(move |kk| (Letter::x(i, kk), i - 1)))
        .collect();
    let system =
        RewriteSystem::from_relations(Alphabet::new(letters, true), &exterior_relations(m, n))?;
    Ok(AlgebraHandle {
        spec: rep.spec,
        kind: AlgebraKind::Exterior { m, n },
        rep,
        row_rep: Some(row_rep),
        system,
        strict_paper: false,
        fuel: DEFAULT_FUEL,
    })
}

/// Number of ordered words of multidegree `d`.
pub fn graded_dimension(h: &AlgebraHandle, d: &[usize]) -> usize {
    h.graded_words(d).len()
}

/// Product in A_m computed in the tensor algebra: letters of different copies
/// are braided past each other by elementary Ř's, then each copy is
/// straightened with the S_q(V) rules alone.
pub struct TensorOracle {
    r: LinearOperator,
    sq: AlgebraHandle,
}

impl TensorOracle {
    pub fn new(h: &AlgebraHandle) -> Result<Self, AlgebraError> {
        if !matches!(h.kind, AlgebraKind::Am { .. } | AlgebraKind::Sq) {
            return Err(AlgebraError::Unsupported(
                "oracle product is defined for A_m".into(),
            ));
        }
        Ok(TensorOracle {
            r: rcheck(h.spec)?,
            sq: build_sq(h.spec)?.with_fuel(h.fuel),
        })
    }

    pub fn product(
        &self,
        a: &NCPolynomial,
        b: &NCPolynomial,
    ) -> Result<NCPolynomial, AlgebraError> {
        let sh = self.r.domain;
        let budget = self.sq.fuel;
        let mut fuel = budget;
        // bubble letters into copy order; each swap is one Ř
        let mut todo: BTreeMap<Word, Scalar> = a.concat(b).into_terms();
        let mut sorted: BTreeMap<Word, Scalar> = BTreeMap::new();
        while let Some((w, c)) = todo.pop_last() {
            let ls = w.letters();
            let Some(p) =
                (0..ls.len().saturating_sub(1)).find(|&p| ls[p].factor() > ls[p + 1].factor())
            else {
                *sorted.entry(w).or_insert_with(Scalar::zero) += &c;
                continue;
            };
            if fuel == 0 {
                return Err(NcError::FuelExhausted {
                    used: budget,
                    partial: NCPolynomial::from_terms(todo),
                }
                .into());
            }
            fuel -= 1;
            let (hi, lo) = (ls[p], ls[p + 1]);
            for (k, x) in self
                .r
                .column(sh.encode(&[hi.label(), lo.label()]))
                .into_iter()
                .flatten()
            {
                let t = sh.decode(*k);
                let mut nw = ls.to_vec();
                nw[p] = Letter::x(lo.factor(), t[0]);
                nw[p + 1] = Letter::x(hi.factor(), t[1]);
                let nw = Word(nw);
                let e = todo.entry(nw.clone()).or_insert_with(Scalar::zero);
                *e += &(&c * x);
                if e.is_zero() {
                    todo.remove(&nw);
                }
            }
        }
        let mut out = NCPolynomial::zero();
        for (w, c) in sorted.into_iter().filter(|(_, c)| !c.is_zero()) {
            let mut acc = NCPolynomial::constant(c);
            for block in w.letters().chunk_by(|x, y| x.factor() == y.factor()) {
                let slot = block[0].factor();
                let local = Word(block.iter().map(|l| Letter::x(1, l.label())).collect());
                let nf = self.sq.normal_form(&NCPolynomial::from_word(local))?;
                let moved =
                    NCPolynomial::from_terms(nf.into_terms().into_iter().map(|(bw, bc)| {
                        (
                            Word(
                                bw.letters()
                                    .iter()
                                    .map(|l| Letter::x(slot, l.label()))
                                    .collect(),
                            ),
                            bc,
                        )
                    }));
                acc = acc.concat(&moved);
            }
            out = &out + &acc;
        }
        Ok(out)
    }
}

/// One-off oracle product; build a [`TensorOracle`] to multiply repeatedly.
pub fn tensor_oracle_product(
    h: &AlgebraHandle,
    a: &NCPolynomial,
    b: &NCPolynomial,
) -> Result<NCPolynomial, AlgebraError> {
    TensorOracle::new(h)?.product(a, b)
}

#[derive(Debug, Clone, Serialize)]
pub struct ManifestEntry {
    pub pattern: String,
    pub replacement: String,
    pub citation: String,
}

/// Every rewrite rule of the handle, for audit.
pub fn manifest(h: &AlgebraHandle) -> Vec<ManifestEntry> {
    h.system
        .rules()
        .iter()
        .map(|r| ManifestEntry {
            pattern: h.render_word(&r.lhs_word()),
            replacement: h.render(&r.rhs_poly()),
            citation: r.citation.clone(),
        })
        .collect()
}

/// Compares the printed cross-factor rules with the Ř-derived ones on slots (1, 2).
pub fn oracle_diff(spec: LieTypeSpec, reading: Reading) -> Result<Suite, AlgebraError> {
    let spec = LieTypeSpec::new(spec.family, spec.rank)?;
    let mut suite = Suite::new(format!("oracle-diff {spec} ({reading:?} reading)"));
    if spec.family == Family::GL {
        return Ok(suite);
    }
    let r = rcheck(spec)?;
    let derived: BTreeMap<_, _> = cross_rules_from_rcheck(&r, 1, 2)
        .into_iter()
        .map(|rl| (rl.lhs, rl.rhs_poly()))
        .collect();
    for rl in printed_cross_rules(spec, 1, 2, reading) {
        let lhs = rl.lhs_word();
        let want = &derived[&rl.lhs];
        let got = rl.rhs_poly();
        let residual = if &got == want {
            None
        } else {
            Some((&got - want).to_string())
        };
        suite.push_residual(rl.citation.clone(), format!("{spec} {lhs}"), residual);
    }
    Ok(suite)
}

/// Ordered words of every total degree up to `max_total`.
pub fn ordered_words_up_to(h: &AlgebraHandle, max_total: usize) -> Vec<Word> {
    (0..=max_total)
        .flat_map(|k| h.alphabet().multidegrees_of_total(k))
        .flat_map(|d| h.graded_words(&d))
        .collect()
}

/// Presented product against the tensor oracle on all pairs of ordered words
/// with total degree at most `max_total`.
pub fn oracle_equivalence_suite(
    h: &AlgebraHandle,
    max_total: usize,
) -> Result<Suite, AlgebraError> {
    let mut suite = Suite::new(format!("oracle equivalence {h}"));
    let oracle = TensorOracle::new(h)?;
    let words = ordered_words_up_to(h, max_total);
    let mut checked = 0usize;
    let mut bad = Vec::new();
    for a in &words {
        for b in words.iter().filter(|b| a.len() + b.len() <= max_total) {
            let (pa, pb) = (
                NCPolynomial::from_word(a.clone()),
                NCPolynomial::from_word(b.clone()),
            );
            let presented = h.multiply(&pa, &pb)?;
            let braided = oracle.product(&pa, &pb)?;
            checked += 1;
            if presented != braided {
                bad.push(format!("{a} . {b}: {}", &presented - &braided));
            }
        }
    }
    suite.push_residual(
        "presented product equals the braided tensor product",
        format!("{h}: {checked} pairs up to total degree {max_total}"),
        if bad.is_empty() {
            None
        } else {
            Some(bad.join("; "))
        },
    );
    Ok(suite)
}

/// (ab)c = a(bc) on all letter triples.
pub fn associativity_suite(h: &AlgebraHandle) -> Result<Suite, AlgebraError> {
    let mut suite = Suite::new(format!("associativity {h}"));
    let letters: Vec<NCPolynomial> = h
        .alphabet()
        .letters()
        .iter()
        .map(|l| NCPolynomial::letter(*l))
        .collect();
    let mut bad = Vec::new();
    for a in &letters {
        for b in &letters {
            let ab = h.multiply(a, b)?;
            for c in &letters {
                let bc = h.multiply(b, c)?;
                if h.multiply(&ab, c)? != h.multiply(a, &bc)? {
                    bad.push(format!("{}", a.concat(b).concat(c)));
                }
            }
        }
    }
    let n = letters.len();
    suite.push_residual(
        "multiplication is associative on letter triples",
        format!("{h}: {} triples", n * n * n),
        if bad.is_empty() {
            None
        } else {
            Some(bad.join(", "))
        },
    );
    Ok(suite)
}

pub fn binomial(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Ordered-word counts against the classical dimensions, plus the overlap check
/// that makes the counts genuine dimensions.
pub fn flatness_suite(h: &AlgebraHandle, max_degree: usize) -> Result<Suite, AlgebraError> {
    let mut suite = Suite::new(format!("flatness {h}"));
    let letters = h.alphabet().letters().len() as u64;
    for k in 0..=max_degree {
        let total: usize = h
            .alphabet()
            .multidegrees_of_total(k)
            .iter()
            .map(|d| graded_dimension(h, d))
            .sum();
        let want = if h.alphabet().nilpotent {
            binomial(letters, k as u64)
        } else {
            binomial(letters + k as u64 - 1, k as u64)
        };
        suite.push(
            "graded dimension matches the classical algebra",
            format!("{h} degree {k}: {total} vs {want}"),
            total as u128 == want,
        );
    }
    if let AlgebraKind::Exterior { m, n } = h.kind {
        let total: usize = (0..=m * n)
            .flat_map(|k| h.alphabet().multidegrees_of_total(k))
            .map(|d| graded_dimension(h, &d))
            .sum();
        suite.push(
            "total dimension 2^(mn)",
            format!("{h}: {total}"),
            total as u128 == 1u128 << (m * n),
        );
    }
    let bad = h.system.overlap_failures(h.fuel)?;
    suite.push_residual(
        "all overlaps resolve (ordered words are a basis)",
        format!("{h}"),
        if bad.is_empty() {
            None
        } else {
            Some(bad.join(", "))
        },
    );
    Ok(suite)
}

/// At v = 1 every rule degenerates to commutation (anticommutation for Λ_q).
pub fn classical_limit_suite(h: &AlgebraHandle) -> Suite {
    let mut suite = Suite::new(format!("classical limit {h}"));
    let sign = if h.alphabet().nilpotent {
        -Scalar::one()
    } else {
        Scalar::one()
    };
    for r in h.system.rules() {
        let (a, b) = r.lhs;
        let swapped = if a == b && h.alphabet().nilpotent {
            NCPolynomial::zero()
        } else {
            NCPolynomial::monomial(sign.clone(), Word(vec![b, a]))
        };
        let defect = &r.rhs_poly() - &swapped;
        let bad: Vec<String> = defect
            .terms()
            .filter(|(_, c)| {
                c.classical_limit().map_or(true, |v| {
                    v != num_rational::BigRational::from_integer(0.into())
                })
            })
            .map(|(w, c)| format!("{c}*{w}"))
            .collect();
        suite.push_residual(
            "commutator defect vanishes at v = 1",
            format!("{h} {}", r.lhs_word()),
            if bad.is_empty() {
                None
            } else {
                Some(bad.join(" + "))
            },
        );
    }
    suite
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(f: Family, n: usize) -> LieTypeSpec {
        LieTypeSpec::new(f, n).unwrap()
    }

    fn w(ls: &[(usize, usize)]) -> NCPolynomial {
        NCPolynomial::from_word(Word(ls.iter().map(|&(i, a)| Letter::x(i, a)).collect()))
    }

    #[test]
    fn d2_sq_straightens_v_minus_one_v_one() {
        let h = build_sq(spec(Family::D, 2)).unwrap();
        // v_{-1} = position 4, v_2 = 2, v_{-2} = 3
        let nf = h.normal_form(&w(&[(1, 4), (1, 1)])).unwrap();
        let want = &w(&[(1, 1), (1, 4)]) - &w(&[(1, 2), (1, 3)]).scale(&qq());
        assert_eq!(nf, want);
    }

    #[test]
    fn sq_rule_counts_cover_inversions() {
        for (f, n) in [
            (Family::D, 2),
            (Family::B, 1),
            (Family::C, 2),
            (Family::B, 2),
        ] {
            let h = build_sq(spec(f, n)).unwrap();
            let d = h.spec.dim_v();
            assert_eq!(h.system.rules().len(), d * (d - 1) / 2, "{f}{n}");
        }
    }

    #[test]
    fn am_d2_same_label_commutation() {
        let h = build_am(spec(Family::D, 2), 2, false).unwrap();
        assert_eq!(
            h.multiply(&x(2, 1), &x(1, 1)).unwrap(),
            w(&[(1, 1), (2, 1)]).scale(&Scalar::q())
        );
    }

    #[test]
    fn gl_matrix_algebra_rules() {
        let h = build_am(spec(Family::GL, 2), 2, false).unwrap();
        let got = h.multiply(&x(2, 2), &x(1, 1)).unwrap();
        assert_eq!(
            got,
            &w(&[(1, 1), (2, 2)]) + &w(&[(1, 2), (2, 1)]).scale(&qq())
        );
        assert_eq!(
            h.multiply(&x(2, 1), &x(1, 2)).unwrap(),
            w(&[(1, 2), (2, 1)])
        );
    }

    #[test]
    fn exterior_rules() {
        let h = build_exterior(2, 2).unwrap();
        assert!(h.multiply(&x(1, 1), &x(1, 1)).unwrap().is_zero());
        assert_eq!(
            h.multiply(&x(1, 2), &x(1, 1)).unwrap(),
            w(&[(1, 1), (1, 2)]).scale(&-q(-1))
        );
        assert_eq!(
            h.multiply(&x(2, 1), &x(1, 2)).unwrap(),
            &w(&[(1, 2), (2, 1)]).scale(&-Scalar::one()) + &w(&[(1, 1), (2, 2)]).scale(&qq())
        );
    }

    #[test]
    fn akl_cross_rules() {
        let h = build_akl(2, 1, 1).unwrap();
        let yx = h.multiply(&y(1, 1), &x(1, 1)).unwrap();
        let xy = |c: usize| NCPolynomial::from_word(Word(vec![Letter::x(1, c), Letter::y(1, c)]));
        let want = &(&xy(1).scale(&q(1)) - &xy(1).scale(&qq())) - &xy(2).scale(&qq());
        assert_eq!(yx, want);
        let want = NCPolynomial::from_word(Word(vec![Letter::x(1, 1), Letter::y(1, 2)]));
        assert_eq!(h.multiply(&y(1, 2), &x(1, 1)).unwrap(), want);
    }

    #[test]
    fn oracle_matches_single_swaps() {
        let h = build_am(spec(Family::D, 2), 2, false).unwrap();
        for a in 1..=4 {
            for b in 1..=4 {
                assert_eq!(
                    tensor_oracle_product(&h, &x(2, a), &x(1, b)).unwrap(),
                    h.multiply(&x(2, a), &x(1, b)).unwrap()
                );
            }
        }
    }
}
