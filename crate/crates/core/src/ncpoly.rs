//! Words, noncommutative polynomials and quadratic rewriting to ordered monomials.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{Rref, SparseVec};
use crate::scalar::Scalar;

/// Fuel used when the caller has no preference.
pub const DEFAULT_FUEL: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum LetterKind {
    X,
    Y,
}

/// A generator `X[factor, label]` or `Y[factor, label]`.
///
/// The derived order (kind, factor, label) is the letter order of every algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub kind: LetterKind,
    pub factor: u16,
    pub label: u16,
}

impl Letter {
    pub fn x(factor: usize, label: usize) -> Self {
        Letter {
            kind: LetterKind::X,
            factor: factor as u16,
            label: label as u16,
        }
    }

    pub fn y(factor: usize, label: usize) -> Self {
        Letter {
            kind: LetterKind::Y,
            factor: factor as u16,
            label: label as u16,
        }
    }

    pub fn factor(&self) -> usize {
        self.factor as usize
    }

    pub fn label(&self) -> usize {
        self.label as usize
    }

    pub fn with_label(self, label: usize) -> Self {
        Letter {
            label: label as u16,
            ..self
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            LetterKind::X => "X",
            LetterKind::Y => "Y",
        };
        write!(f, "{k}[{},{}]", self.factor, self.label)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NCPolynomial {
    terms: BTreeMap<Word, Scalar>,
}

fn add_into(map: &mut BTreeMap<Word, Scalar>, w: Word, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&w) {
        Some(x) => {
            *x += &c;
            if x.is_zero() {
                map.remove(&w);
            }
        }
        None => {
            map.insert(w, c);
        }
    }
}

impl NCPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        Self::monomial(Scalar::one(), w)
    }

    pub fn letter(l: Letter) -> Self {
        Self::from_word(Word(vec![l]))
    }

    pub fn monomial(c: Scalar, w: Word) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, Word::empty())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        add_into(&mut self.terms, w, c);
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        NCPolynomial {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    /// Free (unreduced) product: concatenation of words.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.concat(b), x * y);
            }
        }
        out
    }

    /// Expresses the polynomial in a word basis given as an index map.
    pub fn to_sparse(&self, index: &HashMap<Word, usize>) -> Option<SparseVec> {
        let mut v = SparseVec::new();
        for (w, c) in &self.terms {
            v.insert(*index.get(w)?, c.clone());
        }
        Some(v)
    }

    pub fn from_sparse(v: &SparseVec, words: &[Word]) -> Self {
        Self::from_terms(v.iter().map(|(k, c)| (words[*k].clone(), c.clone())))
    }
}

impl fmt::Display for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if w.is_empty() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "({c})*{w}")?;
            }
        }
        Ok(())
    }
}

impl Add for &NCPolynomial {
    type Output = NCPolynomial;
    fn add(self, rhs: &NCPolynomial) -> NCPolynomial {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &NCPolynomial {
    type Output = NCPolynomial;
    fn sub(self, rhs: &NCPolynomial) -> NCPolynomial {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Neg for &NCPolynomial {
    type Output = NCPolynomial;
    fn neg(self) -> NCPolynomial {
        self.scale(&-Scalar::one())
    }
}

impl Mul<&Scalar> for &NCPolynomial {
    type Output = NCPolynomial;
    fn mul(self, rhs: &Scalar) -> NCPolynomial {
        self.scale(rhs)
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for NCPolynomial {
            type Output = NCPolynomial;
            fn $m(self, rhs: NCPolynomial) -> NCPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NcError {
    #[error("rewriting ran out of fuel after {used} steps")]
    FuelExhausted { used: u64, partial: NCPolynomial },
    #[error("invalid presentation: {0}")]
    BadPresentation(String),
}

/// Ordered generating set with a grading slot per letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<Letter>,
    slots: BTreeMap<Letter, usize>,
    nslots: usize,
    /// Generators square to zero; ordered words are then strictly increasing.
    pub nilpotent: bool,
}

impl Alphabet {
    /// Letters with their grading slot; letters of one slot must be contiguous in letter order.
    pub fn new(mut graded: Vec<(Letter, usize)>, nilpotent: bool) -> Self {
        graded.sort();
        graded.dedup();
        let nslots = graded.iter().map(|(_, s)| s + 1).max().unwrap_or(0);
        let slots: BTreeMap<_, _> = graded.iter().copied().collect();
        debug_assert!(
            graded.windows(2).all(|w| w[0].1 <= w[1].1),
            "slots must follow letter order"
        );
        Alphabet {
            letters: graded.into_iter().map(|(l, _)| l).collect(),
            slots,
            nslots,
            nilpotent,
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn contains(&self, l: &Letter) -> bool {
        self.slots.contains_key(l)
    }

    pub fn slot(&self, l: &Letter) -> usize {
        self.slots[l]
    }

    pub fn nslots(&self) -> usize {
        self.nslots
    }

    pub fn slot_letters(&self, s: usize) -> impl Iterator<Item = &Letter> {
        self.letters.iter().filter(move |l| self.slots[l] == s)
    }

    /// Whether xy is out of order, i.e. must be rewritten.
    pub fn is_inverted(&self, x: &Letter, y: &Letter) -> bool {
        x > y || (self.nilpotent && x == y)
    }

    pub fn multidegree(&self, w: &Word) -> Vec<usize> {
        let mut d = vec![0; self.nslots];
        for l in w.letters() {
            d[self.slot(l)] += 1;
        }
        d
    }

    /// All ordered words of multidegree `d`, in lexicographic order.
    pub fn graded_words(&self, d: &[usize]) -> Vec<Word> {
        assert_eq!(d.len(), self.nslots, "multidegree length");
        let mut out = vec![Vec::new()];
        for (s, &k) in d.iter().enumerate() {
            let pool: Vec<Letter> = self.slot_letters(s).copied().collect();
            let blocks = multisets(&pool, k, self.nilpotent);
            let mut next = Vec::with_capacity(out.len() * blocks.len());
            for prefix in &out {
                for b in &blocks {
                    let mut w: Vec<Letter> = Vec::clone(prefix);
                    w.extend_from_slice(b);
                    next.push(w);
                }
            }
            out = next;
        }
        let mut words: Vec<Word> = out.into_iter().map(Word).collect();
        words.sort();
        words
    }

    /// All multidegrees with the given total degree, in lexicographic order.
    pub fn multidegrees_of_total(&self, total: usize) -> Vec<Vec<usize>> {
        compositions(total, self.nslots)
    }
}

/// Sorted k-element multisets (or sets, if `strict`) from `pool`.
fn multisets(pool: &[Letter], k: usize, strict: bool) -> Vec<Vec<Letter>> {
    fn go(
        pool: &[Letter],
        start: usize,
        k: usize,
        strict: bool,
        cur: &mut Vec<Letter>,
        out: &mut Vec<Vec<Letter>>,
    ) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i]);
            go(
                pool,
                if strict { i + 1 } else { i },
                k - 1,
                strict,
                cur,
                out,
            );
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(pool, 0, k, strict, &mut Vec::new(), &mut out);
    out
}

/// Weak compositions of `total` into `parts` parts.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out.sort();
    out
}

/// `lhs → Σ c·(a b)` with every `a b` smaller than `lhs` in letter order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: (Letter, Letter),
    pub rhs: Vec<(Scalar, Letter, Letter)>,
    pub citation: String,
}

impl Rule {
    pub fn rhs_poly(&self) -> NCPolynomial {
        NCPolynomial::from_terms(
            self.rhs
                .iter()
                .map(|(c, a, b)| (Word(vec![*a, *b]), c.clone())),
        )
    }

    pub fn lhs_word(&self) -> Word {
        Word(vec![self.lhs.0, self.lhs.1])
    }
}

/// Quadratic rewriting system under the degree-lexicographic order.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    alphabet: Alphabet,
    rules: Vec<Rule>,
    index: HashMap<(Letter, Letter), usize>,
}

impl RewriteSystem {
    /// Checks that rules cover exactly the inverted pairs and strictly decrease.
    pub fn new(alphabet: Alphabet, mut rules: Vec<Rule>) -> Result<Self, NcError> {
        rules.sort_by_key(|r| r.lhs);
        let mut index = HashMap::new();
        for (k, r) in rules.iter().enumerate() {
            let (x, y) = r.lhs;
            if !alphabet.contains(&x) || !alphabet.contains(&y) {
                return Err(NcError::BadPresentation(format!(
                    "rule {x}{y} leaves the alphabet"
                )));
            }
            if !alphabet.is_inverted(&x, &y) {
                return Err(NcError::BadPresentation(format!(
                    "rule on ordered pair {x}*{y}"
                )));
            }
            for (_, a, b) in &r.rhs {
                if (a, b) >= (&x, &y) {
                    return Err(NcError::BadPresentation(format!(
                        "rule {x}*{y} produces non-decreasing word {a}*{b}"
                    )));
                }
                if !alphabet.contains(a) || !alphabet.contains(b) {
                    return Err(NcError::BadPresentation(format!(
                        "rule {x}*{y} leaves the alphabet"
                    )));
                }
            }
            if index.insert(r.lhs, k).is_some() {
                return Err(NcError::BadPresentation(format!(
                    "duplicate rule for {x}*{y}"
                )));
            }
        }
        for x in alphabet.letters() {
            for y in alphabet.letters() {
                if alphabet.is_inverted(x, y) && !index.contains_key(&(*x, *y)) {
                    return Err(NcError::BadPresentation(format!(
                        "no rule straightens {x}*{y}"
                    )));
                }
            }
        }
        Ok(RewriteSystem {
            alphabet,
            rules,
            index,
        })
    }

    /// Solves quadratic relations for their leading (largest) words.
    ///
    /// The leading words must be exactly the inverted pairs of `alphabet`.
    pub fn from_relations(
        alphabet: Alphabet,
        relations: &[(NCPolynomial, String)],
    ) -> Result<Self, NcError> {
        let mut words: BTreeSet<Word> = BTreeSet::new();
        for (p, _) in relations {
            for (w, _) in p.terms() {
                if w.len() != 2 {
                    return Err(NcError::BadPresentation(format!("non-quadratic term {w}")));
                }
                words.insert(w.clone());
            }
        }
        // column 0 is the largest word, so the Rref pivot is the leading word
        let cols: Vec<Word> = words.into_iter().rev().collect();
        let idx: HashMap<Word, usize> = cols
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let mut rref = Rref::new();
        let mut cite: BTreeMap<usize, String> = BTreeMap::new();
        for (p, c) in relations {
            let v = p.to_sparse(&idx).expect("indexed");
            let reduced = rref.reduce(&v);
            if let Some((&lead, _)) = reduced.iter().next() {
                cite.entry(lead).or_insert_with(|| c.clone());
            }
            rref.insert(&v);
        }
        let mut rules = Vec::new();
        for (p, row) in rref.pivots() {
            let lhs = &cols[*p];
            let rhs = row
                .iter()
                .filter(|(k, _)| *k != p)
                .map(|(k, c)| (-c, cols[*k].0[0], cols[*k].0[1]))
                .collect();
            rules.push(Rule {
                lhs: (lhs.0[0], lhs.0[1]),
                rhs,
                citation: cite.get(p).cloned().unwrap_or_default(),
            });
        }
        Self::new(alphabet, rules)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, x: &Letter, y: &Letter) -> Option<&Rule> {
        self.index.get(&(*x, *y)).map(|&k| &self.rules[k])
    }

    fn leftmost_redex(&self, w: &Word) -> Option<(usize, &Rule)> {
        w.0.windows(2)
            .enumerate()
            .find_map(|(k, p)| self.rule(&p[0], &p[1]).map(|r| (k, r)))
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.leftmost_redex(w).is_none()
    }

    /// Rewrites to ordered words, always at the leftmost redex of the largest word.
    pub fn normal_form(&self, p: &NCPolynomial, fuel: u64) -> Result<NCPolynomial, NcError> {
        let mut todo = p.terms.clone();
        let mut done = BTreeMap::new();
        let mut used = 0u64;
        while let Some((w, c)) = todo.pop_last() {
            let Some((k, rule)) = self.leftmost_redex(&w) else {
                add_into(&mut done, w, c);
                continue;
            };
            used += 1;
            if used > fuel {
                add_into(&mut todo, w, c);
                for (w, c) in done {
                    add_into(&mut todo, w, c);
                }
                return Err(NcError::FuelExhausted {
                    used: fuel,
                    partial: NCPolynomial { terms: todo },
                });
            }
            for (s, a, b) in &rule.rhs {
                let mut nw = w.0.clone();
                nw[k] = *a;
                nw[k + 1] = *b;
                debug_assert!(Word(nw.clone()) < w);
                add_into(&mut todo, Word(nw), &c * s);
            }
        }
        Ok(NCPolynomial { terms: done })
    }

    pub fn multiply(
        &self,
        p: &NCPolynomial,
        r: &NCPolynomial,
        fuel: u64,
    ) -> Result<NCPolynomial, NcError> {
        self.normal_form(&p.concat(r), fuel)
    }

    /// Resolves every overlap xyz of two rules both ways; returns the failing triples.
    ///
    /// Together with termination this certifies that ordered words form a basis.
    pub fn overlap_failures(&self, fuel: u64) -> Result<Vec<String>, NcError> {
        let mut bad = Vec::new();
        for r1 in &self.rules {
            let (x, y) = r1.lhs;
            for z in self.alphabet.letters() {
                let Some(r2) = self.rule(&y, z) else { continue };
                let left =
                    self.normal_form(&r1.rhs_poly().concat(&NCPolynomial::letter(*z)), fuel)?;
                let right =
                    self.normal_form(&NCPolynomial::letter(x).concat(&r2.rhs_poly()), fuel)?;
                if left != right {
                    bad.push(format!("{x}*{y}*{z}"));
                }
            }
        }
        Ok(bad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Quantum plane: y x = q x y.
    fn plane() -> RewriteSystem {
        let x = Letter::x(1, 1);
        let y = Letter::x(1, 2);
        let a = Alphabet::new(vec![(x, 0), (y, 0)], false);
        RewriteSystem::new(
            a,
            vec![Rule {
                lhs: (y, x),
                rhs: vec![(Scalar::q(), x, y)],
                citation: String::new(),
            }],
        )
        .unwrap()
    }

    #[test]
    fn quantum_plane_straightening() {
        let rs = plane();
        let x = Letter::x(1, 1);
        let y = Letter::x(1, 2);
        let w = NCPolynomial::from_word(Word(vec![y, y, x]));
        let nf = rs.normal_form(&w, 100).unwrap();
        assert_eq!(
            nf,
            NCPolynomial::monomial(Scalar::q_pow(2), Word(vec![x, y, y]))
        );
        assert!(rs.overlap_failures(100).unwrap().is_empty());
    }

    #[test]
    fn fuel_exhaustion_reports_partial() {
        let rs = plane();
        let x = Letter::x(1, 1);
        let y = Letter::x(1, 2);
        let w = NCPolynomial::from_word(Word(vec![y, y, x, x]));
        match rs.normal_form(&w, 1) {
            Err(NcError::FuelExhausted { partial, .. }) => assert_eq!(partial.len(), 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn graded_word_counts() {
        let letters: Vec<_> = (1..=4).map(|a| (Letter::x(1, a), 0)).collect();
        let a = Alphabet::new(letters.clone(), false);
        assert_eq!(a.graded_words(&[2]).len(), 10);
        assert_eq!(a.graded_words(&[0]), vec![Word::empty()]);
        let e = Alphabet::new(letters, true);
        assert_eq!(e.graded_words(&[4]).len(), 1);
        assert_eq!(compositions(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn missing_rule_rejected() {
        let x = Letter::x(1, 1);
        let y = Letter::x(1, 2);
        let a = Alphabet::new(vec![(x, 0), (y, 0)], false);
        assert!(matches!(
            RewriteSystem::new(a, vec![]),
            Err(NcError::BadPresentation(_))
        ));
    }
}
