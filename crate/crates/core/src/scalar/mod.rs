//! The coefficient field 𝕂 = ℚ(v), with v² = q.
//!
//! Every [`Scalar`] is kept in canonical form: numerator a Laurent polynomial
//! in `v`, denominator a monic polynomial with nonzero constant term, the two
//! coprime. Structural equality is therefore field equality.

mod parse;
mod poly;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at v = 1")]
    PoleAtOne,
    #[error("cannot parse scalar: {0}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    /// Exponent of v attached to `num[0]`.
    low: i32,
    num: Poly,
    den: Poly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            low: 0,
            num: Vec::new(),
            den: vec![BigRational::one()],
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn from_rational(r: BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Scalar {
            low: 0,
            num: vec![r],
            den: vec![BigRational::one()],
        }
    }

    /// c·v^e
    pub fn monomial(c: BigRational, e: i32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Scalar {
            low: e,
            num: vec![c],
            den: vec![BigRational::one()],
        }
    }

    pub fn v_pow(e: i32) -> Self {
        Self::monomial(BigRational::one(), e)
    }

    pub fn q_pow(e: i32) -> Self {
        Self::v_pow(2 * e)
    }

    pub fn v() -> Self {
        Self::v_pow(1)
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// Laurent polynomial Σ coeffs[k]·v^{low+k}.
    pub fn laurent_v(low: i32, coeffs: &[i64]) -> Self {
        Self::from_parts(
            low,
            coeffs.iter().map(|&c| rat(c)).collect(),
            0,
            vec![BigRational::one()],
        )
    }

    /// Laurent polynomial in q: Σ coeffs[k]·q^{low+k}.
    pub fn laurent_q(low: i32, coeffs: &[i64]) -> Self {
        let mut num = Vec::with_capacity(2 * coeffs.len());
        for (k, &c) in coeffs.iter().enumerate() {
            if k > 0 {
                num.push(BigRational::zero());
            }
            num.push(rat(c));
        }
        Self::from_parts(2 * low, num, 0, vec![BigRational::one()])
    }

    /// q − q^{-1}
    pub fn q_minus_qinv() -> Self {
        Self::laurent_q(-1, &[-1, 0, 1])
    }

    /// [n]_q = (q^n − q^{-n})/(q − q^{-1}) for n ≥ 0, and −[−n]_q otherwise.
    pub fn qint(n: i32) -> Self {
        Self::qint_in(n, 2)
    }

    /// Quantum integer in the variable v^{step}.
    pub fn qint_in(n: i32, step: i32) -> Self {
        if n < 0 {
            return -Self::qint_in(-n, step);
        }
        let mut acc = Self::zero();
        for j in 0..n {
            acc += &Self::v_pow(step * (n - 1 - 2 * j));
        }
        acc
    }

    /// Quantum binomial coefficient in the variable v^{step}.
    pub fn qbinom_in(n: i32, k: i32, step: i32) -> Self {
        let mut num = Self::one();
        let mut den = Self::one();
        for j in 0..k {
            num *= &Self::qint_in(n - j, step);
            den *= &Self::qint_in(j + 1, step);
        }
        num.checked_div(&den).expect("nonzero quantum factorial")
    }

    fn from_parts(num_low: i32, mut num: Poly, den_low: i32, mut den: Poly) -> Self {
        poly::trim(&mut num);
        poly::trim(&mut den);
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return Self::zero();
        }
        let mut low = num_low - den_low;
        let nz = num.iter().position(|c| !c.is_zero()).unwrap();
        num.drain(..nz);
        low += nz as i32;
        let dz = den.iter().position(|c| !c.is_zero()).unwrap();
        den.drain(..dz);
        low -= dz as i32;
        if den.len() > 1 && num.len() > 1 {
            let g = poly::gcd(&num, &den);
            if g.len() > 1 {
                num = poly::divrem(&num, &g).0;
                den = poly::divrem(&den, &g).0;
            }
        }
        let lead = den.last().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.recip();
            num = poly::scale(&num, &inv);
            den = poly::scale(&den, &inv);
        }
        Scalar { low, num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && poly::is_one(&self.num) && poly::is_one(&self.den)
    }

    pub fn is_laurent(&self) -> bool {
        poly::is_one(&self.den)
    }

    /// If this is a single term c·v^e, return (c, e).
    pub fn as_monomial(&self) -> Option<(&BigRational, i32)> {
        if self.is_laurent() && self.num.len() == 1 {
            Some((&self.num[0], self.low))
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::from_parts(
            0,
            self.den.clone(),
            self.low,
            self.num.clone(),
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self * &other.inv()?)
    }

    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self, ScalarError> {
        Ok(match op {
            ArithOp::Add => self + other,
            ArithOp::Sub => self - other,
            ArithOp::Mul => self * other,
            ArithOp::Div => self.checked_div(other)?,
        })
    }

    pub fn pow(&self, e: i32) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc *= &base;
        }
        Ok(acc)
    }

    /// Value at v = 1.
    pub fn classical_limit(&self) -> Result<BigRational, ScalarError> {
        let d = poly::eval_one(&self.den);
        if d.is_zero() {
            return Err(ScalarError::PoleAtOne);
        }
        Ok(poly::eval_one(&self.num) / d)
    }

    /// True when only even powers of v occur, i.e. the value lies in ℚ(q).
    pub fn is_in_q(&self) -> bool {
        let even = |low: i32, p: &Poly| {
            p.iter()
                .enumerate()
                .all(|(k, c)| c.is_zero() || (low + k as i32) % 2 == 0)
        };
        even(self.low, &self.num) && even(0, &self.den)
    }

    pub fn parse(s: &str) -> Result<Self, ScalarError> {
        parse::parse(s)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

fn laurent_add(al: i32, a: &Poly, bl: i32, b: &Poly) -> (i32, Poly) {
    if a.is_empty() {
        return (bl, b.clone());
    }
    if b.is_empty() {
        return (al, a.clone());
    }
    let low = al.min(bl);
    let pad = |l: i32, p: &Poly| {
        let mut v = vec![BigRational::zero(); (l - low) as usize];
        v.extend(p.iter().cloned());
        v
    };
    (low, poly::add(&pad(al, a), &pad(bl, b)))
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.is_laurent() && o.is_laurent() {
            let (low, num) = laurent_add(self.low, &self.num, o.low, &o.num);
            return Scalar::from_parts(low, num, 0, vec![BigRational::one()]);
        }
        let (low, num) = laurent_add(
            self.low,
            &poly::mul(&self.num, &o.den),
            o.low,
            &poly::mul(&o.num, &self.den),
        );
        Scalar::from_parts(low, num, 0, poly::mul(&self.den, &o.den))
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.is_laurent() && o.is_laurent() {
            return Scalar {
                low: self.low + o.low,
                num: poly::mul(&self.num, &o.num),
                den: vec![BigRational::one()],
            };
        }
        Scalar::from_parts(
            self.low + o.low,
            poly::mul(&self.num, &o.num),
            0,
            poly::mul(&self.den, &o.den),
        )
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            low: self.low,
            num: poly::neg(&self.num),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, o: Scalar) -> Scalar {
                (&self).$f(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, o: &Scalar) -> Scalar {
                (&self).$f(o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $f(self, o: Scalar) -> Scalar {
                self.$f(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}
impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}
impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Terms in descending exponent; `div` halves exponents when printing in q.
fn fmt_laurent(low: i32, p: &Poly, var: char, div: i32) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let e = (low + k as i32) / div;
        let neg = c.is_negative();
        let a = c.abs();
        let body = match (e, a.is_one()) {
            (0, _) => fmt_rat(&a),
            (1, true) => format!("{var}"),
            (_, true) => format!("{var}^{e}"),
            (1, false) => format!("{}*{var}", fmt_rat(&a)),
            (_, false) => format!("{}*{var}^{e}", fmt_rat(&a)),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (var, div) = if self.is_in_q() { ('q', 2) } else { ('v', 1) };
        let num = fmt_laurent(self.low, &self.num, var, div);
        if self.is_laurent() {
            f.write_str(&num)
        } else {
            let den = fmt_laurent(0, &self.den, var, div);
            write!(f, "({num})/({den})")
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Scalar::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Scalar {
        Scalar::q()
    }
    fn qi() -> Scalar {
        Scalar::q_pow(-1)
    }

    #[test]
    fn product_of_conjugates() {
        let a = &q() - &qi();
        let b = &q() + &qi();
        assert_eq!(&a * &b, &Scalar::q_pow(2) - &Scalar::q_pow(-2));
    }

    #[test]
    fn quantum_integer_by_division() {
        let n = 3;
        let a = &Scalar::q_pow(n) - &Scalar::q_pow(-n);
        let r = a.checked_div(&Scalar::q_minus_qinv()).unwrap();
        assert_eq!(r, Scalar::laurent_q(-2, &[1, 0, 1, 0, 1]));
        assert_eq!(r, Scalar::qint(3));
    }

    #[test]
    fn psijj_coefficient() {
        let n = 2;
        let c = &Scalar::q_pow(1 - n) * &(&Scalar::q_pow(n - 1) + &Scalar::q_pow(1 - n));
        assert_eq!(&c + &Scalar::zero(), &Scalar::one() + &Scalar::q_pow(-2));
    }

    #[test]
    fn classical_limits() {
        assert_eq!(Scalar::qint(4).classical_limit().unwrap(), rat(4));
        assert_eq!(Scalar::q_minus_qinv().classical_limit().unwrap(), rat(0));
        let pole = Scalar::one().checked_div(&(&q() - &Scalar::one())).unwrap();
        assert_eq!(pole.classical_limit(), Err(ScalarError::PoleAtOne));
        // 0/0 cancels first
        let r = (&q() - &Scalar::one())
            .checked_div(&(&Scalar::q_pow(2) - &Scalar::one()))
            .unwrap();
        assert_eq!(
            r.classical_limit().unwrap(),
            BigRational::new(1.into(), 2.into())
        );
    }

    #[test]
    fn division_by_zero_is_error() {
        assert_eq!(
            Scalar::one().checked_div(&Scalar::zero()),
            Err(ScalarError::DivisionByZero)
        );
        assert_eq!(
            Scalar::one().arith(&Scalar::zero(), ArithOp::Div),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn canonical_denominator() {
        let r = Scalar::one()
            .checked_div(&(&Scalar::from_int(-2) * &Scalar::v()))
            .unwrap();
        assert!(r.is_laurent());
        assert_eq!(
            r,
            Scalar::monomial(BigRational::new((-1).into(), 2.into()), -1)
        );
        assert_eq!(Scalar::zero().to_string(), "0");
    }

    #[test]
    fn rendering() {
        let a = &(&Scalar::q_pow(2) - &Scalar::from_int(2)) + &Scalar::q_pow(-2);
        assert_eq!(a.to_string(), "q^2 - 2 + q^-2");
        let b = (&q() + &qi())
            .checked_div(&(&Scalar::q_pow(2) - &Scalar::one()))
            .unwrap();
        assert_eq!(Scalar::parse(&b.to_string()).unwrap(), b);
        assert_eq!((&Scalar::v() + &Scalar::v_pow(-1)).to_string(), "v + v^-1");
    }

    #[test]
    fn quantum_binomials() {
        assert_eq!(Scalar::qbinom_in(3, 1, 2), Scalar::qint(3));
        assert_eq!(
            Scalar::qbinom_in(4, 2, 2).classical_limit().unwrap(),
            rat(6)
        );
    }
}
