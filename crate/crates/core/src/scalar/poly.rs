//! Dense univariate polynomials over ℚ, ascending coefficients, no trailing zeros.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) type Poly = Vec<BigRational>;

pub(crate) fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn add(a: &Poly, b: &Poly) -> Poly {
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    for i in 0..a.len().max(b.len()) {
        let x = match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        };
        out.push(x);
    }
    trim(&mut out);
    out
}

pub(crate) fn neg(a: &Poly) -> Poly {
    a.iter().map(|c| -c).collect()
}

pub(crate) fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn scale(a: &Poly, c: &BigRational) -> Poly {
    let mut out: Poly = a.iter().map(|x| x * c).collect();
    trim(&mut out);
    out
}

/// Euclidean division; `b` must be nonzero.
pub(crate) fn divrem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let db = b.len() - 1;
    let lead = &b[db];
    let mut r = a.clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = &r[r.len() - 1] / lead;
        for (j, y) in b.iter().enumerate() {
            let t = &c * y;
            r[shift + j] -= t;
        }
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub(crate) fn monic(a: &Poly) -> Poly {
    match a.last() {
        None => Vec::new(),
        Some(l) => {
            let inv = l.recip();
            scale(a, &inv)
        }
    }
}

/// Monic gcd; gcd(0, 0) = 0.
pub(crate) fn gcd(a: &Poly, b: &Poly) -> Poly {
    let mut x = monic(a);
    let mut y = monic(b);
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = monic(&r);
    }
    x
}

pub(crate) fn is_one(a: &Poly) -> bool {
    a.len() == 1 && a[0].is_one()
}

pub(crate) fn eval_one(a: &Poly) -> BigRational {
    a.iter().fold(BigRational::zero(), |acc, c| acc + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(cs: &[i64]) -> Poly {
        let mut v: Poly = cs
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        trim(&mut v);
        v
    }

    #[test]
    fn division_roundtrip() {
        let a = p(&[-1, 0, 0, 1]);
        let b = p(&[-1, 1]);
        let (q, r) = divrem(&a, &b);
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_empty());
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x-1)(x+2) and (x-1)(x+3)
        let a = mul(&p(&[-1, 1]), &p(&[2, 1]));
        let b = mul(&p(&[-1, 1]), &p(&[3, 1]));
        assert_eq!(gcd(&a, &b), p(&[-1, 1]));
        assert_eq!(gcd(&p(&[2, 1]), &p(&[3, 1])), p(&[1]));
    }
}
