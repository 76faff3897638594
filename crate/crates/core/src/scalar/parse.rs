//! Recursive-descent reader for the textual scalar format.
//!
//! Grammar: expr := term (('+'|'-') term)*; term := unary (('*'|'/') unary)*;
//! unary := '-' unary | power; power := atom ('^' '-'? int)?;
//! atom := int | 'q' | 'v' | '(' expr ')'.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Scalar, ScalarError};

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

fn err(msg: impl Into<String>) -> ScalarError {
    ScalarError::Parse(msg.into())
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    acc = acc.checked_div(&self.unary()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Scalar, ScalarError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar, ScalarError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e: i32 = self
                .integer()?
                .try_into()
                .map_err(|_| err("exponent out of range"))?;
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(format!("expected integer at offset {start}")));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        txt.parse().map_err(|_| err("bad integer"))
    }

    fn atom(&mut self) -> Result<Scalar, ScalarError> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok(Scalar::q())
            }
            Some(b'v') => {
                self.pos += 1;
                Ok(Scalar::v())
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(err("unbalanced parenthesis"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Scalar::from_rational(BigRational::from_integer(
                self.integer()?,
            ))),
            Some(c) => Err(err(format!(
                "unexpected '{}' at offset {}",
                c as char, self.pos
            ))),
            None => Err(err("unexpected end of input")),
        }
    }
}

pub(super) fn parse(s: &str) -> Result<Scalar, ScalarError> {
    let mut p = Parser {
        s: s.as_bytes(),
        pos: 0,
    };
    let r = p.expr()?;
    if p.peek().is_some() {
        return Err(err(format!("trailing input at offset {}", p.pos)));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_examples() {
        let a = parse("q^2 - 2 + q^-2").unwrap();
        assert_eq!(a, Scalar::laurent_q(-2, &[1, 0, -2, 0, 1]));
        let b = parse("(q+q^-1)/(q^2-1)").unwrap();
        assert_eq!(
            &b * &(&Scalar::q_pow(2) - &Scalar::one()),
            &Scalar::q() + &Scalar::q_pow(-1)
        );
        assert_eq!(parse("-3/2*v^3").unwrap().to_string(), "-3/2*v^3");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse("q +").is_err());
        assert!(parse("x").is_err());
        assert!(parse("1/0").is_err());
    }
}
