//! Canonical text form of a polynomial and its parser.
//!
//! Terms are joined by `" + "` / `" - "`. Inside a term the coefficient comes
//! first (omitted when it is 1 and a variable is present), then the variables
//! in the order q, s, x, z with `^e` for exponents other than 1. Terms are
//! listed by descending z-degree, then descending x-degree, then ascending
//! s-degree, then ascending q-degree; e.g. f(5) prints as
//! `x^4 + q*s*x^2 + q^2*s*x^2 + q^3*s*x^2 + q^4*s^2`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Poly, PolyError, Var};

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by_key(|(m, _)| m.display_key());
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if m.is_one() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", mag, m)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Poly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser::new(s).parse()
    }
}

impl Poly {
    pub fn parse(text: &str) -> Result<Poly, PolyError> {
        text.parse()
    }

    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn parse(mut self) -> Result<Poly, PolyError> {
        let mut terms = Vec::new();
        self.skip_ws();
        let mut negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            None => return self.err("empty input"),
            _ => false,
        };
        loop {
            self.skip_ws();
            let (m, mut c) = self.term()?;
            if negate {
                c = -c;
            }
            terms.push((m, c));
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                Some(ch) => return self.err(format!("unexpected character `{}`", ch as char)),
            }
            self.pos += 1;
        }
        Ok(Poly::from_terms(terms))
    }

    fn term(&mut self) -> Result<(Monomial, BigInt), PolyError> {
        let mut mono = Monomial::ONE;
        let mut coeff = BigInt::one();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'0'..=b'9') => coeff *= self.integer()?,
                Some(ch) if Var::from_name(ch as char).is_some() => {
                    let v = Var::from_name(ch as char).unwrap();
                    self.pos += 1;
                    self.skip_ws();
                    let e = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        self.exponent()?
                    } else {
                        1
                    };
                    mono = mono.mul(&Monomial::var_pow(v, e));
                }
                Some(ch) => {
                    return self.err(format!(
                        "expected a number or variable, found `{}`",
                        ch as char
                    ))
                }
                None => return self.err("expected a number or variable, found end of input"),
            }
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        if coeff.is_zero() {
            Ok((Monomial::ONE, coeff))
        } else {
            Ok((mono, coeff))
        }
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn exponent(&mut self) -> Result<i32, PolyError> {
        let neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'0'..=b'9') => false,
            _ => return self.err("expected an integer exponent"),
        };
        let start = self.pos;
        let value = self.integer()?;
        let value = if neg { -value } else { value };
        i32::try_from(value).or_else(|_| {
            self.pos = start;
            self.err("exponent out of range")
        })
    }
}
