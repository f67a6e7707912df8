use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Monomial, Polynomial, PolynomialRing};

/// Parses `3*x0^2*x1 - 1/2*x2^3 + x1*x2*x3` style text.
pub fn parse_polynomial<F: Field>(ring: &Arc<PolynomialRing<F>>, text: &str) -> Result<Polynomial<F>> {
    parse_polynomial_at(ring, text, 1)
}

/// Same as [`parse_polynomial`] but reports errors against `line`.
pub fn parse_polynomial_at<F: Field>(
    ring: &Arc<PolynomialRing<F>>,
    text: &str,
    line: usize,
) -> Result<Polynomial<F>> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        line,
    };
    let terms = p.polynomial(ring)?;
    Polynomial::from_terms(ring, terms)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Parser {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Some(false)
            }
            // ASCII hyphen or the unicode minus sign
            Some('-') | Some('\u{2212}') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }

    fn identifier(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() {
            let c = self.chars[self.pos];
            let ok = if self.pos == start {
                c.is_ascii_alphabetic() || c == '_'
            } else {
                c.is_ascii_alphanumeric() || c == '_'
            };
            if !ok {
                break;
            }
            self.pos += 1;
        }
        if start == self.pos {
            None
        } else {
            Some(self.chars[start..self.pos].iter().collect())
        }
    }

    fn polynomial<F: Field>(&mut self, ring: &Arc<PolynomialRing<F>>) -> Result<Vec<(F::Elem, Monomial)>> {
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let neg = match self.sign() {
                Some(n) => n,
                None if first => false,
                None => {
                    return match self.peek() {
                        None => Ok(terms),
                        Some(c) => Err(self.err(format!("unexpected character {c:?}"))),
                    }
                }
            };
            if self.peek().is_none() {
                return Err(self.err("expected a term"));
            }
            first = false;
            let (c, m) = self.term(ring)?;
            let c = if neg { ring.field().neg(&c) } else { c };
            terms.push((c, m));
        }
    }

    fn term<F: Field>(&mut self, ring: &Arc<PolynomialRing<F>>) -> Result<(F::Elem, Monomial)> {
        let k = ring.field();
        let mut exps = vec![0u16; ring.num_vars()];
        let mut coef = k.one();
        loop {
            let col = self.pos;
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = self.integer().expect("digit present");
                    let mut den = BigInt::one();
                    if self.peek() == Some('/') {
                        self.pos += 1;
                        den = self.integer().ok_or_else(|| self.err("expected a denominator"))?;
                    }
                    let v = k
                        .from_ratio(&num, &den)
                        .ok_or_else(|| self.err("denominator vanishes in the coefficient field"))?;
                    coef = k.mul(&coef, &v);
                }
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                    let name = self.identifier().expect("identifier present");
                    let i = ring.var_index(&name).ok_or_else(|| {
                        self.pos = col;
                        self.skip_ws();
                        self.err(format!("unknown variable {name}"))
                    })?;
                    let mut e = 1u32;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        let v = self.integer().ok_or_else(|| self.err("expected an exponent"))?;
                        e = v.try_into().map_err(|_| self.err("exponent too large"))?;
                    }
                    let total = exps[i] as u32 + e;
                    exps[i] = u16::try_from(total).map_err(|_| self.err("exponent too large"))?;
                }
                Some(c) => return Err(self.err(format!("unexpected character {c:?}"))),
                None => return Err(self.err("expected a factor")),
            }
            if self.peek() == Some('*') {
                self.pos += 1;
                continue;
            }
            // juxtaposition like `2x0` is accepted after a number
            match self.peek() {
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                    let prev = self.chars[self.pos - 1];
                    if prev.is_ascii_digit() {
                        continue;
                    }
                    break;
                }
                _ => break,
            }
        }
        Ok((coef, Monomial::from_slice(&exps)))
    }
}
