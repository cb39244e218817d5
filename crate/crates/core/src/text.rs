//! Plain-text polynomial syntax: `3*x^5 - 1/2*x + 7`.

use crate::error::{Error, Result};
use crate::sparse::RationalPoly;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// Writes terms given in descending exponent order as `a*x^k - b*x + c`.
pub(crate) fn write_terms<I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (BigUint, bool, String)>,
{
    let mut first = true;
    for (e, negative, mag) in terms {
        match (first, negative) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;
        let unit = mag == "1";
        if e.is_zero() {
            f.write_str(&mag)?;
            continue;
        }
        if !unit {
            write!(f, "{mag}*")?;
        }
        if e.is_one() {
            f.write_str("x")?;
        } else {
            write!(f, "x^{e}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

struct Lexer<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        let chars = src
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        Lexer { chars, pos: 0, src }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.len(), |&(i, _)| i)
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn digits(&mut self) -> Option<BigUint> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        if s.is_empty() {
            None
        } else {
            Some(s.parse().expect("ascii digits"))
        }
    }

    fn term(&mut self) -> Result<(BigUint, BigRational)> {
        let mut coef = BigRational::one();
        let mut has_coef = false;
        if let Some(n) = self.digits() {
            has_coef = true;
            let mut q = BigRational::from_integer(BigInt::from(n));
            if self.eat('/') {
                let at = self.pos;
                match self.digits() {
                    Some(d) if !d.is_zero() => q /= BigRational::from_integer(BigInt::from(d)),
                    Some(_) => {
                        self.pos = at;
                        return self.error("zero denominator");
                    }
                    None => return self.error("expected denominator"),
                }
            }
            coef = q;
        }
        let star = has_coef && self.eat('*');
        if matches!(self.peek(), Some('x' | 'X')) {
            self.bump();
            let exp = if self.eat('^') {
                match self.digits() {
                    Some(e) => e,
                    None => return self.error("expected exponent"),
                }
            } else {
                BigUint::one()
            };
            return Ok((exp, coef));
        }
        if star {
            return self.error("expected 'x' after '*'");
        }
        if !has_coef {
            return self.error("expected a term");
        }
        Ok((BigUint::zero(), coef))
    }
}

/// Parses `[coef][*][x[^exp]]` terms joined by `+` and `-`; whitespace is ignored.
pub fn parse_poly(src: &str) -> Result<RationalPoly> {
    let mut lx = Lexer::new(src);
    if lx.peek().is_none() {
        return lx.error("empty input");
    }
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let negative = if lx.eat('-') {
            true
        } else if lx.eat('+') || first {
            false
        } else {
            match lx.peek() {
                None => break,
                Some(c) => return lx.error(format!("unexpected '{c}'")),
            }
        };
        first = false;
        let (e, c) = lx.term()?;
        terms.push((e, if negative { -c } else { c }));
    }
    Ok(RationalPoly::from_unsorted(terms))
}
