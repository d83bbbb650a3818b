//! Canonical text form of exponential polynomials.
//!
//! Terms are listed by ascending frequency, then ascending power of `t`:
//!
//! ```text
//! -(1/48)*t^-2*exp(-4*t) - (1/24)*t^-2*exp(8*t) + (1/16)*t^-2*exp(4*t)
//! ```
//!
//! A term is `(p/q)` or `(p)` for the magnitude of its coefficient,
//! optionally followed by `*t^e` (omitted for `e = 0`) and `*exp(μ*t)`
//! (omitted for `μ = 0`). Non-integral frequencies print as `(p/q)`. The
//! zero polynomial prints as `0`.

use std::fmt;
use std::str::FromStr;

use rug::{Integer, Rational};

use super::{ExpPoly, LaurentPoly};
use crate::error::{Error, Result};

fn write_frequency(f: &mut fmt::Formatter<'_>, mu: &Rational) -> fmt::Result {
    if *mu.denom() == 1 {
        write!(f, "{}", mu.numer())
    } else {
        write!(f, "({}/{})", mu.numer(), mu.denom())
    }
}

impl fmt::Display for ExpPoly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (mu, p) in self.terms() {
            for (e, c) in p.terms() {
                let negative = c.cmp0() == std::cmp::Ordering::Less;
                match (first, negative) {
                    (true, true) => f.write_str("-")?,
                    (true, false) => {}
                    (false, true) => f.write_str(" - ")?,
                    (false, false) => f.write_str(" + ")?,
                }
                first = false;
                let num = c.numer().clone().abs();
                if *c.denom() == 1 {
                    write!(f, "({})", num)?;
                } else {
                    write!(f, "({}/{})", num, c.denom())?;
                }
                if e != 0 {
                    write!(f, "*t^{}", e)?;
                }
                if mu.cmp0() != std::cmp::Ordering::Equal {
                    f.write_str("*exp(")?;
                    write_frequency(f, mu)?;
                    f.write_str("*t)")?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for ExpPoly<Rational> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Parser::new(s).expression()
    }
}

impl ExpPoly<Rational> {
    pub fn parse(s: &str) -> Result<Self> {
        s.parse()
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

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(format!("expected '{}'", c as char))
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<Integer> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            return self.error("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
        match Integer::from_str(text) {
            Ok(v) => Ok(v),
            Err(_) => self.error("invalid integer"),
        }
    }

    /// `int` or `int/int`.
    fn rational(&mut self) -> Result<Rational> {
        let num = self.integer()?;
        if self.eat(b'/') {
            let den = self.integer()?;
            if den == 0 {
                return self.error("zero denominator");
            }
            Ok(Rational::from((num, den)))
        } else {
            Ok(Rational::from(num))
        }
    }

    /// `(rational)` or a bare rational.
    fn bracketed_rational(&mut self) -> Result<Rational> {
        if self.eat(b'(') {
            let r = self.rational()?;
            self.expect(b')')?;
            Ok(r)
        } else {
            self.rational()
        }
    }

    fn expression(mut self) -> Result<ExpPoly> {
        let mut out = ExpPoly::zero();
        let mut sign = 1;
        if self.eat(b'-') {
            sign = -1;
        } else {
            self.eat(b'+');
        }
        loop {
            let (mu, e, c) = self.term()?;
            let c = if sign < 0 { -c } else { c };
            out.add_term(mu, LaurentPoly::monomial(c, e));
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    sign = if self.eat(b'-') { -1 } else { 1 };
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                Some(_) => return self.error("expected '+', '-' or end of input"),
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Rational, i32, Rational)> {
        let coeff = match self.peek() {
            Some(b't') | Some(b'e') => Rational::from(1),
            _ => self.bracketed_rational()?,
        };
        let mut exponent = 0i32;
        let mut frequency = Rational::new();
        let mut need_factor = coeff == 1 && matches!(self.peek(), Some(b't') | Some(b'e'));
        loop {
            if !need_factor && !self.eat(b'*') {
                break;
            }
            need_factor = false;
            if self.eat_keyword("exp(") {
                let mu = if self.peek() == Some(b't') {
                    Rational::from(1)
                } else {
                    let mu = self.bracketed_rational()?;
                    self.expect(b'*')?;
                    mu
                };
                self.expect(b't')?;
                self.expect(b')')?;
                frequency += mu;
            } else if self.eat(b't') {
                if self.eat(b'^') {
                    let k = self.integer()?;
                    match k.to_i32() {
                        Some(k) => exponent += k,
                        None => return self.error("exponent out of range"),
                    }
                } else {
                    exponent += 1;
                }
            } else {
                return self.error("expected 't^e' or 'exp(...)'");
            }
        }
        Ok((frequency, exponent, coeff))
    }
}
