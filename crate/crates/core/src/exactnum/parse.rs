//! Recursive-descent reader for rational-function strings such as
//! `(1 - 3*e)/(1 - 2*e)`.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' integer)?
//! atom  := number | var | '(' expr ')'
//! ```
//!
//! Numbers are integers or finite decimals and are read exactly.

use num_bigint::BigInt;
use num_traits::{One, Pow};

use super::{EpsPoly, EpsRat, Rat, MAX_DEGREE};
use crate::error::{Error, Result};

pub fn parse_rational_function(src: &str, var: &str) -> Result<EpsRat> {
    let mut p = Parser { src, pos: 0, var };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    var: &'a str,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<EpsRat> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let rhs = self.term()?;
                acc = acc.checked_add(&rhs)?;
            } else if self.eat('-') {
                let rhs = self.term()?;
                acc = acc.checked_sub(&rhs)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<EpsRat> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = acc.checked_mul(&rhs)?;
            } else if self.eat('/') {
                let at = self.pos;
                let rhs = self.unary()?;
                acc = acc.checked_div(&rhs).map_err(|e| match e {
                    Error::DivisionByZero => Error::Parse {
                        pos: at,
                        msg: "division by zero".into(),
                    },
                    other => other,
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<EpsRat> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<EpsRat> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(char::is_ascii_digit).collect();
        if digits.is_empty() {
            return Err(self.err("expected a non-negative integer exponent"));
        }
        let exp: usize = digits
            .parse()
            .ok()
            .filter(|&e| e <= MAX_DEGREE)
            .ok_or_else(|| self.err("exponent too large"))?;
        self.pos += digits.len();
        let mut out = EpsRat::one();
        for _ in 0..exp {
            out = out.checked_mul(&base)?;
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<EpsRat> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => self.number(),
            Some(_) if self.rest().starts_with(self.var) => {
                let after = &self.rest()[self.var.len()..];
                if after.chars().next().is_some_and(char::is_alphanumeric) {
                    return Err(self.err("unknown identifier"));
                }
                self.pos += self.var.len();
                Ok(EpsRat::from_poly(EpsPoly::monomial(Rat::one(), 1))?)
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<EpsRat> {
        let text: String = self
            .rest()
            .chars()
            .take_while(|c| c.is_ascii_digit() || *c == '.')
            .collect();
        let start = self.pos;
        self.pos += text.len();
        let (int_part, frac_part) = match text.split_once('.') {
            Some((i, f)) => (i, f),
            None => (text.as_str(), ""),
        };
        if frac_part.contains('.') || (int_part.is_empty() && frac_part.is_empty()) {
            return Err(Error::Parse {
                pos: start,
                msg: "malformed number".into(),
            });
        }
        let digits = format!("{int_part}{frac_part}");
        let mantissa: BigInt = digits.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: "malformed number".into(),
        })?;
        let scale = BigInt::from(10).pow(frac_part.len());
        Ok(EpsRat::from_rat(Rat::new(mantissa, scale)))
    }
}
