//! Expression parser for rational functions in x and y.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := ("-" | "+") unary | power
//! power  := atom ("^" uint)?
//! atom   := number | "x" | "y" | "(" expr ")"
//! number := digits ("." digits)? (("e" | "E") ("+" | "-")? digits)?
//!         | "." digits ...
//! ```
//!
//! Whitespace is ignored between tokens. `-x^2` is `-(x^2)`, `2^3^2` is a
//! syntax error, and `1/2*x` is `(1/2)*x`. Exponents are capped at
//! [`MAX_EXPONENT`].

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::rational::parse_rational;

pub const MAX_EXPONENT: u32 = 64;

pub fn parse(text: &str) -> Result<RatFunc> {
    let chars: Vec<char> = text.chars().map(|c| if c == '−' { '-' } else { c }).collect();
    let mut p = Parser { s: chars, i: 0 };
    p.skip_ws();
    if p.i >= p.s.len() {
        return Err(Error::Syntax { pos: 0, msg: "empty expression".into() });
    }
    let v = p.expr()?;
    p.skip_ws();
    if p.i < p.s.len() {
        return Err(p.err(format!("unexpected `{}`", p.s[p.i])));
    }
    Ok(v)
}

struct Parser {
    s: Vec<char>,
    i: usize,
}

impl Parser {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { pos: self.i, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.i += 1;
                    acc = acc.add(&self.term()?);
                }
                '-' => {
                    self.i += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                '*' => {
                    self.i += 1;
                    acc = acc.mul(&self.unary()?);
                }
                '/' => {
                    self.i += 1;
                    let pos = self.i;
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(Error::DivisionByZero { pos });
                    }
                    acc = acc.div(&d)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some('-') => {
                self.i += 1;
                Ok(self.unary()?.neg())
            }
            Some('+') => {
                self.i += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.i += 1;
            self.skip_ws();
            let start = self.i;
            while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                self.i += 1;
            }
            if start == self.i {
                return Err(self.err("expected a nonnegative integer exponent"));
            }
            let digits: String = self.s[start..self.i].iter().collect();
            let e: u32 = match digits.parse() {
                Ok(e) if e <= MAX_EXPONENT => e,
                _ => return Err(Error::Syntax { pos: start, msg: format!("exponent exceeds {MAX_EXPONENT}") }),
            };
            if self.peek() == Some('^') {
                return Err(self.err("chained exponents need parentheses"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some('x') => {
                self.i += 1;
                Ok(RatFunc::from_poly(Poly::x()))
            }
            Some('y') => {
                self.i += 1;
                Ok(RatFunc::from_poly(Poly::y()))
            }
            Some('(') => {
                self.i += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.i += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => self.number(),
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<RatFunc> {
        let start = self.i;
        let digits = |p: &mut Parser| {
            let s = p.i;
            while p.i < p.s.len() && p.s[p.i].is_ascii_digit() {
                p.i += 1;
            }
            p.i - s
        };
        let mut n = digits(self);
        if self.s.get(self.i) == Some(&'.') {
            self.i += 1;
            n += digits(self);
        }
        if n == 0 {
            return Err(Error::Syntax { pos: start, msg: "malformed number".into() });
        }
        if matches!(self.s.get(self.i), Some('e') | Some('E')) {
            let save = self.i;
            self.i += 1;
            if matches!(self.s.get(self.i), Some('+') | Some('-')) {
                self.i += 1;
            }
            if digits(self) == 0 {
                self.i = save;
                return Err(Error::Syntax { pos: save, msg: "malformed exponent".into() });
            }
        }
        let tok: String = self.s[start..self.i].iter().collect();
        let v = parse_rational(&tok).map_err(|_| Error::Syntax { pos: start, msg: format!("bad number `{tok}`") })?;
        Ok(RatFunc::from_poly(Poly::constant(v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        assert_eq!(parse("-x^2").unwrap().to_string(), "-x^2");
        assert_eq!(parse("1/2*x").unwrap().to_string(), "1/2*x");
        assert_eq!(parse("2+3*4").unwrap().to_string(), "14");
        assert_eq!(parse("(1+x)^2").unwrap().to_string(), "x^2 + 2*x + 1");
        assert_eq!(parse("0.25e1 * x").unwrap().to_string(), "5/2*x");
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse("x +* y").unwrap_err(), Error::Syntax { pos: 3, msg: "unexpected `*`".into() });
        assert!(matches!(parse("1/(x-x)"), Err(Error::DivisionByZero { pos: 2 })));
        assert!(matches!(parse("x^"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("x^2^2"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("(x"), Err(Error::Syntax { .. })));
        assert!(matches!(parse(""), Err(Error::Syntax { .. })));
        assert!(matches!(parse("x^999"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("2x"), Err(Error::Syntax { pos: 1, .. })));
    }
}
