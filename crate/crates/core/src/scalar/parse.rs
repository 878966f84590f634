//! Parser and printer for exact scalar strings.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr   := [+|-] term ((+|-) term)*
//! term   := factor ((*|/) factor)*
//! factor := atom [^ [-] integer]
//! atom   := integer | u | ( expr )
//! ```
//!
//! All values are rational functions in `u`; plain rationals like `-3/4`
//! are the constant fragment of the same grammar.

use super::poly::RatPoly;
use super::ratfun::RatFun;
use super::ScalarError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn parse_ratfun(input: &str) -> Result<RatFun, ScalarError> {
    let mut p = Parser {
        chars: input.chars().collect(),
        pos: 0,
        input,
    };
    p.skip_ws();
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    input: &'a str,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ScalarError {
        ScalarError::Parse {
            input: self.input.to_string(),
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFun, ScalarError> {
        self.skip_ws();
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            self.skip_ws();
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFun, ScalarError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.eat('*') {
                acc = acc.mul(&self.factor()?);
            } else if self.eat('/') {
                let d = self.factor()?;
                let inv = d.inv().ok_or_else(|| self.err("division by zero"))?;
                acc = acc.mul(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<RatFun, ScalarError> {
        let base = self.atom()?;
        self.skip_ws();
        if self.eat('^') {
            self.skip_ws();
            let neg = self.eat('-');
            let k = self.integer()?;
            let k: i64 = k
                .try_into()
                .map_err(|_| self.err("exponent out of range"))?;
            let k = if neg { -k } else { k };
            base.pow(k)
                .ok_or_else(|| self.err("zero raised to a negative power"))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<RatFun, ScalarError> {
        self.skip_ws();
        match self.peek() {
            Some('u') => {
                self.pos += 1;
                Ok(RatFun::u())
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RatFun::constant(BigRational::from_integer(n)))
            }
            _ => Err(self.err("expected a number, 'u', or '('")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ScalarError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| self.err("invalid integer"))
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn format_poly(p: &RatPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let lead = out.is_empty();
        let mag = c.abs();
        if lead {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let coeff = format_rational(&mag);
        match k {
            0 => out.push_str(&coeff),
            _ => {
                if !mag.is_one() {
                    out.push_str(&coeff);
                    out.push('*');
                }
                out.push('u');
                if k > 1 {
                    out.push_str(&format!("^{k}"));
                }
            }
        }
    }
    out
}

pub fn format_ratfun(f: &RatFun) -> String {
    let num = format_poly(f.num());
    if f.den().as_constant().map(|c| c.is_one()) == Some(true) {
        return num;
    }
    let den = format_poly(f.den());
    let num_wrapped = if f.num().coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
        format!("({num})")
    } else {
        num
    };
    format!("{num_wrapped}/({den})")
}
