//! Polynomial string syntax.
//!
//! ```text
//! expr    := ['+' | '-'] term (('+' | '-') term)*
//! term    := factor (['*' | '/'] factor)*      -- '*' may be omitted; '/' only by constants
//! factor  := atom ['^' integer]
//! atom    := integer | identifier | '(' expr ')'
//! ```
//!
//! Identifiers must be ring variables. Whitespace (including newlines) is
//! ignored. Printing a polynomial and parsing it back gives the same value;
//! printing is canonical (terms in decreasing ring order, `*` between factors,
//! coefficient `1` omitted).

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{AlgebraError, ParseError};
use crate::field::{Field, Q};
use crate::poly::Poly;
use crate::ring::Ring;

pub fn parse_poly(ring: &Arc<Ring>, src: &str) -> Result<Poly<Q>, ParseError> {
    let mut p = Parser { ring, src, chars: src.char_indices().collect(), pos: 0 };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.error("empty polynomial"));
    }
    let f = p.expr()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(&format!("unexpected character `{c}`")));
    }
    Ok(f)
}

/// Parse into any coefficient field (via the rationals).
pub fn parse_poly_in<K: Field>(ring: &Arc<Ring>, src: &str) -> Result<Poly<K>, AlgebraError> {
    let f = parse_poly(ring, src)?;
    f.try_map_coeffs(ring, |c| K::from_rational(&c.0))
}

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> ParseError {
        let offset = self.chars.get(self.pos).map(|&(o, _)| o).unwrap_or(self.src.len());
        let before = &self.src[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map(|s| s.chars().count()).unwrap_or(0) + 1;
        ParseError { message: message.to_string(), line, column }
    }

    fn expr(&mut self) -> Result<Poly<Q>, ParseError> {
        self.skip_ws();
        let mut negate = false;
        match self.peek() {
            Some('-') => {
                negate = true;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some('-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly<Q>, ParseError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some('/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let f = self.factor()?;
                    if !f.is_constant() || f.is_zero() {
                        return Err(self.error("division only by nonzero constants"));
                    }
                    acc = acc.scale(&f.constant_term().inv());
                }
                Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == '(' => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly<Q>, ParseError> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.error("expected a nonnegative integer exponent"));
            }
            let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
            let e: u32 = digits.parse().map_err(|_| self.error("exponent too large"))?;
            if e > 1000 {
                return Err(self.error("exponent too large"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly<Q>, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
                let v: BigInt = digits.parse().expect("digits");
                Ok(Poly::constant(self.ring, Q(BigRational::from_integer(v))))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
                match self.ring.index_of(&name) {
                    Ok(i) => Ok(Poly::var(self.ring, i)),
                    Err(_) => {
                        self.pos = start;
                        Err(self.error(&format!("unknown variable `{name}`")))
                    }
                }
            }
            Some(c) => Err(self.error(&format!("unexpected character `{c}`"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialOrder;

    fn ring() -> Arc<Ring> {
        Ring::new(&["x", "y", "z", "x1"], MonomialOrder::DegRevLex).unwrap()
    }

    #[test]
    fn parses_spec_style_input() {
        let r = ring();
        let f = parse_poly(&r, "x^2 + y^3 - 2*x*y").unwrap();
        assert_eq!(f.to_string(), "y^3 + x^2 - 2*x*y");
        let g = parse_poly(&r, "2x y - (x - y)^2 + 3/4 z").unwrap();
        assert_eq!(g, parse_poly(&r, "-x^2 + 4*x*y - y^2 + 3/4*z").unwrap());
        assert_eq!(parse_poly(&r, "x1*x").unwrap().to_string(), "x*x1");
    }

    #[test]
    fn reports_position() {
        let r = ring();
        let e = parse_poly(&r, "x +\n  w").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(e.message.contains("unknown variable"));
        let e = parse_poly(&r, "x^").unwrap_err();
        assert_eq!(e.column, 3);
        assert!(parse_poly(&r, "").is_err());
        assert!(parse_poly(&r, "x/y").is_err());
    }

    #[test]
    fn round_trip_on_canonical_form() {
        let r = ring();
        for s in ["-27*x^4 - 4*x^2*y^3", "x*y - 1/3", "0", "5", "-x1^7 + z"] {
            let f = parse_poly(&r, s).unwrap();
            let printed = f.to_string();
            assert_eq!(parse_poly(&r, &printed).unwrap(), f);
            assert_eq!(parse_poly(&r, &printed).unwrap().to_string(), printed);
        }
    }
}
