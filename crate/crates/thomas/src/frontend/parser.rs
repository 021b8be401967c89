//! Recursive-descent parser for polynomial expressions.

use crate::janet::{DiffRanking, Jet};
use crate::polyring::{Poly, RankedVar, Ranking, Rational, Variable};
use num_bigint::BigInt;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Resolves identifiers, optionally with a bracketed index, to variables.
pub trait Symbols {
    type V: RankedVar;
    fn resolve(&self, name: &str, index: Option<&[u32]>) -> Result<Self::V, String>;
}

impl Symbols for Ranking {
    type V = Variable;

    fn resolve(&self, name: &str, index: Option<&[u32]>) -> Result<Variable, String> {
        if index.is_some() {
            return Err(format!("{name} is an algebraic variable and takes no index"));
        }
        self.var(name).ok_or_else(|| format!("unknown identifier {name}"))
    }
}

impl Symbols for DiffRanking {
    type V = Jet;

    fn resolve(&self, name: &str, index: Option<&[u32]>) -> Result<Jet, String> {
        let u = self.indeterminate(name).ok_or_else(|| format!("unknown identifier {name}"))?;
        match index {
            None => Ok(self.base(u)),
            Some(i) if i.len() == self.n() => Ok(self.jet(u, i)),
            Some(i) => Err(format!("jet {name} needs {} indices, got {}", self.n(), i.len())),
        }
    }
}

struct Parser<'a, S: Symbols> {
    src: &'a [u8],
    pos: usize,
    syms: &'a S,
}

pub fn parse_expression<S: Symbols>(src: &str, syms: &S) -> Result<Poly<S::V>, ParseError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, syms };
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Parses `lhs` or `lhs <sep> rhs`, returning `lhs - rhs` in the second case.
pub fn parse_sides<S: Symbols>(src: &str, syms: &S, sep: &str) -> Result<Poly<S::V>, ParseError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, syms };
    let lhs = p.expr()?;
    p.skip_ws();
    if p.src[p.pos..].starts_with(sep.as_bytes()) {
        p.pos += sep.len();
        let rhs = p.expr()?;
        p.finish()?;
        return Ok(lhs - rhs);
    }
    p.finish()?;
    Ok(lhs)
}

impl<S: Symbols> Parser<'_, S> {
    fn error(&self, message: String) -> ParseError {
        self.error_at(self.pos, message)
    }

    fn error_at(&self, pos: usize, message: String) -> ParseError {
        let before = &self.src[..pos.min(self.src.len())];
        let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
        let start = before.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
        ParseError { line, column: pos - start + 1, message }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        match self.src.get(self.pos) {
            Some(_) => Err(self.error(format!("unexpected '{}'", self.current()))),
            None => Ok(()),
        }
    }

    fn current(&self) -> char {
        std::str::from_utf8(&self.src[self.pos..]).ok().and_then(|s| s.chars().next()).unwrap_or('?')
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

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Poly<S::V>, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly<S::V>, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.unary()?;
                match d.constant_value() {
                    Some(c) if !num_traits::Zero::is_zero(&c) => acc = acc.scale(&num_traits::Inv::inv(c)),
                    Some(_) => return Err(self.error_at(at, "division by zero".into())),
                    None => return Err(self.error_at(at, "division by a non-constant".into())),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Poly<S::V>, ParseError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly<S::V>, ParseError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        let paren = self.eat(b'(');
        let negative = self.eat(b'-');
        let e = self.integer()?;
        if paren {
            self.expect(b')')?;
        }
        if negative && e != BigInt::from(0) {
            return Err(self.error_at(at, "negative exponent".into()));
        }
        let e: u32 = e.try_into().map_err(|_| self.error_at(at, "exponent too large".into()))?;
        Ok(base.pow(e))
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer".into()));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn atom(&mut self) -> Result<Poly<S::V>, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Poly::constant(Rational::from_integer(self.integer()?))),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
                let index = if self.peek() == Some(b'[') {
                    self.pos += 1;
                    let mut idx = Vec::new();
                    loop {
                        let i = self.integer()?;
                        idx.push(i.try_into().map_err(|_| self.error("index too large".into()))?);
                        if !self.eat(b',') {
                            break;
                        }
                    }
                    self.expect(b']')?;
                    Some(idx)
                } else {
                    None
                };
                let v = self.syms.resolve(&name, index.as_deref()).map_err(|m| self.error_at(start, m))?;
                Ok(Poly::var(v))
            }
            Some(_) => Err(self.error(format!("unexpected '{}'", self.current()))),
            None => Err(self.error("unexpected end of input".into())),
        }
    }
}
