//! Text form of polynomials.
//!
//! ```text
//! poly  := term (('+' | '-') term)*
//! term  := coeff | coeff '*' mono | mono
//! mono  := var ('^' uint)? ('*' var ('^' uint)?)*
//! coeff := uint
//! ```
//!
//! Whitespace between tokens is ignored. Printing (via `Display`) emits the
//! terms in decreasing monomial order joined by `+`, with coefficients in
//! `[1, p)`, so `parse(print(f)) == f`.

use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<PolyRing>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(AlgebraError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    /// Unsigned integer reduced modulo `modulus` digit by digit, so literals
    /// of any length are accepted.
    fn uint_mod(&mut self, modulus: u64) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let mut acc = 0u64;
        while let Some(&b) = self.src.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            acc = (acc * 10 + (b - b'0') as u64) % modulus;
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected an unsigned integer");
        }
        if matches!(self.src.get(self.pos), Some(b'.')) {
            return self.err("non-integer literal");
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        let mut acc = 0u64;
        while let Some(&b) = self.src.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            acc = acc * 10 + (b - b'0') as u64;
            if acc > u32::MAX as u64 {
                self.pos = start;
                return self.err("exponent too large");
            }
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected an exponent");
        }
        Ok(acc as u32)
    }

    fn ident(&mut self) -> Result<(usize, usize)> {
        self.skip_ws();
        let start = self.pos;
        while let Some(&b) = self.src.get(self.pos) {
            let ok = if self.pos == start {
                b.is_ascii_alphabetic() || b == b'_'
            } else {
                b.is_ascii_alphanumeric() || b == b'_'
            };
            if !ok {
                break;
            }
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a variable");
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        match self.ring.var_index(name) {
            Some(i) => Ok((i, start)),
            None => Err(AlgebraError::UnknownVariable {
                name: name.to_string(),
                pos: start,
            }),
        }
    }

    fn mono(&mut self) -> Result<Monomial> {
        let mut m = Monomial::one(self.ring.nvars());
        loop {
            let (i, _) = self.ident()?;
            let e = if self.peek() == Some(b'^') {
                self.pos += 1;
                self.exponent()?
            } else {
                1
            };
            let slot = &mut m.exponents_mut()[i];
            *slot = match slot.checked_add(e) {
                Some(v) => v,
                None => return self.err("exponent too large"),
            };
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok(m);
            }
        }
    }

    fn term(&mut self) -> Result<(Monomial, u32)> {
        let p = self.ring.characteristic() as u64;
        match self.peek() {
            Some(b) if b.is_ascii_digit() => {
                let c = self.uint_mod(p)? as u32;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    Ok((self.mono()?, c))
                } else {
                    Ok((Monomial::one(self.ring.nvars()), c))
                }
            }
            Some(_) => Ok((self.mono()?, 1)),
            None => self.err("unexpected end of input"),
        }
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let field = self.ring.field();
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    terms.push(self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let (m, c) = self.term()?;
                    terms.push((m, field.neg(c)));
                }
                Some(_) => return self.err("expected `+`, `-` or end of input"),
            }
        }
        Ok(Polynomial::from_terms(self.ring, terms))
    }
}

/// Parses `text` as an element of `ring`.
pub fn parse_polynomial(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    parser.poly()
}

/// Parses every string in `texts`.
pub fn parse_all<S: AsRef<str>>(texts: &[S], ring: &Arc<PolyRing>) -> Result<Vec<Polynomial>> {
    texts.iter().map(|t| parse_polynomial(t.as_ref(), ring)).collect()
}
