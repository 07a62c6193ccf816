//! Ordinal literal grammar:
//!
//! ```text
//! ordinal := term ("+" term)*
//! term    := nat | "w" ("^" "(" ordinal ")" | "^" simple)? ("*" nat)?
//! simple  := "w" | nat
//! ```
//!
//! `+` is the ordinary sum, so `1+w` parses to `w`.

use num_bigint::BigUint;
use num_traits::Zero;

use super::{Ordinal, OrdinalError};

/// Nesting limit applied by [`Ordinal::parse`].
pub const DEFAULT_MAX_HEIGHT: usize = 64;

pub(super) fn parse(text: &str, max_height: usize) -> Result<Ordinal, OrdinalError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        max_height,
    };
    let value = p.ordinal(0)?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    max_height: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> OrdinalError {
        OrdinalError::Syntax {
            pos: self.pos,
            message: message.to_string(),
        }
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

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ordinal(&mut self, depth: usize) -> Result<Ordinal, OrdinalError> {
        if depth > self.max_height {
            return Err(OrdinalError::TooDeep {
                limit: self.max_height,
            });
        }
        let mut acc = self.term(depth)?;
        while self.eat(b'+') {
            let t = self.term(depth)?;
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    fn term(&mut self, depth: usize) -> Result<Ordinal, OrdinalError> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                let exponent = if self.eat(b'^') {
                    match self.peek() {
                        Some(b'(') => {
                            self.pos += 1;
                            let e = self.ordinal(depth + 1)?;
                            if !self.eat(b')') {
                                return Err(self.error("expected ')'"));
                            }
                            e
                        }
                        Some(b'w') => {
                            self.pos += 1;
                            Ordinal::omega()
                        }
                        Some(c) if c.is_ascii_digit() => Ordinal::natural(self.nat()?),
                        _ => return Err(self.error("expected exponent")),
                    }
                } else {
                    Ordinal::one()
                };
                if exponent.height() + 1 > self.max_height {
                    return Err(OrdinalError::TooDeep {
                        limit: self.max_height,
                    });
                }
                let coefficient = if self.eat(b'*') {
                    let at = self.pos;
                    let c = self.nat()?;
                    if c.is_zero() {
                        return Err(OrdinalError::ZeroCoefficient { pos: at });
                    }
                    c
                } else {
                    BigUint::from(1u32)
                };
                Ok(Ordinal::monomial(exponent, coefficient))
            }
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::natural(self.nat()?)),
            Some(_) => Err(self.error("expected 'w' or a natural number")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn nat(&mut self) -> Result<BigUint, OrdinalError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse as BigUint"))
    }
}
