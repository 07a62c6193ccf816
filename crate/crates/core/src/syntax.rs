//! Text syntax for terms.
//!
//! ```text
//! expr  := prod (("+" | "(+)") prod)*
//! prod  := atom ("." atom)*
//! atom  := "ord(" ordinal ")" | "chain(" nat ")" | "antichain(" nat ")"
//!        | "poset(" nat (";" (nat "<" nat ("," nat "<" nat)*)?)? ")"
//!        | "(" expr ")"
//! ```
//!
//! `A . B` is the lexicographic product with `B` as the index: pairs are
//! compared on their `B` coordinate first. `+` is the lexicographic sum and
//! `(+)` the disjoint union. `.` binds tighter; all operators associate to
//! the left.

use std::str::FromStr;

use thiserror::Error;

use crate::ordinal::{Ordinal, OrdinalError, DEFAULT_MAX_HEIGHT};
use crate::poset::{FinitePoset, PosetError};
use crate::term::WpoTerm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("in ordinal literal at byte {offset}: {source}")]
    Ordinal {
        offset: usize,
        #[source]
        source: OrdinalError,
    },
    #[error("invalid poset at byte {pos}: {source}")]
    Poset {
        pos: usize,
        #[source]
        source: PosetError,
    },
}

impl SyntaxError {
    /// Byte offset of the failure within the whole expression.
    pub fn position(&self) -> Option<usize> {
        match self {
            SyntaxError::Syntax { pos, .. } | SyntaxError::Poset { pos, .. } => Some(*pos),
            SyntaxError::Ordinal { offset, source } => Some(offset + source.position().unwrap_or(0)),
        }
    }

    /// Whether this failure is a resource limit rather than malformed input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            SyntaxError::Ordinal {
                source: OrdinalError::TooDeep { .. },
                ..
            }
        )
    }
}

pub fn parse_term(text: &str) -> Result<WpoTerm, SyntaxError> {
    let mut p = Parser { src: text, pos: 0 };
    let t = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(t)
}

impl FromStr for WpoTerm {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_term(s)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> SyntaxError {
        SyntaxError::Syntax {
            pos: self.pos,
            message: message.into(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), SyntaxError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{token}'")))
        }
    }

    fn expr(&mut self) -> Result<WpoTerm, SyntaxError> {
        let mut acc = self.prod()?;
        loop {
            if self.eat("(+)") {
                acc = WpoTerm::union(acc, self.prod()?);
            } else if self.eat("+") {
                acc = WpoTerm::sum(acc, self.prod()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn prod(&mut self) -> Result<WpoTerm, SyntaxError> {
        let mut acc = self.atom()?;
        while self.eat(".") {
            acc = WpoTerm::prod(acc, self.atom()?);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<WpoTerm, SyntaxError> {
        self.skip_ws();
        if self.eat("ord(") {
            let start = self.pos;
            let end = self.matching_paren()?;
            let text = &self.src[start..end];
            let a = Ordinal::parse_with_limit(text, DEFAULT_MAX_HEIGHT)
                .map_err(|source| SyntaxError::Ordinal { offset: start, source })?;
            self.pos = end + 1;
            return Ok(WpoTerm::Ord(a));
        }
        if self.eat("antichain(") {
            let n = self.nat()?;
            self.expect(")")?;
            return Ok(WpoTerm::antichain(n));
        }
        if self.eat("chain(") {
            let n = self.nat()?;
            self.expect(")")?;
            return Ok(WpoTerm::chain(n));
        }
        if self.eat("poset(") {
            return self.poset_body();
        }
        if self.eat("(") {
            let t = self.expr()?;
            self.expect(")")?;
            return Ok(t);
        }
        Err(self.error("expected ord(...), chain(n), antichain(n), poset(...) or '('"))
    }

    fn poset_body(&mut self) -> Result<WpoTerm, SyntaxError> {
        let at = self.pos;
        let n = self.nat()?;
        let mut edges = Vec::new();
        if self.eat(";") {
            self.skip_ws();
            if !self.rest().starts_with(')') {
                loop {
                    let a = self.nat()?;
                    self.expect("<")?;
                    let b = self.nat()?;
                    edges.push((a, b));
                    if !self.eat(",") {
                        break;
                    }
                }
            }
        }
        self.expect(")")?;
        FinitePoset::from_edges(n, &edges)
            .map(WpoTerm::Fin)
            .map_err(|source| SyntaxError::Poset { pos: at, source })
    }

    /// Index of the `)` closing an already consumed `(`.
    fn matching_paren(&self) -> Result<usize, SyntaxError> {
        let mut depth = 0usize;
        for (i, c) in self.rest().char_indices() {
            match c {
                '(' => depth += 1,
                ')' if depth == 0 => return Ok(self.pos + i),
                ')' => depth -= 1,
                _ => {}
            }
        }
        Err(SyntaxError::Syntax {
            pos: self.src.len(),
            message: "unclosed '('".into(),
        })
    }

    fn nat(&mut self) -> Result<usize, SyntaxError> {
        self.skip_ws();
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error("expected a natural number"));
        }
        let n = self.rest()[..digits]
            .parse()
            .map_err(|_| self.error("number too large"))?;
        self.pos += digits;
        Ok(n)
    }
}
