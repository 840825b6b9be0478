//! Recursive-descent parser for the ASCII formula grammar.
//!
//! ```text
//! iff     := imp ('<->' imp)*                      loosest, left-assoc
//! imp     := or ('->' imp)?                        right-assoc
//! or      := and ('\/' and)*
//! and     := plus ('/\' plus)*
//! plus    := star ('+' star)*
//! star    := unary ('*' unary)*
//! unary   := '~' unary | '[]' unary | '<>' unary | NAT '.' unary | postfix
//! postfix := atom ('^' NAT)*
//! atom    := VAR | '0' | '1' | '@' LABEL | '(' iff ')'
//! ```
//!
//! Variables are `[a-z][a-zA-Z0-9_]*`; the `$`-prefixed names are reserved
//! (the companion translation emits `$r0`, `$r1`, …) but parse so that
//! printed companions round-trip.

use super::{Formula, FormulaError};

pub fn parse(text: &str, allow_constants: bool) -> Result<Formula, FormulaError> {
    let mut p = Parser {
        chars: text.as_bytes(),
        pos: 0,
        allow_constants,
        text,
    };
    p.skip_ws();
    let f = p.iff()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    chars: &'a [u8],
    text: &'a str,
    pos: usize,
    allow_constants: bool,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> FormulaError {
        FormulaError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    /// `->` must not consume the arrow inside `<->`; the `<->` check comes
    /// first in `iff`, so plain prefix matching suffices here.
    fn iff(&mut self) -> Result<Formula, FormulaError> {
        let mut lhs = self.imp()?;
        loop {
            self.skip_ws();
            if self.eat("<->") {
                let rhs = self.imp()?;
                lhs = lhs.iff(rhs);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn imp(&mut self) -> Result<Formula, FormulaError> {
        let lhs = self.or()?;
        self.skip_ws();
        if self.text[self.pos..].starts_with("->") {
            self.pos += 2;
            let rhs = self.imp()?;
            Ok(lhs.implies(rhs))
        } else {
            Ok(lhs)
        }
    }

    fn or(&mut self) -> Result<Formula, FormulaError> {
        let mut lhs = self.and()?;
        while self.eat("\\/") {
            lhs = lhs.or(self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, FormulaError> {
        let mut lhs = self.plus()?;
        while self.eat("/\\") {
            lhs = lhs.and(self.plus()?);
        }
        Ok(lhs)
    }

    fn plus(&mut self) -> Result<Formula, FormulaError> {
        let mut lhs = self.star()?;
        while self.eat("+") {
            lhs = lhs.oplus(self.star()?);
        }
        Ok(lhs)
    }

    fn star(&mut self) -> Result<Formula, FormulaError> {
        let mut lhs = self.unary()?;
        while self.eat("*") {
            lhs = lhs.fus(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, FormulaError> {
        self.skip_ws();
        if self.eat("~") {
            return Ok(self.unary()?.not());
        }
        if self.eat("[]") {
            return Ok(self.unary()?.boxed());
        }
        if self.eat("<>") {
            return Ok(self.unary()?.diamond());
        }
        // `m.φ` sugar: a number directly followed by a dot.
        if let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                let save = self.pos;
                let m = self.nat();
                if self.peek() == Some(b'.') {
                    self.pos += 1;
                    let body = self.unary()?;
                    return Ok(body.times(m));
                }
                self.pos = save;
            }
        }
        self.postfix()
    }

    fn nat(&mut self) -> usize {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.text[start..self.pos].parse().unwrap_or(0)
    }

    fn postfix(&mut self) -> Result<Formula, FormulaError> {
        let mut f = self.atom()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'^') {
                self.pos += 1;
                self.skip_ws();
                if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    return Err(self.err("expected an exponent after `^`"));
                }
                let m = self.nat();
                f = f.power(m);
            } else {
                return Ok(f);
            }
        }
    }

    fn atom(&mut self) -> Result<Formula, FormulaError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let f = self.iff()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(f)
            }
            Some(b'0') => {
                self.pos += 1;
                Ok(Formula::Zero)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Formula::One)
            }
            Some(b'@') => {
                self.pos += 1;
                let label = self.label()?;
                if !self.allow_constants {
                    return Err(FormulaError::UnknownConstant(label));
                }
                Ok(Formula::Const(label))
            }
            Some(b'$') => {
                // reserved variables like $r0
                let start = self.pos;
                self.pos += 1;
                if !self.peek().is_some_and(|c| c.is_ascii_lowercase()) {
                    return Err(self.err("expected a name after `$`"));
                }
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
                {
                    self.pos += 1;
                }
                Ok(Formula::Var(self.text[start..self.pos].to_string()))
            }
            Some(c) if c.is_ascii_lowercase() => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
                {
                    self.pos += 1;
                }
                Ok(Formula::Var(self.text[start..self.pos].to_string()))
            }
            _ => Err(self.err("expected a formula")),
        }
    }

    /// Constant label: balanced `(...)`/`[...]` or a word over
    /// alphanumerics and `. ' / _`.
    fn label(&mut self) -> Result<String, FormulaError> {
        match self.peek() {
            Some(open @ (b'(' | b'[')) => {
                let close = if open == b'(' { b')' } else { b']' };
                let start = self.pos;
                let mut depth = 0usize;
                while let Some(c) = self.peek() {
                    if c == open {
                        depth += 1;
                    } else if c == close {
                        depth -= 1;
                        if depth == 0 {
                            self.pos += 1;
                            return Ok(self.text[start..self.pos].to_string());
                        }
                    }
                    self.pos += 1;
                }
                Err(self.err("unterminated constant label"))
            }
            Some(c) if c.is_ascii_alphanumeric() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| {
                    c.is_ascii_alphanumeric() || matches!(c, b'.' | b'\'' | b'/' | b'_')
                }) {
                    self.pos += 1;
                }
                Ok(self.text[start..self.pos].to_string())
            }
            _ => Err(self.err("expected a constant label after `@`")),
        }
    }
}
