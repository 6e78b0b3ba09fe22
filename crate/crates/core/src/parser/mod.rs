//! Concrete syntax for formulas.
//!
//! ```text
//! formula := implies
//! implies := or ("->" implies)?
//! or      := and ("|" and)*
//! and     := until ("&" until)*
//! until   := unary (("U" | "R") interval unary)*
//! unary   := "!" unary | "F" interval unary | "G" interval unary | "L" nat unary | primary
//! primary := "true" | "false" | ident | "(" formula ")"
//! interval:= ("[" | "(") bound "," (bound | "inf") ("]" | ")")
//! bound   := nat ("." digits)? | nat "/" nat
//! ```
//!
//! `L2 p` and `L 2 p` are both accepted. `F`, `G`, `U`, `R`, `L`, `true`,
//! `false`, `inf` and `L<digits>` are reserved and cannot name atoms.
//! `#` starts a comment that runs to the end of the line.

mod lexer;
mod printer;

use std::fmt;

use thiserror::Error;

pub use printer::pretty_print;

use crate::formula::{Formula, Level};
use crate::interval::Interval;
use crate::time::{parse_rational, Rational};
use lexer::{tokenize, Token, TokenKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    /// Byte offset of the first character.
    pub start: usize,
    /// Byte offset one past the last character.
    pub end: usize,
    pub line: usize,
    pub column: usize,
}

impl SourceSpan {
    fn join(self, other: SourceSpan) -> SourceSpan {
        SourceSpan { end: other.end, ..self }
    }

    pub fn covers(&self, offset: usize) -> bool {
        self.start <= offset && offset < self.end.max(self.start + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub span: SourceSpan,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: expected {}, found {}",
            self.span.line,
            self.span.column,
            self.expected.join(" or "),
            self.found
        )
    }
}

const RESERVED: &[&str] = &["F", "G", "U", "R", "L", "true", "false", "inf"];

pub fn is_reserved(word: &str) -> bool {
    RESERVED.contains(&word) || stratum_level_word(word).is_some()
}

fn stratum_level_word(word: &str) -> Option<&str> {
    word.strip_prefix('L').filter(|rest| !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()))
}

pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut parser = Parser { tokens: tokenize(text), pos: 0 };
    let formula = parser.implies()?;
    match parser.peek().kind {
        TokenKind::Eof => Ok(formula),
        _ => Err(parser.error(&["`&`", "`|`", "`->`", "`U`", "`R`", "end of input"])),
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let tok = self.peek();
        ParseError {
            span: tok.span,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: tok.kind.describe(),
        }
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> Result<Token, ParseError> {
        if self.peek().kind == kind {
            Ok(self.bump())
        } else {
            Err(self.error(&[what]))
        }
    }

    fn is_keyword(&self, word: &str) -> bool {
        matches!(&self.peek().kind, TokenKind::Ident(s) if s == word)
    }

    fn implies(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.peek().kind == TokenKind::Arrow {
            self.bump();
            let rhs = self.implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while self.peek().kind == TokenKind::Pipe {
            self.bump();
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.until()?;
        while self.peek().kind == TokenKind::Amp {
            self.bump();
            lhs = Formula::and(lhs, self.until()?);
        }
        Ok(lhs)
    }

    fn until(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.is_keyword("U") {
                self.bump();
                let interval = self.interval()?;
                lhs = Formula::until(lhs, interval, self.unary()?);
            } else if self.is_keyword("R") {
                self.bump();
                let interval = self.interval()?;
                lhs = Formula::release(lhs, interval, self.unary()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().kind.clone() {
            TokenKind::Bang => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            TokenKind::Ident(word) if word == "F" => {
                self.bump();
                let interval = self.interval()?;
                Ok(Formula::eventually(interval, self.unary()?))
            }
            TokenKind::Ident(word) if word == "G" => {
                self.bump();
                let interval = self.interval()?;
                Ok(Formula::always(interval, self.unary()?))
            }
            TokenKind::Ident(word) if word == "L" => {
                self.bump();
                let tok = self.peek().clone();
                let level = match &tok.kind {
                    TokenKind::Number(n) => self.level(n, &tok)?,
                    _ => return Err(self.error(&["stratum level"])),
                };
                self.bump();
                Ok(Formula::stratum(level, self.unary()?))
            }
            TokenKind::Ident(word) if stratum_level_word(&word).is_some() => {
                let tok = self.bump();
                let level = self.level(stratum_level_word(&word).unwrap_or_default(), &tok)?;
                Ok(Formula::stratum(level, self.unary()?))
            }
            _ => self.primary(),
        }
    }

    fn level(&self, digits: &str, tok: &Token) -> Result<Level, ParseError> {
        let invalid = || ParseError {
            span: tok.span,
            expected: vec!["stratum level >= 1".into()],
            found: tok.kind.describe(),
        };
        if !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(invalid());
        }
        match digits.parse::<Level>() {
            Ok(k) if k >= 1 => Ok(k),
            _ => Err(invalid()),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        const EXPECTED: &[&str] =
            &["`!`", "`F`", "`G`", "`L`", "`(`", "`true`", "`false`", "identifier"];
        match self.peek().kind.clone() {
            TokenKind::Ident(word) if word == "true" => {
                self.bump();
                Ok(Formula::True)
            }
            TokenKind::Ident(word) if word == "false" => {
                self.bump();
                Ok(Formula::False)
            }
            TokenKind::Ident(word) if !is_reserved(&word) => {
                self.bump();
                Ok(Formula::Atom(word))
            }
            TokenKind::LParen => {
                self.bump();
                let inner = self.implies()?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(self.error(EXPECTED)),
        }
    }

    fn bound(&mut self) -> Result<Rational, ParseError> {
        let tok = self.peek().clone();
        match &tok.kind {
            TokenKind::Number(n) => {
                let value = parse_rational(n).map_err(|e| ParseError {
                    span: tok.span,
                    expected: vec![format!("time bound ({e})")],
                    found: tok.kind.describe(),
                })?;
                self.bump();
                Ok(value)
            }
            _ => Err(self.error(&["time bound"])),
        }
    }

    fn interval(&mut self) -> Result<Interval, ParseError> {
        let open = self.peek().clone();
        let lower_closed = match open.kind {
            TokenKind::LBracket => true,
            TokenKind::LParen => false,
            _ => return Err(self.error(&["`[`", "`(`"])),
        };
        self.bump();
        if self.is_keyword("inf") {
            return Err(self.error(&["finite lower bound"]));
        }
        let lower = self.bound()?;
        self.expect(TokenKind::Comma, "`,`")?;
        let upper = if self.is_keyword("inf") {
            self.bump();
            None
        } else {
            Some(self.bound()?)
        };
        let close = self.peek().clone();
        let upper_closed = match close.kind {
            TokenKind::RBracket if upper.is_some() => true,
            TokenKind::RBracket => return Err(self.error(&["`)` after `inf`"])),
            TokenKind::RParen => false,
            _ => return Err(self.error(&["`]`", "`)`"])),
        };
        self.bump();
        Interval::new(lower, upper, lower_closed, upper_closed).map_err(|e| ParseError {
            span: open.span.join(close.span),
            expected: vec![format!("non-empty interval ({e})")],
            found: "interval".into(),
        })
    }
}
