//! Recursive-descent parser for the formula text grammar.
//!
//! Loosest to tightest: `|`, `&`, the right-associative binary temporal
//! operators `U R W`, then the prefix operators `X F G !`.

use std::fmt;

use thiserror::Error;

use super::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {pos}: {message}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Next,
    Eventually,
    Always,
    Until,
    Release,
    WeakUntil,
    Not,
    And,
    Or,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(name) => return write!(f, "`{name}`"),
            Tok::True => "`true`",
            Tok::False => "`false`",
            Tok::Next => "`X`",
            Tok::Eventually => "`F`",
            Tok::Always => "`G`",
            Tok::Until => "`U`",
            Tok::Release => "`R`",
            Tok::WeakUntil => "`W`",
            Tok::Not => "`!`",
            Tok::And => "`&`",
            Tok::Or => "`|`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::End => "end of input",
        };
        f.write_str(s)
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            b'!' => Some(Tok::Not),
            b'&' => Some(Tok::And),
            b'|' => Some(Tok::Or),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((tok, i));
            i += 1;
            continue;
        }
        if c.is_ascii_alphanumeric() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let tok = match &text[start..i] {
                "true" => Tok::True,
                "false" => Tok::False,
                "X" => Tok::Next,
                "F" => Tok::Eventually,
                "G" => Tok::Always,
                "U" => Tok::Until,
                "R" => Tok::Release,
                "W" => Tok::WeakUntil,
                word => Tok::Ident(word.to_string()),
            };
            out.push((tok, start));
            continue;
        }
        let ch = text[i..].chars().next().unwrap_or('?');
        return Err(ParseError { pos: i, message: format!("unexpected character `{ch}`") });
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.at].0.clone();
        if tok != Tok::End {
            self.at += 1;
        }
        tok
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError { pos: self.pos(), message: format!("expected {expected}, found {}", self.peek()) }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Formula::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.temporal()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Formula::and(lhs, self.temporal()?);
        }
        Ok(lhs)
    }

    fn temporal(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        let build: fn(Formula, Formula) -> Formula = match self.peek() {
            Tok::Until => Formula::until,
            Tok::Release => Formula::release,
            Tok::WeakUntil => Formula::weak_until,
            _ => return Ok(lhs),
        };
        self.bump();
        let rhs = self.temporal()?;
        Ok(build(lhs, rhs))
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let build: fn(Formula) -> Formula = match self.peek() {
            Tok::Next => Formula::next,
            Tok::Eventually => Formula::eventually,
            Tok::Always => Formula::always,
            Tok::Not => Formula::not,
            _ => return self.primary(),
        };
        self.bump();
        Ok(build(self.unary()?))
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::Atom(name))
            }
            Tok::True => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::False => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.disjunction()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error("a formula")),
        }
    }
}

/// Parses formula text, expanding `F`, `G` and `W`.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut parser = Parser { toks: lex(text)?, at: 0 };
    let f = parser.disjunction()?;
    if *parser.peek() != Tok::End {
        return Err(parser.error("an operator or end of input"));
    }
    Ok(f)
}
