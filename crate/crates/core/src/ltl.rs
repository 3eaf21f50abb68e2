//! LTL formulas over finite timelines: syntax tree, parser and printer.
//!
//! Concrete syntax, tightest binding first:
//!
//! | form                          | meaning                              |
//! |-------------------------------|--------------------------------------|
//! | `!a`, `X a`, `F a`, `G a`     | not, next, strict eventually, always |
//! | `a U b`                       | strict until (right-associative)     |
//! | `a & b`                       | and                                  |
//! | `a \| b`                      | or                                   |
//! | `a -> b`                      | implies (right-associative)          |
//! | `a <-> b`                     | iff                                  |
//!
//! `a U b` holds at `n` when `a` holds at some `m > n` and `b` holds at
//! every point strictly between `n` and `m`. Note the argument order: the
//! left operand is the eventuality, the right operand the interim condition.
//! This is the reverse of the common reading of until.
//!
//! `G a` is reflexive: it abbreviates `a & !F !a`. `false` is read as
//! `!true` and has no node of its own.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LtlFormula {
    True,
    Var(String),
    Not(Box<LtlFormula>),
    And(Box<LtlFormula>, Box<LtlFormula>),
    Or(Box<LtlFormula>, Box<LtlFormula>),
    Implies(Box<LtlFormula>, Box<LtlFormula>),
    Iff(Box<LtlFormula>, Box<LtlFormula>),
    Next(Box<LtlFormula>),
    /// Strict eventually: some strictly later position.
    Eventually(Box<LtlFormula>),
    /// `Until(event, interim)`; see the module docs for the argument order.
    Until(Box<LtlFormula>, Box<LtlFormula>),
    /// Reflexive always.
    Globally(Box<LtlFormula>),
}

use LtlFormula::*;

impl LtlFormula {
    pub fn var(name: impl Into<String>) -> Self {
        Var(name.into())
    }

    pub fn falsum() -> Self {
        Not(Box::new(True))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Not(Box::new(self))
    }

    pub fn and(self, other: Self) -> Self {
        And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Self) -> Self {
        Or(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: Self) -> Self {
        Implies(Box::new(self), Box::new(other))
    }

    pub fn iff(self, other: Self) -> Self {
        Iff(Box::new(self), Box::new(other))
    }

    pub fn next(self) -> Self {
        Next(Box::new(self))
    }

    pub fn eventually(self) -> Self {
        Eventually(Box::new(self))
    }

    pub fn until(self, interim: Self) -> Self {
        Until(Box::new(self), Box::new(interim))
    }

    pub fn globally(self) -> Self {
        Globally(Box::new(self))
    }

    /// Rewrites `Globally(a)` to `a & !F !a`, recursively.
    pub fn expand_globally(&self) -> LtlFormula {
        match self {
            True | Var(_) => self.clone(),
            Not(a) => a.expand_globally().not(),
            And(a, b) => a.expand_globally().and(b.expand_globally()),
            Or(a, b) => a.expand_globally().or(b.expand_globally()),
            Implies(a, b) => a.expand_globally().implies(b.expand_globally()),
            Iff(a, b) => a.expand_globally().iff(b.expand_globally()),
            Next(a) => a.expand_globally().next(),
            Eventually(a) => a.expand_globally().eventually(),
            Until(a, b) => a.expand_globally().until(b.expand_globally()),
            Globally(a) => {
                let a = a.expand_globally();
                a.clone().and(a.not().eventually().not())
            }
        }
    }

    /// The variables occurring in the formula.
    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            True => {}
            Var(v) => {
                out.insert(v.clone());
            }
            Not(a) | Next(a) | Eventually(a) | Globally(a) => a.collect_vars(out),
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) | Until(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        match self {
            True | Var(_) => 1,
            Not(a) | Next(a) | Eventually(a) | Globally(a) => 1 + a.size(),
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) | Until(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    /// Renames variables through `f`.
    pub fn rename(&self, f: &impl Fn(&str) -> String) -> LtlFormula {
        match self {
            True => True,
            Var(v) => Var(f(v)),
            Not(a) => a.rename(f).not(),
            And(a, b) => a.rename(f).and(b.rename(f)),
            Or(a, b) => a.rename(f).or(b.rename(f)),
            Implies(a, b) => a.rename(f).implies(b.rename(f)),
            Iff(a, b) => a.rename(f).iff(b.rename(f)),
            Next(a) => a.rename(f).next(),
            Eventually(a) => a.rename(f).eventually(),
            Until(a, b) => a.rename(f).until(b.rename(f)),
            Globally(a) => a.rename(f).globally(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Iff(..) => 1,
            Implies(..) => 2,
            Or(..) => 3,
            And(..) => 4,
            Until(..) => 5,
            Not(_) | Next(_) | Eventually(_) | Globally(_) => 6,
            True | Var(_) => 7,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let prec = self.precedence();
        if prec < min {
            write!(f, "(")?;
        }
        match self {
            True => write!(f, "true")?,
            Var(v) => write!(f, "{v}")?,
            Not(a) => {
                write!(f, "!")?;
                a.write_at(f, 6)?;
            }
            Next(a) => {
                write!(f, "X ")?;
                a.write_at(f, 6)?;
            }
            Eventually(a) => {
                write!(f, "F ")?;
                a.write_at(f, 6)?;
            }
            Globally(a) => {
                write!(f, "G ")?;
                a.write_at(f, 6)?;
            }
            // left-associative
            Iff(a, b) | Or(a, b) | And(a, b) => {
                let op = match self {
                    Iff(..) => "<->",
                    Or(..) => "|",
                    _ => "&",
                };
                a.write_at(f, prec)?;
                write!(f, " {op} ")?;
                b.write_at(f, prec + 1)?;
            }
            // right-associative
            Implies(a, b) | Until(a, b) => {
                let op = if matches!(self, Implies(..)) { "->" } else { "U" };
                a.write_at(f, prec + 1)?;
                write!(f, " {op} ")?;
                b.write_at(f, prec)?;
            }
        }
        if prec < min {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for LtlFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

impl std::str::FromStr for LtlFormula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_ltl(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    True,
    False,
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    Iff,
    Next,
    Eventually,
    Globally,
    Until,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'!' => Token::Not,
            b'&' => Token::And,
            b'|' => Token::Or,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Token::Implies
            }
            b'<' if bytes[i..].starts_with(b"<->") => {
                i += 2;
                Token::Iff
            }
            c if c.is_ascii_alphabetic() => {
                while i + 1 < bytes.len()
                    && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_')
                {
                    i += 1;
                }
                match &text[start..=i] {
                    "true" => Token::True,
                    "false" => Token::False,
                    "X" => Token::Next,
                    "F" => Token::Eventually,
                    "G" => Token::Globally,
                    "U" => Token::Until,
                    id => Token::Ident(id.to_string()),
                }
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(Error::syntax(start, format!("unknown token `{ch}`")));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<LtlFormula> {
        let mut lhs = self.implies()?;
        while self.eat(&Token::Iff) {
            lhs = lhs.iff(self.implies()?);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<LtlFormula> {
        let lhs = self.or()?;
        if self.eat(&Token::Implies) {
            return Ok(lhs.implies(self.implies()?));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<LtlFormula> {
        let mut lhs = self.and()?;
        while self.eat(&Token::Or) {
            lhs = lhs.or(self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<LtlFormula> {
        let mut lhs = self.until()?;
        while self.eat(&Token::And) {
            lhs = lhs.and(self.until()?);
        }
        Ok(lhs)
    }

    fn until(&mut self) -> Result<LtlFormula> {
        let lhs = self.unary()?;
        if self.eat(&Token::Until) {
            return Ok(lhs.until(self.until()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<LtlFormula> {
        let at = self.offset();
        let Some(tok) = self.peek().cloned() else {
            return Err(Error::syntax(at, "unexpected end of input"));
        };
        self.pos += 1;
        Ok(match tok {
            Token::Not => self.unary()?.not(),
            Token::Next => self.unary()?.next(),
            Token::Eventually => self.unary()?.eventually(),
            Token::Globally => self.unary()?.globally(),
            Token::True => True,
            Token::False => LtlFormula::falsum(),
            Token::Ident(id) => Var(id),
            Token::LParen => {
                let inner = self.iff()?;
                if !self.eat(&Token::RParen) {
                    return Err(Error::syntax(self.offset(), "expected `)`"));
                }
                inner
            }
            other => {
                return Err(Error::syntax(at, format!("unexpected {other:?}")));
            }
        })
    }
}

/// Parses a formula in the concrete syntax described in the module docs.
pub fn parse_ltl(text: &str) -> Result<LtlFormula> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        end: text.len(),
    };
    let formula = parser.iff()?;
    if parser.pos < parser.tokens.len() {
        return Err(Error::syntax(parser.offset(), "unexpected trailing input"));
    }
    Ok(formula)
}
