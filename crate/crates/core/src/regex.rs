//! Regular expressions over a named alphabet.
//!
//! Letters are single alphanumeric characters or brace sets such as
//! `{p,q}`. Juxtaposition is concatenation, `|` is union and `*`, `+` are
//! postfix. Expressions may match the empty word; automata built from them
//! never accept it.

use std::fmt;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Regex {
    Letter(String),
    /// At least two factors.
    Concat(Vec<Regex>),
    /// At least two alternatives.
    Union(Vec<Regex>),
    Star(Box<Regex>),
    Plus(Box<Regex>),
}

impl Regex {
    pub fn letter(name: impl Into<String>) -> Self {
        Regex::Letter(name.into())
    }

    pub fn star(self) -> Self {
        Regex::Star(Box::new(self))
    }

    pub fn plus(self) -> Self {
        Regex::Plus(Box::new(self))
    }

    fn precedence(&self) -> u8 {
        match self {
            Regex::Union(_) => 1,
            Regex::Concat(_) => 2,
            Regex::Star(_) | Regex::Plus(_) => 3,
            Regex::Letter(_) => 4,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let prec = self.precedence();
        if prec < min {
            write!(f, "(")?;
        }
        match self {
            Regex::Letter(name) => write!(f, "{name}")?,
            Regex::Concat(parts) => {
                for p in parts {
                    p.write_at(f, 3)?;
                }
            }
            Regex::Union(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, "|")?;
                    }
                    p.write_at(f, 2)?;
                }
            }
            Regex::Star(r) => {
                r.write_at(f, 4)?;
                write!(f, "*")?;
            }
            Regex::Plus(r) => {
                r.write_at(f, 4)?;
                write!(f, "+")?;
            }
        }
        if prec < min {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn union(&mut self) -> Result<Regex> {
        let mut parts = vec![self.concat()?];
        while self.peek() == Some('|') {
            self.pos += 1;
            parts.push(self.concat()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Regex::Union(parts)
        })
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut parts = Vec::new();
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            parts.push(self.postfix()?);
        }
        match parts.len() {
            0 => Err(Error::syntax(self.pos, "empty expression")),
            1 => Ok(parts.pop().unwrap()),
            _ => Ok(Regex::Concat(parts)),
        }
    }

    fn postfix(&mut self) -> Result<Regex> {
        let mut r = self.atom()?;
        loop {
            match self.peek() {
                Some('*') => r = r.star(),
                Some('+') => r = r.plus(),
                _ => return Ok(r),
            }
            self.pos += 1;
        }
    }

    fn atom(&mut self) -> Result<Regex> {
        let start = self.pos;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.union()?;
                if self.peek() != Some(')') {
                    return Err(Error::syntax(self.pos, "expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('{') => {
                let close = self.text[self.pos..]
                    .find('}')
                    .ok_or_else(|| Error::syntax(start, "unterminated `{`"))?;
                let name = &self.text[self.pos..=self.pos + close];
                self.pos += close + 1;
                let canonical = match crate::alphabet::parse_var_set(name) {
                    Ok(vars) => crate::alphabet::format_var_set(vars.iter().map(String::as_str)),
                    Err(_) => name.to_string(),
                };
                self.alphabet.letter(&canonical)?;
                Ok(Regex::Letter(canonical))
            }
            Some(c) if c.is_alphanumeric() || c == '_' => {
                self.pos += c.len_utf8();
                let name = c.to_string();
                self.alphabet.letter(&name)?;
                Ok(Regex::Letter(name))
            }
            Some(c) => Err(Error::syntax(self.pos, format!("unexpected `{c}`"))),
            None => Err(Error::syntax(self.pos, "unexpected end of input")),
        }
    }
}

/// Parses `text`, checking every letter against `alphabet`.
pub fn parse_regex(text: &str, alphabet: &Alphabet) -> Result<Regex> {
    let mut parser = Parser {
        text,
        pos: 0,
        alphabet,
    };
    let r = parser.union()?;
    if parser.peek().is_some() {
        return Err(Error::syntax(parser.pos, "unexpected trailing input"));
    }
    Ok(r)
}

/// Position automaton data: nullable, first, last and follow sets over the
/// letter occurrences of an expression.
pub(crate) struct Positions {
    pub letters: Vec<usize>,
    pub first: Vec<usize>,
    pub last: Vec<usize>,
    pub follow: Vec<Vec<usize>>,
}

struct Fragment {
    nullable: bool,
    first: Vec<usize>,
    last: Vec<usize>,
}

impl Positions {
    pub fn of(r: &Regex, alphabet: &Alphabet) -> Result<Self> {
        let mut pos = Positions {
            letters: Vec::new(),
            first: Vec::new(),
            last: Vec::new(),
            follow: Vec::new(),
        };
        let frag = pos.walk(r, alphabet)?;
        pos.first = frag.first;
        pos.last = frag.last;
        for f in &mut pos.follow {
            f.sort_unstable();
            f.dedup();
        }
        Ok(pos)
    }

    fn link(&mut self, from: &[usize], to: &[usize]) {
        for &p in from {
            self.follow[p].extend_from_slice(to);
        }
    }

    fn walk(&mut self, r: &Regex, alphabet: &Alphabet) -> Result<Fragment> {
        Ok(match r {
            Regex::Letter(name) => {
                let id = self.letters.len();
                self.letters.push(alphabet.letter(name)?);
                self.follow.push(Vec::new());
                Fragment {
                    nullable: false,
                    first: vec![id],
                    last: vec![id],
                }
            }
            Regex::Concat(parts) => {
                let mut acc = Fragment {
                    nullable: true,
                    first: Vec::new(),
                    last: Vec::new(),
                };
                for p in parts {
                    let f = self.walk(p, alphabet)?;
                    self.link(&acc.last, &f.first);
                    if acc.nullable {
                        acc.first.extend_from_slice(&f.first);
                    }
                    if f.nullable {
                        acc.last.extend_from_slice(&f.last);
                    } else {
                        acc.last = f.last;
                    }
                    acc.nullable &= f.nullable;
                }
                acc
            }
            Regex::Union(parts) => {
                let mut acc = Fragment {
                    nullable: false,
                    first: Vec::new(),
                    last: Vec::new(),
                };
                for p in parts {
                    let f = self.walk(p, alphabet)?;
                    acc.nullable |= f.nullable;
                    acc.first.extend(f.first);
                    acc.last.extend(f.last);
                }
                acc
            }
            Regex::Star(inner) | Regex::Plus(inner) => {
                let f = self.walk(inner, alphabet)?;
                self.link(&f.last, &f.first);
                Fragment {
                    nullable: f.nullable || matches!(r, Regex::Star(_)),
                    first: f.first,
                    last: f.last,
                }
            }
        })
    }
}
