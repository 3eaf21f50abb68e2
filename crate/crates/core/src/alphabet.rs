//! Finite alphabets and words.
//!
//! A letter is identified by its index in the alphabet. Letters built from
//! propositional variables are named by their brace-set rendering, e.g.
//! `{p,q}` or `{}`, with the variables sorted and comma-joined.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// A word is a sequence of letter indices.
pub type Word = Vec<usize>;

/// Largest variable universe for which `2^vars` alphabets are built.
pub const MAX_VARIABLES: usize = 16;

#[derive(Clone, Debug)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::InvalidAlphabet("empty letter name".into()));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate letter `{name}`")));
            }
        }
        Ok(Alphabet { names, index })
    }

    /// The alphabet `2^vars`. Letter `i` contains the variables whose bit
    /// is set in `i`, with bit `j` standing for the `j`-th variable in
    /// sorted order.
    pub fn powerset<S: AsRef<str>>(vars: &[S]) -> Result<Self> {
        let vars = sorted_vars(vars);
        if vars.len() > MAX_VARIABLES {
            return Err(Error::InvalidAlphabet(format!(
                "{} variables exceed the limit of {MAX_VARIABLES}",
                vars.len()
            )));
        }
        let names = (0..1usize << vars.len()).map(|mask| {
            let set = vars
                .iter()
                .enumerate()
                .filter(|(j, _)| mask >> j & 1 == 1)
                .map(|(_, v)| v.as_str());
            format_var_set(set)
        });
        Alphabet::new(names)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, letter: usize) -> &str {
        &self.names[letter]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn letter(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    /// The variable set named by `letter`, if its name is a brace set.
    pub fn letter_vars(&self, letter: usize) -> Result<BTreeSet<String>> {
        parse_var_set(self.name(letter))
    }

    /// Renders a word. Single-character letter names are concatenated;
    /// otherwise letters are separated by `;`.
    pub fn format_word(&self, word: &[usize]) -> String {
        if self.names.iter().all(|n| n.chars().count() == 1) {
            word.iter().map(|&l| self.name(l)).collect()
        } else {
            word.iter()
                .map(|&l| self.name(l))
                .collect::<Vec<_>>()
                .join(";")
        }
    }

    /// Parses a word in either of the forms produced by [`format_word`].
    ///
    /// [`format_word`]: Alphabet::format_word
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Vec::new());
        }
        if text.contains(';') || self.index_of(text).is_some() {
            return text.split(';').map(|t| self.letter(t.trim())).collect();
        }
        text.chars()
            .map(|c| self.letter(&c.to_string()))
            .collect()
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for Alphabet {}

impl std::hash::Hash for Alphabet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.names.hash(state);
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(","))
    }
}

fn sorted_vars<S: AsRef<str>>(vars: &[S]) -> Vec<String> {
    let set: BTreeSet<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
    set.into_iter().collect()
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// `{p,q}` style rendering of a variable set.
pub fn format_var_set<'a, I>(vars: I) -> String
where
    I: IntoIterator<Item = &'a str>,
{
    let set: BTreeSet<&str> = vars.into_iter().collect();
    let mut out = String::from("{");
    for (i, v) in set.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(v);
    }
    out.push('}');
    out
}

/// Parses `{p,q}`; whitespace around names is allowed.
pub fn parse_var_set(text: &str) -> Result<BTreeSet<String>> {
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| Error::NotVariableSet(text.to_string()))?;
    if inner.trim().is_empty() {
        return Ok(BTreeSet::new());
    }
    inner
        .split(',')
        .map(|v| {
            let v = v.trim();
            if is_identifier(v) {
                Ok(v.to_string())
            } else {
                Err(Error::NotVariableSet(text.to_string()))
            }
        })
        .collect()
}
