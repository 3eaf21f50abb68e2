//! Nondeterministic and deterministic finite automata.
//!
//! All languages are sets of nonempty words: a run must read at least one
//! letter, and an accepting flag on an initial state only matters when that
//! state is re-entered.

mod dfa;

pub use dfa::{Dfa, ProductMode};

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::alphabet::{Alphabet, Word};
use crate::error::{Error, Result};
use crate::regex::{Positions, Regex};

/// Default resource guard for subset and product constructions.
pub const DEFAULT_MAX_STATES: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    initial: BTreeSet<usize>,
    accepting: BTreeSet<usize>,
    /// `delta[state][letter]`, sorted and deduplicated.
    delta: Vec<Vec<Vec<usize>>>,
}

impl Nfa {
    pub fn new(
        alphabet: Alphabet,
        num_states: usize,
        initial: impl IntoIterator<Item = usize>,
        accepting: impl IntoIterator<Item = usize>,
        transitions: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self> {
        let k = alphabet.len();
        let check = |s: usize| {
            if s < num_states {
                Ok(s)
            } else {
                Err(Error::Malformed(format!("state {s} out of range")))
            }
        };
        let initial = initial.into_iter().map(check).collect::<Result<_>>()?;
        let accepting = accepting.into_iter().map(check).collect::<Result<_>>()?;
        let mut delta = vec![vec![Vec::new(); k]; num_states];
        for (src, letter, dst) in transitions {
            check(src)?;
            check(dst)?;
            if letter >= k {
                return Err(Error::Malformed(format!("letter {letter} out of range")));
            }
            delta[src][letter].push(dst);
        }
        for row in &mut delta {
            for targets in row.iter_mut() {
                targets.sort_unstable();
                targets.dedup();
            }
        }
        Ok(Nfa {
            alphabet,
            initial,
            accepting,
            delta,
        })
    }

    /// Glushkov automaton of `r`: one state per letter occurrence plus a
    /// start state. The empty word is dropped from the language.
    pub fn from_regex(r: &Regex, alphabet: &Alphabet) -> Result<Self> {
        let pos = Positions::of(r, alphabet)?;
        let mut transitions = Vec::new();
        for &p in &pos.first {
            transitions.push((0, pos.letters[p], p + 1));
        }
        for (p, follow) in pos.follow.iter().enumerate() {
            for &q in follow {
                transitions.push((p + 1, pos.letters[q], q + 1));
            }
        }
        Nfa::new(
            alphabet.clone(),
            pos.letters.len() + 1,
            [0],
            pos.last.iter().map(|p| p + 1),
            transitions,
        )
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> &BTreeSet<usize> {
        &self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting.contains(&state)
    }

    pub fn successors(&self, state: usize, letter: usize) -> &[usize] {
        &self.delta[state][letter]
    }

    /// All transitions as `(source, letter, target)`, in lexicographic order.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.delta.iter().enumerate().flat_map(|(s, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(l, ts)| ts.iter().map(move |&t| (s, l, t)))
        })
    }

    fn step(&self, set: &BTreeSet<usize>, letter: usize) -> BTreeSet<usize> {
        set.iter()
            .flat_map(|&s| self.delta[s][letter].iter().copied())
            .collect()
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        if word.is_empty() {
            return false;
        }
        let mut current = self.initial.clone();
        for &l in word {
            current = self.step(&current, l);
            if current.is_empty() {
                return false;
            }
        }
        current.iter().any(|s| self.accepting.contains(s))
    }

    /// True iff no nonempty word is accepted.
    pub fn is_empty(&self) -> bool {
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::new();
        for &s in &self.initial {
            for targets in &self.delta[s] {
                for &t in targets {
                    if !seen[t] {
                        seen[t] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
        while let Some(s) = queue.pop_front() {
            if self.accepting.contains(&s) {
                return false;
            }
            for targets in &self.delta[s] {
                for &t in targets {
                    if !seen[t] {
                        seen[t] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
        true
    }

    pub fn determinize(&self) -> Dfa {
        self.determinize_within(usize::MAX)
            .expect("unbounded determinization")
    }

    /// Subset construction, exploring letters in index order. Fails once
    /// more than `max_states` subsets are discovered.
    pub fn determinize_within(&self, max_states: usize) -> Result<Dfa> {
        let k = self.alphabet.len();
        let start: Vec<usize> = self.initial.iter().copied().collect();
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut subsets = vec![start.clone()];
        ids.insert(start, 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < subsets.len() {
            for l in 0..k {
                let mut next: Vec<usize> = subsets[i]
                    .iter()
                    .flat_map(|&s| self.delta[s][l].iter().copied())
                    .collect();
                next.sort_unstable();
                next.dedup();
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = subsets.len();
                        if id >= max_states {
                            return Err(Error::StateLimit(max_states));
                        }
                        ids.insert(next.clone(), id);
                        subsets.push(next);
                        id
                    }
                };
                delta.push(id);
            }
            i += 1;
        }
        let accepting = subsets
            .iter()
            .map(|set| set.iter().any(|s| self.accepting.contains(s)))
            .collect();
        Dfa::new(self.alphabet.clone(), 0, accepting, delta)
    }

    /// Restricts every letter (a variable set) to the variables in `keep`.
    /// The result is over the alphabet `2^keep`.
    pub fn project<S: AsRef<str>>(&self, keep: &[S]) -> Result<Nfa> {
        let keep: BTreeSet<String> = keep.iter().map(|v| v.as_ref().to_string()).collect();
        let keep_list: Vec<&String> = keep.iter().collect();
        let target = Alphabet::powerset(&keep_list)?;
        let mut image = Vec::with_capacity(self.alphabet.len());
        for l in 0..self.alphabet.len() {
            let vars = self.alphabet.letter_vars(l)?;
            let kept = vars.iter().filter(|v| keep.contains(*v)).map(String::as_str);
            image.push(target.letter(&crate::alphabet::format_var_set(kept))?);
        }
        Nfa::new(
            target,
            self.num_states(),
            self.initial.iter().copied(),
            self.accepting.iter().copied(),
            self.transitions().map(|(s, l, t)| (s, image[l], t)),
        )
    }

    /// All nonempty words up to `max_len` accepted by the automaton, in
    /// shortlex order. Intended for small alphabets.
    pub fn enumerate(&self, max_len: usize) -> Vec<Word> {
        all_words(self.alphabet.len(), max_len)
            .filter(|w| self.accepts(w))
            .collect()
    }
}

/// Every nonempty word over `k` letters of length at most `max_len`, in
/// shortlex order.
pub fn all_words(k: usize, max_len: usize) -> impl Iterator<Item = Word> {
    (1..=max_len).flat_map(move |len| {
        let total = k.checked_pow(len as u32).unwrap_or(0);
        (0..total).map(move |mut code| {
            let mut w = vec![0; len];
            for slot in w.iter_mut().rev() {
                *slot = code % k;
                code /= k;
            }
            w
        })
    })
}
