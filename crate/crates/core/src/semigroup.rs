//! Finite semigroups recognising regular languages.
//!
//! The transition semigroup of a total DFA consists of the functions
//! `δ_w` for nonempty words `w`, under composition (`δ_u · δ_v = δ_uv`).
//! Elements are discovered breadth-first from the letters, so element ids
//! follow the shortlex order of their shortest witness words.
//!
//! Products use a materialised Cayley table for small semigroups and
//! otherwise walk the witness word of the right factor through the right
//! action of the letters.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::alphabet::Word;
use crate::automata::Dfa;
use crate::error::{Error, Result};

/// Semigroups up to this size get a full Cayley table.
const TABLE_LIMIT: usize = 2048;

/// A total map on DFA states, `image[q] = δ(q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TransitionFunction(pub Vec<u32>);

impl TransitionFunction {
    /// Apply `self` first, then `other`.
    pub fn then(&self, other: &TransitionFunction) -> TransitionFunction {
        TransitionFunction(self.0.iter().map(|&q| other.0[q as usize]).collect())
    }

    pub fn apply(&self, state: usize) -> usize {
        self.0[state] as usize
    }
}

#[derive(Clone, Debug)]
pub struct FiniteSemigroup {
    letters: usize,
    /// letter -> element
    generators: Vec<usize>,
    /// `right[s * letters + l] = s · α(l)`
    right: Vec<usize>,
    witness: Vec<Word>,
    table: Option<Vec<usize>>,
    /// Empty for semigroups given abstractly by a table.
    functions: Vec<TransitionFunction>,
}

/// Eventually periodic behaviour of `s, s², s³, …`: `s^index = s^(index + period)`
/// with both minimal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowerCycle {
    pub index: usize,
    pub period: usize,
}

impl FiniteSemigroup {
    pub fn of_dfa(dfa: &Dfa) -> Self {
        Self::of_dfa_within(dfa, usize::MAX).expect("unbounded construction")
    }

    /// Transition semigroup of `dfa`; fails beyond `max_elements` elements.
    pub fn of_dfa_within(dfa: &Dfa, max_elements: usize) -> Result<Self> {
        let k = dfa.alphabet().len();
        let n = dfa.num_states();
        let letter_fns: Vec<TransitionFunction> = (0..k)
            .map(|l| TransitionFunction((0..n).map(|q| dfa.next(q, l) as u32).collect()))
            .collect();

        let mut ids: HashMap<TransitionFunction, usize> = HashMap::new();
        let mut functions: Vec<TransitionFunction> = Vec::new();
        let mut witness: Vec<Word> = Vec::new();

        let mut generators = Vec::with_capacity(k);
        for (l, f) in letter_fns.iter().enumerate() {
            let id = *ids.entry(f.clone()).or_insert_with(|| {
                functions.push(f.clone());
                witness.push(vec![l]);
                functions.len() - 1
            });
            generators.push(id);
        }

        let mut right = Vec::new();
        let mut i = 0;
        while i < functions.len() {
            for (l, g) in letter_fns.iter().enumerate() {
                let product = functions[i].then(g);
                let id = match ids.get(&product) {
                    Some(&id) => id,
                    None => {
                        let id = functions.len();
                        if id >= max_elements {
                            return Err(Error::StateLimit(max_elements));
                        }
                        let mut word = witness[i].clone();
                        word.push(l);
                        ids.insert(product.clone(), id);
                        functions.push(product);
                        witness.push(word);
                        id
                    }
                };
                right.push(id);
            }
            i += 1;
        }

        let mut s = FiniteSemigroup {
            letters: k,
            generators,
            right,
            witness,
            table: None,
            functions,
        };
        s.materialize_table();
        Ok(s)
    }

    /// A semigroup given by its Cayley table (`table[s][t] = s·t`) and the
    /// images of the letters. Every element must be a product of generators.
    pub fn from_table(table: Vec<Vec<usize>>, generators: Vec<usize>) -> Result<Self> {
        let size = table.len();
        if size == 0 || generators.is_empty() {
            return Err(Error::Malformed("empty semigroup".into()));
        }
        if table.iter().any(|row| row.len() != size || row.iter().any(|&x| x >= size))
            || generators.iter().any(|&g| g >= size)
        {
            return Err(Error::Malformed("Cayley table out of range".into()));
        }
        let k = generators.len();
        let mut witness: Vec<Option<Word>> = vec![None; size];
        let mut queue = std::collections::VecDeque::new();
        for (l, &g) in generators.iter().enumerate() {
            if witness[g].is_none() {
                witness[g] = Some(vec![l]);
                queue.push_back(g);
            }
        }
        while let Some(s) = queue.pop_front() {
            for (l, &g) in generators.iter().enumerate() {
                let t = table[s][g];
                if witness[t].is_none() {
                    let mut w = witness[s].clone().unwrap();
                    w.push(l);
                    witness[t] = Some(w);
                    queue.push_back(t);
                }
            }
        }
        let witness: Vec<Word> = witness
            .into_iter()
            .map(|w| w.ok_or_else(|| Error::Malformed("element not generated by letters".into())))
            .collect::<Result<_>>()?;
        let right = (0..size)
            .flat_map(|s| generators.iter().map(|&g| table[s][g]).collect::<Vec<_>>())
            .collect();
        Ok(FiniteSemigroup {
            letters: k,
            generators,
            right,
            witness,
            table: Some(table.into_iter().flatten().collect()),
            functions: Vec::new(),
        })
    }

    fn materialize_table(&mut self) {
        let size = self.len();
        if size > TABLE_LIMIT {
            return;
        }
        // Walk elements in BFS order: t = parent(t)·l, so s·t = (s·parent)·l.
        let mut table = vec![usize::MAX; size * size];
        let mut order: Vec<usize> = (0..size).collect();
        order.sort_by_key(|&t| self.witness[t].len());
        for &t in &order {
            let w = &self.witness[t];
            let last = *w.last().unwrap();
            let parent = (w.len() > 1).then(|| self.element_of(&w[..w.len() - 1]));
            for s in 0..size {
                let prefix = match parent {
                    Some(p) => table[s * size + p],
                    None => s,
                };
                table[s * size + t] = self.right[prefix * self.letters + last];
            }
        }
        self.table = Some(table);
    }

    pub fn len(&self) -> usize {
        self.witness.len()
    }

    pub fn is_empty(&self) -> bool {
        self.witness.is_empty()
    }

    pub fn num_letters(&self) -> usize {
        self.letters
    }

    /// `α(letter)`.
    pub fn generator(&self, letter: usize) -> usize {
        self.generators[letter]
    }

    /// Shortlex-least word mapped to `element`.
    pub fn witness(&self, element: usize) -> &[usize] {
        &self.witness[element]
    }

    /// The transition function of `element`, for DFA-derived semigroups.
    pub fn function(&self, element: usize) -> Option<&TransitionFunction> {
        self.functions.get(element)
    }

    /// `α(word)` for a nonempty word.
    pub fn element_of(&self, word: &[usize]) -> usize {
        let (&first, rest) = word.split_first().expect("nonempty word");
        rest.iter()
            .fold(self.generators[first], |s, &l| self.right[s * self.letters + l])
    }

    pub fn mul(&self, s: usize, t: usize) -> usize {
        match &self.table {
            Some(table) => table[s * self.len() + t],
            None => self.witness[t]
                .iter()
                .fold(s, |acc, &l| self.right[acc * self.letters + l]),
        }
    }

    /// `s^n` for `n ≥ 1`.
    pub fn pow(&self, s: usize, n: usize) -> usize {
        assert!(n >= 1, "semigroup powers start at 1");
        let mut result = None;
        let mut base = s;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = Some(result.map_or(base, |r| self.mul(r, base)));
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(base, base);
            }
        }
        result.unwrap()
    }

    pub fn is_idempotent(&self, s: usize) -> bool {
        self.mul(s, s) == s
    }

    pub fn power_cycle(&self, s: usize) -> PowerCycle {
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut x = s;
        let mut exp = 1;
        loop {
            if let Some(&first) = seen.get(&x) {
                return PowerCycle {
                    index: first,
                    period: exp - first,
                };
            }
            seen.insert(x, exp);
            x = self.mul(x, s);
            exp += 1;
        }
    }

    /// `ω(S)`: the least `n ≥ 1` with `s^n` idempotent for every `s`.
    pub fn idempotent_power(&self) -> usize {
        let mut lcm = 1usize;
        let mut max_index = 1usize;
        for s in 0..self.len() {
            let c = self.power_cycle(s);
            lcm = lcm / gcd(lcm, c.period) * c.period;
            max_index = max_index.max(c.index);
        }
        max_index.div_ceil(lcm) * lcm
    }

    /// `s^ω = s^(ω+1)` for all `s`, i.e. every period is 1.
    pub fn is_aperiodic(&self) -> bool {
        (0..self.len()).all(|s| self.power_cycle(s).period == 1)
    }

    /// Elements whose words lead `dfa` from its initial state to an
    /// accepting state. `dfa` must be the automaton the semigroup was built
    /// from.
    pub fn accepting_elements(&self, dfa: &Dfa) -> FixedBitSet {
        self.elements_where(|f| dfa.is_accepting(f.apply(dfa.initial())))
    }

    /// Elements whose transition function satisfies `pred`.
    pub fn elements_where(&self, pred: impl Fn(&TransitionFunction) -> bool) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.len());
        for (s, f) in self.functions.iter().enumerate() {
            if pred(f) {
                set.insert(s);
            }
        }
        set
    }

    /// Full multiplication table, row-major by left factor.
    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        (0..self.len())
            .map(|s| (0..self.len()).map(|t| self.mul(s, t)).collect())
            .collect()
    }
}

/// Transition semigroup of the minimal automaton: the canonical recogniser
/// of the language.
pub fn syntactic_semigroup(d: &Dfa) -> FiniteSemigroup {
    FiniteSemigroup::of_dfa(&d.minimize())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
