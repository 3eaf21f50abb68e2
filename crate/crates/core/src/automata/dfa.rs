use std::collections::{HashMap, VecDeque};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

use super::Nfa;

/// Total deterministic automaton. `delta[state * k + letter]` is the
/// successor, `k` being the alphabet size.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: Alphabet,
    initial: usize,
    accepting: Vec<bool>,
    delta: Vec<usize>,
}

/// Which pairs of a synchronous product accept.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductMode {
    Intersection,
    Union,
    /// Accepted by the left operand and rejected by the right one.
    Difference,
}

impl ProductMode {
    fn accepts(self, left: bool, right: bool) -> bool {
        match self {
            ProductMode::Intersection => left && right,
            ProductMode::Union => left || right,
            ProductMode::Difference => left && !right,
        }
    }
}

impl Dfa {
    pub fn new(
        alphabet: Alphabet,
        initial: usize,
        accepting: Vec<bool>,
        delta: Vec<usize>,
    ) -> Result<Self> {
        let n = accepting.len();
        if n == 0 {
            return Err(Error::Malformed("automaton has no states".into()));
        }
        if initial >= n {
            return Err(Error::Malformed(format!("initial state {initial} out of range")));
        }
        if delta.len() != n * alphabet.len() {
            return Err(Error::Malformed("transition table is not total".into()));
        }
        if let Some(bad) = delta.iter().find(|&&t| t >= n) {
            return Err(Error::Malformed(format!("state {bad} out of range")));
        }
        Ok(Dfa {
            alphabet,
            initial,
            accepting,
            delta,
        })
    }

    /// Builds a DFA from a possibly partial transition list. Missing
    /// transitions go to a fresh non-accepting sink, added only if needed.
    pub fn from_transitions(
        alphabet: Alphabet,
        num_states: usize,
        initial: usize,
        accepting: impl IntoIterator<Item = usize>,
        transitions: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self> {
        let k = alphabet.len();
        let mut table: Vec<Option<usize>> = vec![None; num_states * k];
        for (src, letter, dst) in transitions {
            if src >= num_states || dst >= num_states {
                return Err(Error::Malformed(format!(
                    "transition {src} -> {dst} references an unknown state"
                )));
            }
            if letter >= k {
                return Err(Error::Malformed(format!("letter {letter} out of range")));
            }
            let slot = &mut table[src * k + letter];
            match slot {
                Some(prev) if *prev != dst => {
                    return Err(Error::Malformed(format!(
                        "state {src} has two transitions on `{}`",
                        alphabet.name(letter)
                    )))
                }
                _ => *slot = Some(dst),
            }
        }
        let mut accept = vec![false; num_states];
        for s in accepting {
            if s >= num_states {
                return Err(Error::Malformed(format!("state {s} out of range")));
            }
            accept[s] = true;
        }
        let partial = table.iter().any(Option::is_none);
        let sink = num_states;
        let mut delta: Vec<usize> = table.into_iter().map(|t| t.unwrap_or(sink)).collect();
        if partial {
            accept.push(false);
            delta.extend(std::iter::repeat(sink).take(k));
        }
        Dfa::new(alphabet, initial, accept, delta)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = usize> + '_ {
        self.accepting
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(s, _)| s)
    }

    pub fn next(&self, state: usize, letter: usize) -> usize {
        self.delta[state * self.alphabet.len() + letter]
    }

    /// The state reached from `state` after reading `word`.
    pub fn run_from(&self, state: usize, word: &[usize]) -> usize {
        word.iter().fold(state, |s, &l| self.next(s, l))
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        !word.is_empty() && self.accepting[self.run_from(self.initial, word)]
    }

    /// Same automaton with a different accepting set.
    pub fn with_accepting(&self, accepting: impl IntoIterator<Item = usize>) -> Dfa {
        let mut flags = vec![false; self.num_states()];
        for s in accepting {
            flags[s] = true;
        }
        Dfa {
            accepting: flags,
            ..self.clone()
        }
    }

    /// States reachable from the initial one by a nonempty word.
    fn reachable_by_letters(&self) -> Vec<bool> {
        let k = self.alphabet.len();
        let mut seen = vec![false; self.num_states()];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for l in 0..k {
            let t = self.next(self.initial, l);
            if !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        }
        while let Some(s) = queue.pop_front() {
            for l in 0..k {
                let t = self.next(s, l);
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    pub fn is_empty(&self) -> bool {
        self.reachable_by_letters()
            .iter()
            .zip(&self.accepting)
            .all(|(&r, &a)| !(r && a))
    }

    /// Accepts exactly the nonempty words this automaton rejects.
    pub fn complement(&self) -> Dfa {
        Dfa {
            accepting: self.accepting.iter().map(|a| !a).collect(),
            ..self.clone()
        }
    }

    pub fn product(&self, other: &Dfa, mode: ProductMode) -> Result<Dfa> {
        self.product_within(other, mode, usize::MAX)
    }

    /// Synchronous product restricted to reachable pairs, numbered in BFS
    /// order.
    pub fn product_within(&self, other: &Dfa, mode: ProductMode, max_states: usize) -> Result<Dfa> {
        let (mut product, pairs) = self.synchronous_within(other, max_states)?;
        product.accepting = pairs
            .iter()
            .map(|&(p, q)| mode.accepts(self.accepting[p], other.accepting[q]))
            .collect();
        Ok(product)
    }

    /// The reachable part of the synchronous product, with no accepting
    /// states, and the pair of component states behind each product state.
    pub fn synchronous_within(
        &self,
        other: &Dfa,
        max_states: usize,
    ) -> Result<(Dfa, Vec<(usize, usize)>)> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let k = self.alphabet.len();
        let start = (self.initial, other.initial);
        let mut ids = HashMap::from([(start, 0usize)]);
        let mut pairs = vec![start];
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            for l in 0..k {
                let next = (self.next(p, l), other.next(q, l));
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = pairs.len();
                        if id >= max_states {
                            return Err(Error::StateLimit(max_states));
                        }
                        ids.insert(next, id);
                        pairs.push(next);
                        id
                    }
                };
                delta.push(id);
            }
            i += 1;
        }
        let dfa = Dfa::new(self.alphabet.clone(), 0, vec![false; pairs.len()], delta)?;
        Ok((dfa, pairs))
    }

    /// Minimal total DFA for the language, in canonical form.
    ///
    /// The initial state is split off into a fresh non-accepting copy (the
    /// empty word is never accepted), unreachable states are dropped and
    /// Moore refinement merges equivalent states. States are then numbered
    /// in BFS order from the initial state, following letters by index, so
    /// equal languages give equal automata.
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet.len();
        let n = self.num_states();

        // fresh initial copy at index n
        let mut delta = self.delta.clone();
        delta.extend_from_slice(&self.delta[self.initial * k..(self.initial + 1) * k]);
        let mut accepting = self.accepting.clone();
        accepting.push(false);
        let start = n;

        let order = bfs_order(&delta, k, start);
        let mut local = vec![usize::MAX; n + 1];
        for (i, &s) in order.iter().enumerate() {
            local[s] = i;
        }
        let m = order.len();
        let step = |i: usize, l: usize| local[delta[order[i] * k + l]];

        let mut class: Vec<usize> = order.iter().map(|&s| accepting[s] as usize).collect();
        let mut count = class.iter().copied().max().map_or(0, |c| c + 1);
        loop {
            let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next_class = Vec::with_capacity(m);
            for i in 0..m {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[i]);
                sig.extend((0..k).map(|l| class[step(i, l)]));
                let fresh = ids.len();
                next_class.push(*ids.entry(sig).or_insert(fresh));
            }
            let next_count = ids.len();
            class = next_class;
            if next_count == count {
                break;
            }
            count = next_count;
        }

        let mut quotient = vec![0usize; count * k];
        let mut q_accepting = vec![false; count];
        for i in 0..m {
            let c = class[i];
            q_accepting[c] = accepting[order[i]];
            for l in 0..k {
                quotient[c * k + l] = class[step(i, l)];
            }
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            initial: class[local[start]],
            accepting: q_accepting,
            delta: quotient,
        }
        .renumbered()
    }

    /// Restricts to reachable states, numbered in BFS order.
    pub fn renumbered(&self) -> Dfa {
        let k = self.alphabet.len();
        let order = bfs_order(&self.delta, k, self.initial);
        let mut id = vec![usize::MAX; self.num_states()];
        for (i, &s) in order.iter().enumerate() {
            id[s] = i;
        }
        let mut delta = Vec::with_capacity(order.len() * k);
        for &s in &order {
            for l in 0..k {
                delta.push(id[self.next(s, l)]);
            }
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            initial: 0,
            accepting: order.iter().map(|&s| self.accepting[s]).collect(),
            delta,
        }
    }

    /// True iff both automata accept the same nonempty words.
    pub fn equivalent(&self, other: &Dfa) -> bool {
        self.alphabet == other.alphabet && self.minimize() == other.minimize()
    }

    pub fn to_nfa(&self) -> Nfa {
        let k = self.alphabet.len();
        Nfa::new(
            self.alphabet.clone(),
            self.num_states(),
            [self.initial],
            self.accepting_states(),
            (0..self.num_states()).flat_map(|s| (0..k).map(move |l| (s, l, self.delta[s * k + l]))),
        )
        .expect("a valid DFA is a valid NFA")
    }

    /// True iff no word induces a nontrivial cycle on states, i.e. the
    /// transition semigroup is aperiodic.
    pub fn is_counter_free(&self) -> bool {
        crate::semigroup::FiniteSemigroup::of_dfa(self).is_aperiodic()
    }
}

fn bfs_order(delta: &[usize], k: usize, start: usize) -> Vec<usize> {
    let n = delta.len() / k;
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut order = vec![start];
    let mut i = 0;
    while i < order.len() {
        let s = order[i];
        for l in 0..k {
            let t = delta[s * k + l];
            if !seen[t] {
                seen[t] = true;
                order.push(t);
            }
        }
        i += 1;
    }
    order
}
