//! Generators and brute-force oracles shared by the integration tests.
//! Nothing here calls into the semigroup or separation code.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};
use std::path::PathBuf;

use fosep::automata::all_words;
use fosep::format::{read_automaton_file, Automaton};
use fosep::{Alphabet, Dfa, LtlFormula};
use rand::Rng;

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

pub fn load_dfa(name: &str) -> Dfa {
    match read_automaton_file(data(name)).unwrap() {
        Automaton::Dfa(d) => d,
        Automaton::Nfa(n) => n.determinize(),
    }
}

/// Random total DFA with `1..=max_states` states over `1..=max_letters`
/// letters, restricted to its reachable part.
pub fn random_dfa(rng: &mut impl Rng, max_states: usize, max_letters: usize) -> Dfa {
    let n = rng.gen_range(1..=max_states);
    let k = rng.gen_range(1..=max_letters);
    let alphabet = Alphabet::new(["a", "b", "c", "d"].into_iter().take(k)).unwrap();
    let delta = (0..n * k).map(|_| rng.gen_range(0..n)).collect();
    let accepting = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    Dfa::new(alphabet, 0, accepting, delta).unwrap().renumbered()
}

/// Random DFA over a fixed two-letter alphabet.
pub fn random_dfa_ab(rng: &mut impl Rng, max_states: usize) -> Dfa {
    let n = rng.gen_range(1..=max_states);
    let alphabet = Alphabet::new(["a", "b"]).unwrap();
    let delta = (0..n * 2).map(|_| rng.gen_range(0..n)).collect();
    let accepting = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    Dfa::new(alphabet, 0, accepting, delta).unwrap().renumbered()
}

/// Random formula of depth at most `depth` over `vars`, using every
/// connective.
pub fn random_formula(rng: &mut impl Rng, depth: usize, vars: &[&str]) -> LtlFormula {
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..vars.len() + 1) {
            0 => LtlFormula::True,
            i => LtlFormula::var(vars[i - 1]),
        };
    }
    let op = rng.gen_range(0..10);
    let a = random_formula(rng, depth - 1, vars);
    let mut sub = || random_formula(rng, depth - 1, vars);
    match op {
        0 => a.not(),
        1 => a.and(sub()),
        2 => a.or(sub()),
        3 => a.implies(sub()),
        4 => a.iff(sub()),
        5 => a.next(),
        6 => a.eventually(),
        7 => a.until(sub()),
        8 => a.globally(),
        _ => a.not().and(sub()),
    }
}

/// Number of distinct residuals `u⁻¹L` over words `u` of length below
/// `prefix_len`, compared on suffixes up to `suffix_len` (the empty
/// suffix included). For small automata this is the size of the minimal
/// total DFA.
pub fn residual_count(d: &Dfa, prefix_len: usize, suffix_len: usize) -> usize {
    let k = d.alphabet().len();
    let mut suffixes: Vec<Vec<usize>> = vec![Vec::new()];
    suffixes.extend(all_words(k, suffix_len));
    let mut prefixes: Vec<Vec<usize>> = vec![Vec::new()];
    prefixes.extend(all_words(k, prefix_len));
    let signatures: HashSet<Vec<bool>> = prefixes
        .iter()
        .map(|u| {
            suffixes
                .iter()
                .map(|v| {
                    let w: Vec<usize> = u.iter().chain(v).copied().collect();
                    d.accepts(&w)
                })
                .collect()
        })
        .collect();
    signatures.len()
}

/// Every transformation `δ_w`, `w` nonempty, found by breadth-first search
/// over words with deduplication.
pub fn all_transformations(d: &Dfa) -> Vec<Vec<usize>> {
    let n = d.num_states();
    let k = d.alphabet().len();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue = VecDeque::new();
    for l in 0..k {
        let f: Vec<usize> = (0..n).map(|q| d.next(q, l)).collect();
        if seen.insert(f.clone()) {
            queue.push_back(f);
        }
    }
    let mut out = Vec::new();
    while let Some(f) = queue.pop_front() {
        for l in 0..k {
            let g: Vec<usize> = f.iter().map(|&q| d.next(q, l)).collect();
            if seen.insert(g.clone()) {
                queue.push_back(g);
            }
        }
        out.push(f);
    }
    out
}

/// Does the functional graph of `f` contain a cycle of length at least 2?
pub fn has_nontrivial_cycle(f: &[usize]) -> bool {
    (0..f.len()).any(|q| {
        let mut x = f[q];
        for _ in 0..f.len() {
            if x == q {
                return f[q] != q;
            }
            x = f[x];
        }
        false
    })
}

/// Counter-freeness straight from the definition: no `δ_w` moves states
/// around a cycle of length at least 2.
pub fn counter_free_by_cycles(d: &Dfa) -> bool {
    !all_transformations(d)
        .iter()
        .any(|f| has_nontrivial_cycle(f))
}

/// Membership in `L(d)` for all nonempty words up to `max_len`.
pub fn language_sample(d: &Dfa, max_len: usize) -> HashMap<Vec<usize>, bool> {
    all_words(d.alphabet().len(), max_len)
        .map(|w| {
            let a = d.accepts(&w);
            (w, a)
        })
        .collect()
}
