//! Compilation of LTL formulas to NFAs over `2^vars`.
//!
//! States are atoms: maximal consistent subsets of the closure of the
//! formula, plus a letterless start state. The closure is built after
//! expanding `G`, rewriting `|`, `->` and `<->` into `&` and `!`, and
//! cancelling double negations, so an atom is fixed by the truth values of
//! its variables and temporal subformulas (`X`, `F`, `U`); conjunctions and
//! `true` follow.
//!
//! Reading letter `b` from atom `A` leads to atom `B` when `B` carries
//! letter `b` and the one-step unfoldings hold:
//!
//! * `X a ∈ A` iff `a ∈ B`
//! * `F a ∈ A` iff `a ∈ B` or `F a ∈ B`
//! * `a U b ∈ A` iff `a ∈ B`, or `b ∈ B` and `a U b ∈ B`
//!
//! Atoms with no temporal subformula are accepting, since strict future
//! operators fail at the last position. The start state moves to atoms
//! containing the formula itself.

use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;

use crate::alphabet::{Alphabet, MAX_VARIABLES};
use crate::automata::{Nfa, DEFAULT_MAX_STATES};
use crate::error::{Error, Result};
use crate::ltl::LtlFormula;

/// A closure member: a positive node, possibly negated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Lit {
    node: usize,
    neg: bool,
}

impl Lit {
    fn negate(self) -> Lit {
        Lit {
            neg: !self.neg,
            ..self
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Node {
    True,
    Var(usize),
    And(Lit, Lit),
    Next(Lit),
    Eventually(Lit),
    Until(Lit, Lit),
}

/// Hash-consed positive subformulas, children before parents.
#[derive(Default)]
struct Closure {
    nodes: Vec<Node>,
    ids: HashMap<Node, usize>,
    vars: Vec<String>,
}

impl Closure {
    fn intern(&mut self, node: Node) -> Lit {
        let next = self.nodes.len();
        let id = *self.ids.entry(node.clone()).or_insert(next);
        if id == next {
            self.nodes.push(node);
        }
        Lit { node: id, neg: false }
    }

    fn and(&mut self, a: Lit, b: Lit) -> Lit {
        self.intern(Node::And(a, b))
    }

    fn build(&mut self, f: &LtlFormula) -> Lit {
        use LtlFormula::*;
        match f {
            True => self.intern(Node::True),
            Var(v) => {
                let j = self.vars.binary_search(v).expect("variable in universe");
                self.intern(Node::Var(j))
            }
            Not(a) => self.build(a).negate(),
            And(a, b) => {
                let (a, b) = (self.build(a), self.build(b));
                self.and(a, b)
            }
            Or(a, b) => {
                let (a, b) = (self.build(a), self.build(b));
                self.and(a.negate(), b.negate()).negate()
            }
            Implies(a, b) => {
                let (a, b) = (self.build(a), self.build(b));
                self.and(a, b.negate()).negate()
            }
            Iff(a, b) => {
                let (a, b) = (self.build(a), self.build(b));
                let l = self.and(a, b.negate()).negate();
                let r = self.and(b, a.negate()).negate();
                self.and(l, r)
            }
            Next(a) => {
                let a = self.build(a);
                self.intern(Node::Next(a))
            }
            Eventually(a) => {
                let a = self.build(a);
                self.intern(Node::Eventually(a))
            }
            Until(a, b) => {
                let (a, b) = (self.build(a), self.build(b));
                self.intern(Node::Until(a, b))
            }
            Globally(_) => unreachable!("expanded before closure construction"),
        }
    }

    fn is_free(&self, node: usize) -> bool {
        !matches!(self.nodes[node], Node::True | Node::And(..))
    }

    fn is_temporal(&self, node: usize) -> bool {
        matches!(
            self.nodes[node],
            Node::Next(_) | Node::Eventually(_) | Node::Until(..)
        )
    }
}

fn holds(atom: &FixedBitSet, lit: Lit) -> bool {
    atom.contains(lit.node) != lit.neg
}

/// NFA over `2^vars(φ)` accepting the nonempty words that satisfy `φ` at
/// position 0.
pub fn ltl_to_nfa(formula: &LtlFormula) -> Result<Nfa> {
    let vars: Vec<String> = formula.vars().into_iter().collect();
    ltl_to_nfa_over(formula, &vars)
}

/// As [`ltl_to_nfa`], over `2^universe` for a universe containing every
/// variable of the formula. Variables of the universe the formula does not
/// mention are unconstrained.
pub fn ltl_to_nfa_over<S: AsRef<str>>(formula: &LtlFormula, universe: &[S]) -> Result<Nfa> {
    ltl_to_nfa_within(formula, universe, DEFAULT_MAX_STATES)
}

pub fn ltl_to_nfa_within<S: AsRef<str>>(
    formula: &LtlFormula,
    universe: &[S],
    max_states: usize,
) -> Result<Nfa> {
    let universe: Vec<String> = universe
        .iter()
        .map(|v| v.as_ref().to_string())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let phi_vars: Vec<String> = formula.vars().into_iter().collect();
    if let Some(v) = phi_vars.iter().find(|v| universe.binary_search(v).is_err()) {
        return Err(Error::InvalidAlphabet(format!("variable `{v}` missing from universe")));
    }
    if universe.len() > MAX_VARIABLES {
        return Err(Error::InvalidAlphabet(format!(
            "{} variables exceed the limit of {MAX_VARIABLES}",
            universe.len()
        )));
    }
    let alphabet = Alphabet::powerset(&universe)?;

    let mut closure = Closure {
        vars: phi_vars.clone(),
        ..Default::default()
    };
    let root = closure.build(&formula.expand_globally());
    let size = closure.nodes.len();
    let free: Vec<usize> = (0..size).filter(|&n| closure.is_free(n)).collect();
    let temporal: Vec<usize> = (0..size).filter(|&n| closure.is_temporal(n)).collect();
    if free.len() >= usize::BITS as usize - 1 || (1usize << free.len()) >= max_states {
        return Err(Error::StateLimit(max_states));
    }

    // Enumerate atoms: free bits chosen, the rest derived in node order.
    let mut atoms: Vec<FixedBitSet> = Vec::with_capacity(1 << free.len());
    for mask in 0..1usize << free.len() {
        let mut atom = FixedBitSet::with_capacity(size);
        for (i, &n) in free.iter().enumerate() {
            atom.set(n, mask >> i & 1 == 1);
        }
        for n in 0..size {
            match closure.nodes[n] {
                Node::True => atom.insert(n),
                Node::And(a, b) => {
                    let v = holds(&atom, a) && holds(&atom, b);
                    atom.set(n, v);
                }
                _ => {}
            }
        }
        atoms.push(atom);
    }

    // Letter of each atom, as a mask over phi_vars.
    let var_nodes: Vec<Option<usize>> = (0..phi_vars.len())
        .map(|j| closure.ids.get(&Node::Var(j)).copied())
        .collect();
    let atom_letter: Vec<usize> = atoms
        .iter()
        .map(|a| {
            var_nodes
                .iter()
                .enumerate()
                .filter(|(_, n)| n.is_some_and(|n| a.contains(n)))
                .fold(0, |m, (j, _)| m | 1 << j)
        })
        .collect();
    // Restriction of each universe letter to phi_vars.
    let positions: Vec<usize> = phi_vars
        .iter()
        .map(|v| universe.binary_search(v).unwrap())
        .collect();
    let mut by_restriction: Vec<Vec<usize>> = vec![Vec::new(); 1 << phi_vars.len()];
    for letter in 0..alphabet.len() {
        let r = positions
            .iter()
            .enumerate()
            .fold(0, |m, (j, &p)| m | (letter >> p & 1) << j);
        by_restriction[r].push(letter);
    }

    let step_ok = |a: &FixedBitSet, b: &FixedBitSet| {
        temporal.iter().all(|&t| {
            let now = a.contains(t);
            let next = match closure.nodes[t] {
                Node::Next(x) => holds(b, x),
                Node::Eventually(x) => holds(b, x) || b.contains(t),
                Node::Until(x, y) => holds(b, x) || (holds(b, y) && b.contains(t)),
                _ => unreachable!(),
            };
            now == next
        })
    };

    let mut transitions = Vec::new();
    for (j, b) in atoms.iter().enumerate() {
        if holds(b, root) {
            for &letter in &by_restriction[atom_letter[j]] {
                transitions.push((0, letter, j + 1));
            }
        }
    }
    for (i, a) in atoms.iter().enumerate() {
        for (j, b) in atoms.iter().enumerate() {
            if step_ok(a, b) {
                for &letter in &by_restriction[atom_letter[j]] {
                    transitions.push((i + 1, letter, j + 1));
                }
            }
        }
    }
    let accepting = atoms
        .iter()
        .enumerate()
        .filter(|(_, a)| temporal.iter().all(|&t| !a.contains(t)))
        .map(|(i, _)| i + 1);
    Nfa::new(alphabet, atoms.len() + 1, [0], accepting, transitions)
}
