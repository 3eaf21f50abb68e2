//! First-order separability via saturation of element sets.
//!
//! For a semigroup `S` recognising two languages through accepting sets
//! `F₁`, `F₂`, let `S†` be the least family of subsets of `S` that contains
//! every singleton `{α(w)}` and is closed under
//!
//! * taking subsets,
//! * set products `T·T' = { t·t' }`,
//! * `T ↦ T^ω ∪ T^(ω+1)` with `ω = ω(S)` fixed.
//!
//! The languages are separable by a first-order definable language iff no
//! pair `{t₁, t₂}` with `t₁ ∈ F₁`, `t₂ ∈ F₂` belongs to `S†`.
//!
//! `S†` is downward closed, so it is stored as the antichain of its maximal
//! members. Both operations are monotone for inclusion: if `T ⊆ U` then
//! `T·V ⊆ U·V`, `V·T ⊆ V·U` and `T^n ⊆ U^n`. Every set derived from a
//! non-maximal member is therefore below a set derived from a maximal one,
//! and the fixpoint only has to combine maximal sets.
//!
//! Saturation seeds every element of the semigroup as a singleton. This is
//! exact for transition semigroups, where each element is some `δ_w`; a
//! recognising semigroup larger than the image of `α` would need seeding
//! restricted to that image.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use fixedbitset::FixedBitSet;

use crate::alphabet::{Alphabet, Word};
use crate::automata::{Dfa, DEFAULT_MAX_STATES};
use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;

/// Downward-closed family of element sets, stored by its maximal members.
#[derive(Clone, Debug)]
pub struct SubsetFamily {
    universe: usize,
    /// Dead slots keep an empty set.
    sets: Vec<FixedBitSet>,
    alive: Vec<bool>,
    /// element -> live slots containing it
    containing: Vec<Vec<usize>>,
    /// element -> live slots whose least element it is
    by_min: Vec<Vec<usize>>,
}

impl SubsetFamily {
    pub fn new(universe: usize) -> Self {
        SubsetFamily {
            universe,
            sets: Vec::new(),
            alive: Vec::new(),
            containing: vec![Vec::new(); universe],
            by_min: vec![Vec::new(); universe],
        }
    }

    /// Is `set` below some stored maximal member?
    pub fn contains(&self, set: &FixedBitSet) -> bool {
        match set.ones().min_by_key(|&e| self.containing[e].len()) {
            Some(e) => self.containing[e].iter().any(|&m| set.is_subset(&self.sets[m])),
            None => !self.is_empty(),
        }
    }

    pub fn contains_elements(&self, elements: &[usize]) -> bool {
        self.contains(&self.set_of(elements))
    }

    fn set_of(&self, elements: &[usize]) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.universe);
        for &e in elements {
            set.insert(e);
        }
        set
    }

    /// Adds `set` unless it is already a member, dropping the stored sets it
    /// dominates. Returns the slot of the new maximal set.
    pub fn insert(&mut self, set: FixedBitSet) -> Option<usize> {
        if self.contains(&set) {
            return None;
        }
        let dominated: Vec<usize> = set
            .ones()
            .flat_map(|e| self.by_min[e].iter().copied())
            .filter(|&m| self.sets[m].is_subset(&set))
            .collect();
        for m in dominated {
            self.kill(m);
        }
        let slot = self.sets.len();
        for e in set.ones() {
            self.containing[e].push(slot);
        }
        if let Some(e) = set.minimum() {
            self.by_min[e].push(slot);
        }
        self.sets.push(set);
        self.alive.push(true);
        Some(slot)
    }

    fn kill(&mut self, slot: usize) {
        let set = std::mem::take(&mut self.sets[slot]);
        for e in set.ones() {
            self.containing[e].retain(|&m| m != slot);
        }
        if let Some(e) = set.minimum() {
            self.by_min[e].retain(|&m| m != slot);
        }
        self.alive[slot] = false;
    }

    fn is_alive(&self, slot: usize) -> bool {
        self.alive[slot]
    }

    /// Maximal members in insertion order.
    pub fn maximal(&self) -> impl Iterator<Item = &FixedBitSet> {
        self.sets
            .iter()
            .zip(&self.alive)
            .filter(|(_, &a)| a)
            .map(|(s, _)| s)
    }

    /// Maximal members with at least two elements, each as sorted element ids.
    pub fn non_singleton(&self) -> Vec<Vec<usize>> {
        self.maximal()
            .filter(|m| m.count_ones(..) >= 2)
            .map(|m| m.ones().collect())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn set_product(s: &FiniteSemigroup, left: &FixedBitSet, right: &FixedBitSet) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(s.len());
    let rs: Vec<usize> = right.ones().collect();
    for t in left.ones() {
        for &u in &rs {
            out.insert(s.mul(t, u));
        }
    }
    out
}

fn letter_product(s: &FiniteSemigroup, set: &FixedBitSet, letter: usize) -> FixedBitSet {
    let g = s.generator(letter);
    let mut out = FixedBitSet::with_capacity(s.len());
    for t in set.ones() {
        out.insert(s.mul(t, g));
    }
    out
}

/// `T^ω ∪ T^(ω+1)`. The powers of `T` are eventually periodic, so the
/// sequence is followed until a repeat and then indexed by residue.
fn idempotent_closure(s: &FiniteSemigroup, set: &FixedBitSet, omega: usize) -> FixedBitSet {
    let mut powers = vec![set.clone()];
    let mut seen = HashMap::from([(set.clone(), 0)]);
    let power = |powers: &Vec<FixedBitSet>, start: usize, n: usize| -> FixedBitSet {
        if n < powers.len() {
            powers[n].clone()
        } else {
            let period = powers.len() - start;
            powers[start + (n - start) % period].clone()
        }
    };
    let start = loop {
        if powers.len() > omega {
            break 0;
        }
        let next = set_product(s, powers.last().expect("nonempty"), set);
        if let Some(&first) = seen.get(&next) {
            break first;
        }
        seen.insert(next.clone(), powers.len());
        powers.push(next);
    };
    // powers[i] is T^(i+1).
    let mut out = power(&powers, start, omega - 1);
    out.union_with(&power(&powers, start, omega));
    out
}

/// Computes `S†` as an antichain of maximal sets.
pub fn saturate(s: &FiniteSemigroup) -> SubsetFamily {
    saturate_until(s, |_| false).0
}

/// Saturation that stops as soon as `stop` holds for a newly inserted
/// maximal set; the flag reports whether it stopped early.
///
/// Every member of `S†` lies below a product `X₁⋯X_k` in which each `X_i`
/// is a letter image `{α(a)}` or a set `U^ω ∪ U^(ω+1)` with `U ∈ S†`. So
/// it suffices to seed the letter singletons and close under right
/// multiplication by letters and by such idempotent-power sets (kept as
/// their own antichain), together with the idempotent-power rule. Queued
/// sets are processed largest first, earliest insertion on ties, so small
/// sets are often dominated before they are expanded.
pub fn saturate_until(
    s: &FiniteSemigroup,
    mut stop: impl FnMut(&FixedBitSet) -> bool,
) -> (SubsetFamily, bool) {
    let omega = s.idempotent_power();
    let mut family = SubsetFamily::new(s.len());
    let mut powers = SubsetFamily::new(s.len());
    let mut queue = BinaryHeap::new();

    let mut pending: Vec<FixedBitSet> = (0..s.num_letters())
        .map(|l| {
            let mut single = FixedBitSet::with_capacity(s.len());
            single.insert(s.generator(l));
            single
        })
        .collect();
    loop {
        for d in pending.drain(..) {
            let n = d.count_ones(..);
            if let Some(slot) = family.insert(d) {
                if stop(&family.sets[slot]) {
                    return (family, true);
                }
                queue.push((n, Reverse(slot)));
            }
        }
        let Some((_, Reverse(slot))) = queue.pop() else {
            break;
        };
        if !family.is_alive(slot) {
            continue;
        }
        let t = family.sets[slot].clone();
        for l in 0..s.num_letters() {
            pending.push(letter_product(s, &t, l));
        }
        for c in powers.maximal() {
            pending.push(set_product(s, &t, c));
        }
        let c = idempotent_closure(s, &t, omega);
        if c.count_ones(..) >= 2 && powers.insert(c.clone()).is_some() {
            for m in family.maximal() {
                pending.push(set_product(s, m, &c));
            }
        }
        pending.push(c);
    }
    (family, false)
}

/// A pair `{t₁, t₂} ∈ S†` with `t₁ ∈ F₁` and `t₂ ∈ F₂`, with the
/// shortlex-least words mapped to each element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub left: usize,
    pub right: usize,
    pub left_word: Word,
    pub right_word: Word,
}

/// Outcome of a separability test with the data behind it.
#[derive(Clone, Debug)]
pub struct SeparationReport {
    pub separable: bool,
    pub alphabet: Alphabet,
    /// States of the product automaton whose transition semigroup is used.
    pub product_states: usize,
    pub semigroup: FiniteSemigroup,
    pub omega: usize,
    pub family: SubsetFamily,
    /// False when saturation stopped at the first violating set, in which
    /// case `family` is only part of `S†`.
    pub complete: bool,
    pub left_accepting: FixedBitSet,
    pub right_accepting: FixedBitSet,
    pub violation: Option<Violation>,
}

impl SeparationReport {
    /// Maximal non-singleton members of `S†`, each element named by its
    /// witness word.
    pub fn non_singleton_words(&self) -> Vec<Vec<String>> {
        self.family
            .non_singleton()
            .into_iter()
            .map(|m| {
                m.into_iter()
                    .map(|e| self.alphabet.format_word(self.semigroup.witness(e)))
                    .collect()
            })
            .collect()
    }
}

/// Searches `family` for a pair `{t₁, t₂}` with `t₁ ∈ f1`, `t₂ ∈ f2`,
/// returning the lexicographically least one.
pub fn find_violation(
    family: &SubsetFamily,
    f1: &FixedBitSet,
    f2: &FixedBitSet,
) -> Option<(usize, usize)> {
    family
        .maximal()
        .filter_map(|m| {
            let t1 = m.intersection(f1).next()?;
            let t2 = m.intersection(f2).next()?;
            Some((t1, t2))
        })
        .min()
}

pub fn fo_separable(d1: &Dfa, d2: &Dfa) -> Result<SeparationReport> {
    fo_separable_within(d1, d2, DEFAULT_MAX_STATES)
}

/// Decides whether some first-order definable language contains `L(d1)`
/// and is disjoint from `L(d2)`.
///
/// Both inputs are minimised, then the transition semigroup of their
/// synchronous product recognises both languages. `max_states` bounds the
/// product and the semigroup.
pub fn fo_separable_within(d1: &Dfa, d2: &Dfa, max_states: usize) -> Result<SeparationReport> {
    if d1.alphabet() != d2.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let (m1, m2) = (d1.minimize(), d2.minimize());
    let (product, pairs) = m1.synchronous_within(&m2, max_states)?;
    let semigroup = FiniteSemigroup::of_dfa_within(&product, max_states)?;
    let init = product.initial();
    let left_accepting = semigroup.elements_where(|f| m1.is_accepting(pairs[f.apply(init)].0));
    let right_accepting = semigroup.elements_where(|f| m2.is_accepting(pairs[f.apply(init)].1));
    let omega = semigroup.idempotent_power();
    let violates = |m: &FixedBitSet| {
        m.intersection(&left_accepting).next().is_some()
            && m.intersection(&right_accepting).next().is_some()
    };
    let (family, stopped) = saturate_until(&semigroup, violates);
    let violation =
        find_violation(&family, &left_accepting, &right_accepting).map(|(left, right)| Violation {
            left,
            right,
            left_word: semigroup.witness(left).to_vec(),
            right_word: semigroup.witness(right).to_vec(),
        });
    Ok(SeparationReport {
        separable: violation.is_none(),
        alphabet: d1.alphabet().clone(),
        product_states: product.num_states(),
        semigroup,
        omega,
        family,
        complete: !stopped,
        left_accepting,
        right_accepting,
        violation,
    })
}

/// `L(d)` is first-order definable iff its syntactic semigroup is aperiodic.
pub fn fo_definable(d: &Dfa) -> bool {
    crate::semigroup::syntactic_semigroup(d).is_aperiodic()
}
