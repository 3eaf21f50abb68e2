//! Craig interpolant existence for LTL over finite timelines.
//!
//! With `ρ` the variables shared by `φ` and `ψ`, an interpolant over `ρ`
//! exists iff the `ρ`-projections `L_φ` (models of `∃q̄ φ`) and `L_¬ψ`
//! (models of `∃r̄ ¬ψ`) are separable by a first-order definable language.
//!
//! `L_¬ψ` is built from the negated formula and then projected. It is not
//! the complement of `L_ψ`: projection is existential and does not commute
//! with negation.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::alphabet::Alphabet;
use crate::automata::{Dfa, ProductMode, DEFAULT_MAX_STATES};
use crate::error::Result;
use crate::ltl::LtlFormula;
use crate::ltl2nfa::ltl_to_nfa_within;
use crate::separation::{fo_separable_within, SeparationReport};

/// Minimal DFA over `2^ρ` for the `ρ`-models of `∃(vars(φ) \ ρ) φ`.
pub fn language_of<S: AsRef<str>>(formula: &LtlFormula, rho: &[S]) -> Result<Dfa> {
    language_of_within(formula, rho, DEFAULT_MAX_STATES)
}

pub fn language_of_within<S: AsRef<str>>(
    formula: &LtlFormula,
    rho: &[S],
    max_states: usize,
) -> Result<Dfa> {
    let mut universe = formula.vars();
    universe.extend(rho.iter().map(|v| v.as_ref().to_string()));
    let universe: Vec<String> = universe.into_iter().collect();
    let nfa = ltl_to_nfa_within(formula, &universe, max_states)?;
    Ok(nfa.project(rho)?.determinize_within(max_states)?.minimize())
}

/// `φ ⊨ ψ`: every model of `φ` at position 0 satisfies `ψ` there.
pub fn entails(phi: &LtlFormula, psi: &LtlFormula) -> Result<bool> {
    entails_within(phi, psi, DEFAULT_MAX_STATES)
}

pub fn entails_within(phi: &LtlFormula, psi: &LtlFormula, max_states: usize) -> Result<bool> {
    let universe: Vec<String> = phi.vars().union(&psi.vars()).cloned().collect();
    let lhs = ltl_to_nfa_within(phi, &universe, max_states)?.determinize_within(max_states)?;
    let rhs = ltl_to_nfa_within(psi, &universe, max_states)?.determinize_within(max_states)?;
    Ok(lhs
        .product_within(&rhs, ProductMode::Difference, max_states)?
        .is_empty())
}

/// Result of an interpolant-existence check.
#[derive(Clone, Debug)]
pub struct IepVerdict {
    pub exists: bool,
    pub entails: bool,
    /// Shared variables.
    pub rho: Vec<String>,
    /// Minimal DFA of `L_φ`.
    pub left: Dfa,
    /// Minimal DFA of `L_¬ψ`.
    pub right: Dfa,
    pub separation: SeparationReport,
}

/// Serializable summary of an [`IepVerdict`].
#[derive(Clone, Debug, Serialize)]
pub struct IepSummary {
    pub exists: bool,
    pub entails: bool,
    pub rho: Vec<String>,
    pub left_dfa_states: usize,
    pub right_dfa_states: usize,
    pub product_states: usize,
    pub semigroup_size: usize,
    pub omega: usize,
    pub violation: Option<(String, String)>,
}

impl IepVerdict {
    pub fn alphabet(&self) -> &Alphabet {
        self.left.alphabet()
    }

    pub fn summary(&self) -> IepSummary {
        let sep = &self.separation;
        IepSummary {
            exists: self.exists,
            entails: self.entails,
            rho: self.rho.clone(),
            left_dfa_states: self.left.num_states(),
            right_dfa_states: self.right.num_states(),
            product_states: sep.product_states,
            semigroup_size: sep.semigroup.len(),
            omega: sep.omega,
            violation: sep.violation.as_ref().map(|v| {
                (
                    sep.alphabet.format_word(&v.left_word),
                    sep.alphabet.format_word(&v.right_word),
                )
            }),
        }
    }
}

pub fn interpolant_exists(phi: &LtlFormula, psi: &LtlFormula) -> Result<IepVerdict> {
    interpolant_exists_within(phi, psi, DEFAULT_MAX_STATES)
}

/// Decides whether an LTL formula over the shared variables sits between
/// `φ` and `ψ` under entailment.
pub fn interpolant_exists_within(
    phi: &LtlFormula,
    psi: &LtlFormula,
    max_states: usize,
) -> Result<IepVerdict> {
    let rho: Vec<String> = phi
        .vars()
        .intersection(&psi.vars())
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let left = language_of_within(phi, &rho, max_states)?;
    let right = language_of_within(&psi.clone().not(), &rho, max_states)?;
    let separation = fo_separable_within(&left, &right, max_states)?;
    // L_φ ∩ L_¬ψ = ∅ exactly when φ ⊨ ψ: models of φ and ¬ψ agreeing on ρ
    // can be merged since the remaining variables are disjoint.
    let entails = left
        .product_within(&right, ProductMode::Intersection, max_states)?
        .is_empty();
    debug_assert!(!separation.separable || entails);
    Ok(IepVerdict {
        exists: separation.separable,
        entails,
        rho,
        left,
        right,
        separation,
    })
}
