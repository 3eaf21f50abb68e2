//! Evaluation of LTL formulas on finite temporal models.
//!
//! A model has positions `0..=ℓ` and assigns to each position the set of
//! true variables, drawn from an explicit universe. Future operators are
//! strict: at the last position `X a`, `F a` and `a U b` are false.

use std::collections::BTreeSet;

use crate::alphabet::{parse_var_set, Alphabet};
use crate::error::{Error, Result};
use crate::ltl::LtlFormula;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemporalModel {
    universe: BTreeSet<String>,
    positions: Vec<BTreeSet<String>>,
}

impl TemporalModel {
    pub fn new(
        universe: impl IntoIterator<Item = impl Into<String>>,
        positions: Vec<BTreeSet<String>>,
    ) -> Result<Self> {
        let universe: BTreeSet<String> = universe.into_iter().map(Into::into).collect();
        if positions.is_empty() {
            return Err(Error::Malformed("a model needs at least one position".into()));
        }
        for set in &positions {
            if let Some(v) = set.iter().find(|v| !universe.contains(*v)) {
                return Err(Error::Malformed(format!("variable `{v}` outside the universe")));
            }
        }
        Ok(TemporalModel {
            universe,
            positions,
        })
    }

    /// The model a nonempty word over a variable-set alphabet describes.
    pub fn from_word(alphabet: &Alphabet, word: &[usize]) -> Result<Self> {
        let mut universe = BTreeSet::new();
        for l in 0..alphabet.len() {
            universe.extend(alphabet.letter_vars(l)?);
        }
        let positions = word
            .iter()
            .map(|&l| alphabet.letter_vars(l))
            .collect::<Result<_>>()?;
        TemporalModel::new(universe, positions)
    }

    /// Parses `{p};{};{p,q}`. The universe is every variable mentioned plus
    /// `extra`.
    pub fn parse(text: &str, extra: &BTreeSet<String>) -> Result<Self> {
        let positions: Vec<BTreeSet<String>> = text
            .split(';')
            .map(|t| parse_var_set(t.trim()))
            .collect::<Result<_>>()?;
        let mut universe = extra.clone();
        for p in &positions {
            universe.extend(p.iter().cloned());
        }
        TemporalModel::new(universe, positions)
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of the last position, `ℓ`.
    pub fn last(&self) -> usize {
        self.positions.len() - 1
    }

    pub fn universe(&self) -> &BTreeSet<String> {
        &self.universe
    }

    pub fn holds(&self, position: usize, var: &str) -> bool {
        self.positions[position].contains(var)
    }
}

/// Truth of `formula` at `position`.
///
/// Subformulas are evaluated bottom-up over all positions, last to first,
/// so the cost is linear in `|model| · |formula|`.
pub fn evaluate(model: &TemporalModel, position: usize, formula: &LtlFormula) -> Result<bool> {
    if position >= model.len() {
        return Err(Error::PositionOutOfRange {
            pos: position,
            len: model.len(),
        });
    }
    Ok(truth_table(model, &formula.expand_globally())[position])
}

/// Truth values of `formula` at every position.
pub fn truth_table(model: &TemporalModel, formula: &LtlFormula) -> Vec<bool> {
    use LtlFormula::*;
    let n = model.len();
    match formula {
        True => vec![true; n],
        Var(v) => (0..n).map(|i| model.holds(i, v)).collect(),
        Not(a) => truth_table(model, a).into_iter().map(|x| !x).collect(),
        And(a, b) => zip(truth_table(model, a), truth_table(model, b), |x, y| x && y),
        Or(a, b) => zip(truth_table(model, a), truth_table(model, b), |x, y| x || y),
        Implies(a, b) => zip(truth_table(model, a), truth_table(model, b), |x, y| !x || y),
        Iff(a, b) => zip(truth_table(model, a), truth_table(model, b), |x, y| x == y),
        Next(a) => {
            let ta = truth_table(model, a);
            (0..n).map(|i| i + 1 < n && ta[i + 1]).collect()
        }
        Eventually(a) => {
            let ta = truth_table(model, a);
            let mut out = vec![false; n];
            for i in (0..n.saturating_sub(1)).rev() {
                out[i] = ta[i + 1] || out[i + 1];
            }
            out
        }
        Until(event, interim) => {
            let te = truth_table(model, event);
            let ti = truth_table(model, interim);
            let mut out = vec![false; n];
            for i in (0..n.saturating_sub(1)).rev() {
                out[i] = te[i + 1] || (ti[i + 1] && out[i + 1]);
            }
            out
        }
        Globally(a) => {
            let ta = truth_table(model, a);
            let mut out = vec![false; n];
            let mut rest = true;
            for i in (0..n).rev() {
                rest &= ta[i];
                out[i] = rest;
            }
            out
        }
    }
}

fn zip(a: Vec<bool>, b: Vec<bool>, f: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.into_iter().zip(b).map(|(x, y)| f(x, y)).collect()
}
