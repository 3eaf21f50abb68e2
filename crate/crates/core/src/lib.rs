//! Decision procedures for first-order definability and separability of
//! regular languages of nonempty finite words, and their application to
//! Craig interpolant existence for LTL over finite timelines.
//!
//! The pipeline, bottom-up:
//!
//! * [`automata`]: NFA/DFA algebra (subset construction, Moore
//!   minimisation, products, projection).
//! * [`semigroup`]: transition semigroups, idempotent powers, aperiodicity.
//! * [`separation`]: saturation of element sets under subset, product and
//!   idempotent-power closure, and the separability test built on it.
//! * [`ltl`], [`semantics`], [`ltl2nfa`]: finite-trace LTL syntax, direct
//!   evaluation, and compilation to automata.
//! * [`iep`]: interpolant existence by reduction to separability.

pub mod alphabet;
pub mod automata;
pub mod error;
pub mod format;
pub mod iep;
pub mod ltl;
pub mod ltl2nfa;
pub mod regex;
pub mod semantics;
pub mod semigroup;
pub mod separation;

pub use alphabet::{Alphabet, Word};
pub use automata::{Dfa, Nfa, ProductMode, DEFAULT_MAX_STATES};
pub use error::{Error, Result};
pub use iep::{entails, interpolant_exists, language_of, IepVerdict};
pub use ltl::{parse_ltl, LtlFormula};
pub use ltl2nfa::{ltl_to_nfa, ltl_to_nfa_over};
pub use regex::{parse_regex, Regex};
pub use semantics::{evaluate, TemporalModel};
pub use semigroup::FiniteSemigroup;
pub use separation::{fo_definable, fo_separable, saturate, SeparationReport, SubsetFamily};
