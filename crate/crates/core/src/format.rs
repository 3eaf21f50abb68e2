//! JSON automaton documents.
//!
//! ```json
//! {
//!   "kind": "dfa",
//!   "alphabet": ["a", "b"],
//!   "states": 3,
//!   "initial": [0],
//!   "accepting": [2],
//!   "transitions": [[0, "a", 1], [1, "b", 2]]
//! }
//! ```
//!
//! States are `0..states`. A `dfa` document has a single initial state and
//! at most one transition per state and letter; missing transitions go to
//! a fresh non-accepting sink.

use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::automata::{Dfa, Nfa};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Nfa,
    Dfa,
}

#[derive(Debug, Serialize, Deserialize)]
struct Document {
    kind: Kind,
    alphabet: Vec<String>,
    states: usize,
    initial: Vec<usize>,
    accepting: Vec<usize>,
    transitions: Vec<(usize, String, usize)>,
}

/// An automaton as read from a document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Automaton {
    Nfa(Nfa),
    Dfa(Dfa),
}

impl Automaton {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Automaton::Nfa(n) => n.alphabet(),
            Automaton::Dfa(d) => d.alphabet(),
        }
    }

    pub fn to_nfa(&self) -> Nfa {
        match self {
            Automaton::Nfa(n) => n.clone(),
            Automaton::Dfa(d) => d.to_nfa(),
        }
    }

    /// Determinizes NFAs; DFAs are returned as they are.
    pub fn to_dfa(&self) -> Dfa {
        match self {
            Automaton::Nfa(n) => n.determinize(),
            Automaton::Dfa(d) => d.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            Automaton::Nfa(n) => write_nfa(n),
            Automaton::Dfa(d) => write_dfa(d),
        }
    }
}

pub fn parse_automaton(text: &str) -> Result<Automaton> {
    let doc: Document = serde_json::from_str(text)?;
    from_document(doc)
}

pub fn read_automaton(reader: impl Read) -> Result<Automaton> {
    let doc: Document = serde_json::from_reader(reader)?;
    from_document(doc)
}

pub fn read_automaton_file(path: impl AsRef<Path>) -> Result<Automaton> {
    read_automaton(std::io::BufReader::new(std::fs::File::open(path)?))
}

fn from_document(doc: Document) -> Result<Automaton> {
    let alphabet = Alphabet::new(doc.alphabet)?;
    let transitions = doc
        .transitions
        .iter()
        .map(|(s, l, t)| Ok((*s, alphabet.letter(l)?, *t)))
        .collect::<Result<Vec<_>>>()?;
    match doc.kind {
        Kind::Nfa => Ok(Automaton::Nfa(Nfa::new(
            alphabet,
            doc.states,
            doc.initial,
            doc.accepting,
            transitions,
        )?)),
        Kind::Dfa => {
            let [initial] = doc.initial[..] else {
                return Err(Error::Malformed(
                    "a dfa needs exactly one initial state".into(),
                ));
            };
            if initial >= doc.states {
                return Err(Error::Malformed(format!("initial state {initial} out of range")));
            }
            Ok(Automaton::Dfa(Dfa::from_transitions(
                alphabet,
                doc.states,
                initial,
                doc.accepting,
                transitions,
            )?))
        }
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

fn render(doc: &Document) -> String {
    let ids = |v: &[usize]| {
        v.iter().map(usize::to_string).collect::<Vec<_>>().join(", ")
    };
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"kind\": {},\n", json(&doc.kind)));
    out.push_str(&format!("  \"alphabet\": {},\n", json(&doc.alphabet)));
    out.push_str(&format!("  \"states\": {},\n", doc.states));
    out.push_str(&format!("  \"initial\": [{}],\n", ids(&doc.initial)));
    out.push_str(&format!("  \"accepting\": [{}],\n", ids(&doc.accepting)));
    out.push_str("  \"transitions\": [");
    for (i, (s, l, t)) in doc.transitions.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!("\n    [{s}, {}, {t}]", json(l)));
    }
    if !doc.transitions.is_empty() {
        out.push_str("\n  ");
    }
    out.push_str("]\n}\n");
    out
}

pub fn write_nfa(nfa: &Nfa) -> String {
    let a = nfa.alphabet();
    render(&Document {
        kind: Kind::Nfa,
        alphabet: a.names().to_vec(),
        states: nfa.num_states(),
        initial: nfa.initial().iter().copied().collect(),
        accepting: nfa.accepting().iter().copied().collect(),
        transitions: nfa
            .transitions()
            .map(|(s, l, t)| (s, a.name(l).to_string(), t))
            .collect(),
    })
}

pub fn write_dfa(dfa: &Dfa) -> String {
    let a = dfa.alphabet();
    let k = a.len();
    render(&Document {
        kind: Kind::Dfa,
        alphabet: a.names().to_vec(),
        states: dfa.num_states(),
        initial: vec![dfa.initial()],
        accepting: dfa.accepting_states().collect(),
        transitions: (0..dfa.num_states())
            .flat_map(|s| (0..k).map(move |l| (s, l)))
            .map(|(s, l)| (s, a.name(l).to_string(), dfa.next(s, l)))
            .collect(),
    })
}
