//! `fosep`: command-line access to the automata, semigroup, separation and
//! interpolation procedures.
//!
//! Exit codes: 0 for success or a positive verdict, 1 for a negative
//! verdict, 2 for usage and input errors.

use std::io::Write;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fosep::format::{read_automaton_file, write_dfa, write_nfa};
use fosep::iep::interpolant_exists_within;
use fosep::ltl2nfa::ltl_to_nfa_within;
use fosep::separation::fo_separable_within;
use fosep::{
    evaluate, parse_ltl, parse_regex, saturate, Alphabet, Dfa, Error, FiniteSemigroup, Nfa, ProductMode,
    SeparationReport, TemporalModel,
};
use serde_json::{json, Value};

const SCHEMA: &str = "fosep/v1";

#[derive(Parser)]
#[command(name = "fosep", version, about = "First-order separability and LTL interpolant existence")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Machine-readable report.
    #[arg(long, global = true)]
    json: bool,
    /// Print the semigroup, ω and saturation details.
    #[arg(long, global = true)]
    explain: bool,
    /// Bound on automaton, product and semigroup sizes.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_states: usize,
}

/// Automaton operands: files first, then regular expressions.
#[derive(Args)]
struct Inputs {
    /// Automaton file (repeatable).
    #[arg(long = "aut")]
    auts: Vec<String>,
    /// Regular expression over --alphabet (repeatable).
    #[arg(long = "regex")]
    regexes: Vec<String>,
    /// Comma-separated letters for --regex, e.g. `a,b` or `{},{p}`.
    #[arg(long)]
    alphabet: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Intersection,
    Union,
    Difference,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a formula on a model such as `{p};{};{p,q}`.
    Eval {
        formula: String,
        model: String,
        #[arg(long, default_value_t = 0)]
        pos: usize,
    },
    /// Compile a formula to an NFA over 2^vars.
    Ltl2nfa {
        formula: String,
        /// Variable universe; defaults to the variables of the formula.
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
    },
    /// Subset construction.
    Det(Inputs),
    /// Minimal DFA.
    Min(Inputs),
    /// Complement within the nonempty words.
    Comp(Inputs),
    /// Product of two automata.
    Prod {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_enum, default_value = "intersection")]
        mode: Mode,
    },
    /// Project a 2^vars automaton onto the kept variables.
    Proj {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_delimiter = ',', required = true)]
        keep: Vec<String>,
    },
    /// Transition semigroup of a DFA.
    Sgrp(Inputs),
    /// First-order definability of a language.
    Defin(Inputs),
    /// First-order separability of two languages.
    Sep(Inputs),
    /// Existence of a Craig interpolant for two formulas.
    Iep { phi: String, psi: String },
}

/// Splits on commas outside braces, so `{},{p,q}` has two letters.
fn split_letters(csv: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut current = String::new();
    for c in csv.chars() {
        match c {
            '{' => depth += 1,
            '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(current.trim().to_string());
                current.clear();
                continue;
            }
            _ => {}
        }
        current.push(c);
    }
    out.push(current.trim().to_string());
    out
}

impl Inputs {
    fn load(&self) -> Result<Vec<Nfa>> {
        let mut out = Vec::new();
        for path in &self.auts {
            let aut = read_automaton_file(path).with_context(|| format!("reading {path}"))?;
            out.push(aut.to_nfa());
        }
        if !self.regexes.is_empty() {
            let csv = self
                .alphabet
                .as_deref()
                .context("--regex needs --alphabet")?;
            let alphabet = Alphabet::new(split_letters(csv))?;
            for text in &self.regexes {
                let r = parse_regex(text, &alphabet).with_context(|| format!("in regex `{text}`"))?;
                out.push(Nfa::from_regex(&r, &alphabet)?);
            }
        }
        Ok(out)
    }

    fn exactly<const N: usize>(&self) -> Result<[Nfa; N]> {
        let all = self.load()?;
        let count = all.len();
        all.try_into()
            .map_err(|_| anyhow::anyhow!("expected {N} automata, got {count}"))
    }
}

fn determinize(nfa: &Nfa, max: usize) -> Result<Dfa> {
    Ok(nfa.determinize_within(max)?)
}

struct Outcome {
    code: u8,
    text: String,
    /// `None` for automaton documents, which are JSON already.
    json: Option<Value>,
}

impl Outcome {
    fn verdict(positive: bool, text: String, json: Value) -> Self {
        Outcome {
            code: if positive { 0 } else { 1 },
            text,
            json: Some(json),
        }
    }

    fn document(doc: String) -> Self {
        Outcome {
            code: 0,
            text: doc.trim_end().to_string(),
            json: None,
        }
    }
}

fn with_schema(mut value: Value) -> Value {
    if let Value::Object(map) = &mut value {
        map.insert("schema".into(), SCHEMA.into());
    }
    value
}

fn words(alphabet: &Alphabet, w: &[usize]) -> String {
    alphabet.format_word(w)
}

fn separation_json(r: &SeparationReport) -> Value {
    let s = &r.semigroup;
    let name = |e: usize| words(&r.alphabet, s.witness(e));
    json!({
        "separable": r.separable,
        "product_states": r.product_states,
        "semigroup_size": s.len(),
        "omega": r.omega,
        "saturation_complete": r.complete,
        "maximal_non_singletons": r.non_singleton_words(),
        "left_accepting": r.left_accepting.ones().map(name).collect::<Vec<_>>(),
        "right_accepting": r.right_accepting.ones().map(name).collect::<Vec<_>>(),
        "violation": r.violation.as_ref().map(|v| json!({
            "left": name(v.left),
            "right": name(v.right),
            "left_word": words(&r.alphabet, &v.left_word),
            "right_word": words(&r.alphabet, &v.right_word),
        })),
    })
}

fn separation_text(r: &SeparationReport, explain: bool) -> String {
    let mut out = String::from(if r.separable { "separable" } else { "not separable" });
    if let Some(v) = &r.violation {
        out.push_str(&format!(
            "\nviolating pair: {} (in L1) and {} (in L2)",
            words(&r.alphabet, &v.left_word),
            words(&r.alphabet, &v.right_word)
        ));
    }
    if explain {
        let s = &r.semigroup;
        let name = |e: usize| format!("δ_{}", words(&r.alphabet, s.witness(e)));
        out.push_str(&format!("\nproduct states: {}", r.product_states));
        out.push_str(&format!("\n|S| = {}", s.len()));
        out.push_str(&format!("\nω(S) = {}", r.omega));
        let list = |ones: Vec<usize>| ones.into_iter().map(name).collect::<Vec<_>>().join(", ");
        out.push_str(&format!("\nF1 = {{{}}}", list(r.left_accepting.ones().collect())));
        out.push_str(&format!("\nF2 = {{{}}}", list(r.right_accepting.ones().collect())));
        // The report's family may stop at the first violation.
        let members = if r.complete {
            r.family.non_singleton()
        } else {
            saturate(s).non_singleton()
        };
        out.push_str(&format!(
            "\nmaximal non-singleton members of S†: {}",
            members.len()
        ));
        for m in members {
            let names: Vec<String> = m.into_iter().map(name).collect();
            out.push_str(&format!("\n  {{{}}}", names.join(", ")));
        }
    }
    out
}

fn semigroup_report(s: &FiniteSemigroup, alphabet: &Alphabet) -> (String, Value) {
    let omega = s.idempotent_power();
    let aperiodic = s.is_aperiodic();
    let mut text = format!("|S| = {}\nω(S) = {omega}\naperiodic: {aperiodic}", s.len());
    let mut elements = Vec::new();
    for e in 0..s.len() {
        let w = words(alphabet, s.witness(e));
        let c = s.power_cycle(e);
        let idem = s.is_idempotent(e);
        text.push_str(&format!(
            "\n  δ_{w}: index {}, period {}{}",
            c.index,
            c.period,
            if idem { ", idempotent" } else { "" }
        ));
        elements.push(json!({"witness": w, "index": c.index, "period": c.period, "idempotent": idem}));
    }
    let json = json!({"size": s.len(), "omega": omega, "aperiodic": aperiodic, "elements": elements});
    (text, json)
}

fn run(cli: &Cli) -> Result<Outcome> {
    let max = cli.max_states;
    Ok(match &cli.command {
        Command::Eval {
            formula,
            model,
            pos,
        } => {
            let f = parse_ltl(formula)?;
            let m = TemporalModel::parse(model, &f.vars())?;
            if *pos >= m.len() {
                return Err(Error::PositionOutOfRange {
                    pos: *pos,
                    len: m.len(),
                }
                .into());
            }
            let holds = evaluate(&m, *pos, &f)?;
            Outcome::verdict(
                holds,
                holds.to_string(),
                json!({"holds": holds, "formula": f.to_string(), "position": pos}),
            )
        }
        Command::Ltl2nfa { formula, vars } => {
            let f = parse_ltl(formula)?;
            let universe: Vec<String> = match vars {
                Some(v) => v.clone(),
                None => f.vars().into_iter().collect(),
            };
            Outcome::document(write_nfa(&ltl_to_nfa_within(&f, &universe, max)?))
        }
        Command::Det(inputs) => {
            let [a] = inputs.exactly()?;
            Outcome::document(write_dfa(&determinize(&a, max)?))
        }
        Command::Min(inputs) => {
            let [a] = inputs.exactly()?;
            Outcome::document(write_dfa(&determinize(&a, max)?.minimize()))
        }
        Command::Comp(inputs) => {
            let [a] = inputs.exactly()?;
            Outcome::document(write_dfa(&determinize(&a, max)?.complement()))
        }
        Command::Prod { inputs, mode } => {
            let [a, b] = inputs.exactly()?;
            let mode = match mode {
                Mode::Intersection => ProductMode::Intersection,
                Mode::Union => ProductMode::Union,
                Mode::Difference => ProductMode::Difference,
            };
            let p = determinize(&a, max)?.product_within(&determinize(&b, max)?, mode, max)?;
            Outcome::document(write_dfa(&p))
        }
        Command::Proj { inputs, keep } => {
            let [a] = inputs.exactly()?;
            Outcome::document(write_nfa(&a.project(keep)?))
        }
        Command::Sgrp(inputs) => {
            let [a] = inputs.exactly()?;
            let d = determinize(&a, max)?;
            let s = FiniteSemigroup::of_dfa_within(&d, max)?;
            let (text, json) = semigroup_report(&s, d.alphabet());
            Outcome {
                code: 0,
                text,
                json: Some(json),
            }
        }
        Command::Defin(inputs) => {
            let [a] = inputs.exactly()?;
            let d = determinize(&a, max)?.minimize();
            let s = FiniteSemigroup::of_dfa_within(&d, max)?;
            let definable = s.is_aperiodic();
            let mut text = if definable { "definable" } else { "not definable" }.to_string();
            let (detail, semigroup) = semigroup_report(&s, d.alphabet());
            if cli.explain {
                text.push_str(&format!("\nsyntactic semigroup:\n{detail}"));
            }
            Outcome::verdict(
                definable,
                text,
                json!({"definable": definable, "minimal_states": d.num_states(), "semigroup": semigroup}),
            )
        }
        Command::Sep(inputs) => {
            let [a, b] = inputs.exactly()?;
            let (d1, d2) = (determinize(&a, max)?, determinize(&b, max)?);
            let r = fo_separable_within(&d1, &d2, max)?;
            Outcome::verdict(r.separable, separation_text(&r, cli.explain), separation_json(&r))
        }
        Command::Iep { phi, psi } => {
            let (phi, psi) = (parse_ltl(phi)?, parse_ltl(psi)?);
            let v = interpolant_exists_within(&phi, &psi, max)?;
            let mut text = format!(
                "{}\nentails: {}\nshared variables: {{{}}}",
                if v.exists { "interpolant exists" } else { "no interpolant" },
                v.entails,
                v.rho.join(",")
            );
            if cli.explain {
                text.push_str(&format!(
                    "\nL_φ: {} states\nL_¬ψ: {} states\n{}",
                    v.left.num_states(),
                    v.right.num_states(),
                    separation_text(&v.separation, true)
                ));
            }
            let mut json = serde_json::to_value(v.summary())?;
            json["separation"] = separation_json(&v.separation);
            Outcome::verdict(v.exists, text, json)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = match out.json {
                Some(json) if cli.json => with_schema(json).to_string(),
                _ => out.text,
            };
            // A closed pipe is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
