mod common;

use std::collections::BTreeSet;

use common::{data, load_dfa};
use fosep::automata::all_words;
use fosep::format::{parse_automaton, write_dfa, Automaton};
use fosep::semigroup::syntactic_semigroup;
use fosep::{
    entails, evaluate, fo_definable, fo_separable, interpolant_exists, language_of, ltl_to_nfa,
    parse_ltl, parse_regex, Alphabet, Dfa, FiniteSemigroup, LtlFormula, Nfa, Regex,
    TemporalModel,
};

const PHI_61: &str = "p & G((p & X true) <-> X !p) & F(!p & !X true)";
const PSI_61: &str = "q & G((q & X true) <-> X !q) -> F(!q & !X true)";

fn ab() -> Alphabet {
    Alphabet::new(["a", "b"]).unwrap()
}

fn regex_dfa(text: &str) -> Dfa {
    let a = ab();
    Nfa::from_regex(&parse_regex(text, &a).unwrap(), &a)
        .unwrap()
        .determinize()
}

fn f(s: &str) -> LtlFormula {
    parse_ltl(s).unwrap()
}

#[test]
fn example_51_fixture_round_trips() {
    let text = std::fs::read_to_string(data("example51_l1.json")).unwrap();
    let Automaton::Dfa(d) = parse_automaton(&text).unwrap() else {
        panic!("fixture is a dfa");
    };
    assert_eq!(d.num_states(), 10);
    assert_eq!(parse_automaton(&write_dfa(&d)).unwrap(), Automaton::Dfa(d));
}

#[test]
fn example_51_regexes_match_fixtures() {
    assert_eq!(
        regex_dfa("(abab)+").minimize(),
        load_dfa("example51_l1.json").minimize()
    );
    assert_eq!(
        regex_dfa("(baba)+").minimize(),
        load_dfa("example51_l2.json").minimize()
    );
}

#[test]
fn example_51_semigroup_is_not_aperiodic() {
    let s = FiniteSemigroup::of_dfa(&load_dfa("example51_l1.json"));
    let ab = s.element_of(&[0, 1]);
    assert_eq!(s.power_cycle(ab).period, 2);
    assert!(!s.is_aperiodic());
    assert!(!fo_definable(&regex_dfa("(abab)+")));
}

#[test]
fn example_51_regex_parse() {
    let r = parse_regex("(abab)+", &ab()).unwrap();
    let letters = ["a", "b", "a", "b"].map(Regex::letter).to_vec();
    assert_eq!(r, Regex::Concat(letters).plus());
}

#[test]
fn example_52_languages() {
    let l1 = load_dfa("example52_l1.json");
    let l2 = load_dfa("example52_l2.json");
    assert!(l1.equivalent(&regex_dfa("(b(aa)*b(aa)*a)+")));
    assert!(l2.equivalent(&regex_dfa("(b(aa)*b(aa)*a)*b(aa)*")));
    let a = ab();
    for w in ["bba", "baaba", "bbabba"] {
        assert!(l1.accepts(&a.parse_word(w).unwrap()), "{w}");
    }
    for w in ["b", "baa", "bbab"] {
        assert!(l2.accepts(&a.parse_word(w).unwrap()), "{w}");
    }
}

#[test]
fn example_52_violation_is_reported_with_words() {
    let report = fo_separable(&regex_dfa("(b(aa)*b(aa)*a)+"), &regex_dfa("(b(aa)*b(aa)*a)*b(aa)*"))
        .unwrap();
    assert!(!report.separable);
    let v = report.violation.unwrap();
    assert!(report.left_accepting.contains(v.left));
    assert!(report.right_accepting.contains(v.right));
    assert_eq!(report.semigroup.element_of(&v.left_word), v.left);
    assert_eq!(report.semigroup.element_of(&v.right_word), v.right);
}

#[test]
fn example_61_formulas() {
    let phi = f(PHI_61);
    let psi = f(PSI_61);
    assert_eq!(phi.vars(), BTreeSet::from(["p".to_string()]));
    assert_eq!(psi.vars(), BTreeSet::from(["q".to_string()]));
    let p = LtlFormula::var("p");
    let tail = LtlFormula::True.next();
    let expected = p
        .clone()
        .and(p.clone().and(tail.clone()).iff(p.clone().not().next()).globally())
        .and(p.not().and(tail.not()).eventually());
    assert_eq!(phi, expected);
}

#[test]
fn example_61_evaluation() {
    let phi = f(PHI_61);
    let none = BTreeSet::new();
    let holds = |w: &str| evaluate(&TemporalModel::parse(w, &none).unwrap(), 0, &phi).unwrap();
    assert!(holds("{p};{}"));
    assert!(holds("{p};{};{p};{}"));
    assert!(!holds("{p}"));
    assert!(!holds("{p};{};{p}"));
    assert!(!holds("{p};{p}"));

    let nfa = ltl_to_nfa(&phi).unwrap();
    let a = nfa.alphabet().clone();
    // p exactly at the even positions, and an even number of positions.
    for w in all_words(a.len(), 7) {
        let even = w.len() % 2 == 0
            && w.iter().enumerate().all(|(i, &l)| (l == 1) == (i % 2 == 0));
        assert_eq!(nfa.accepts(&w), even, "{}", a.format_word(&w));
    }
}

#[test]
fn example_61_interpolant() {
    let phi = f(PHI_61);
    let psi = f(PSI_61);
    assert!(entails(&phi, &psi).unwrap());
    let v = interpolant_exists(&phi, &psi).unwrap();
    assert!(!v.exists);
    assert!(v.separation.violation.is_some());
    let even = Dfa::new(Alphabet::new(["{}"]).unwrap(), 0, vec![false, false, true], vec![1, 2, 1])
        .unwrap();
    assert!(language_of(&phi, &[] as &[&str]).unwrap().equivalent(&even));
}

#[test]
fn parity_has_a_period_two_element() {
    let even = Dfa::new(Alphabet::new(["a"]).unwrap(), 0, vec![false, false, true], vec![1, 2, 1])
        .unwrap();
    let s = syntactic_semigroup(&even);
    assert!((0..s.len()).any(|e| s.power_cycle(e).period == 2));
    assert!(!fo_definable(&even));
}

#[test]
fn trivial_semigroups() {
    let a = Alphabet::new(["a"]).unwrap();
    let all = Dfa::new(a.clone(), 0, vec![true], vec![0]).unwrap();
    let s = FiniteSemigroup::of_dfa(&all);
    assert_eq!(s.len(), 1);
    assert!(s.is_idempotent(0));
    assert_eq!(s.idempotent_power(), 1);
    assert!(fo_definable(&all));
    assert_eq!(syntactic_semigroup(&all).len(), 1);
}

#[test]
fn ab_plus_is_definable() {
    let d = regex_dfa("(ab)+");
    assert!(fo_definable(&d));
    assert!(syntactic_semigroup(&d).is_aperiodic());
}

#[test]
fn separation_trivial_cases() {
    let l = regex_dfa("(ab)+");
    assert!(!fo_separable(&l, &l).unwrap().separable);
    assert!(fo_separable(&l, &l.with_accepting([])).unwrap().separable);
    let other = Dfa::new(Alphabet::new(["x", "y"]).unwrap(), 0, vec![true], vec![0, 0]).unwrap();
    assert!(fo_separable(&l, &other).is_err());
}

#[test]
fn ltl_examples() {
    let none = BTreeSet::new();
    let single = TemporalModel::parse("{}", &none).unwrap();
    assert!(!evaluate(&single, 0, &f("X true")).unwrap());
    assert!(f("true").vars().is_empty());
    assert_eq!(f("p & (q U p)").vars().len(), 2);
    assert!(parse_ltl("p U").is_err());
    assert_eq!(f("p & F q"), LtlFormula::var("p").and(LtlFormula::var("q").eventually()));
}

#[test]
fn entailment_countermodel() {
    assert!(!entails(&f("F p"), &f("p")).unwrap());
    let model = TemporalModel::parse("{};{p}", &BTreeSet::new()).unwrap();
    assert!(evaluate(&model, 0, &f("F p")).unwrap());
    assert!(!evaluate(&model, 0, &f("p")).unwrap());
}

#[test]
fn shared_later_q_has_interpolant() {
    let v = interpolant_exists(&f("p & F q"), &f("F q | r")).unwrap();
    assert_eq!(v.rho, vec!["q"]);
    assert!(v.entails && v.exists);
    let a = v.alphabet().clone();
    // L_φ: q strictly later; L_¬ψ: q never strictly later.
    for w in all_words(a.len(), 5) {
        let later = w[1..].iter().any(|&l| l == 1);
        assert_eq!(v.left.accepts(&w), later, "{}", a.format_word(&w));
        assert_eq!(v.right.accepts(&w), !later, "{}", a.format_word(&w));
    }
    assert!(fo_definable(&v.left));
}

#[test]
fn identical_formulas_interpolate() {
    let v = interpolant_exists(&f("p & F p"), &f("p & F p")).unwrap();
    assert!(v.exists);
}
