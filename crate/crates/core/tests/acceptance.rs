//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{counter_free_by_cycles, load_dfa, random_dfa, random_dfa_ab, random_formula};
use fosep::automata::all_words;
use fosep::semigroup::syntactic_semigroup;
use fosep::{
    entails, evaluate, fo_definable, fo_separable, interpolant_exists, language_of, ltl_to_nfa,
    parse_ltl, parse_regex, saturate, Alphabet, Dfa, FiniteSemigroup, LtlFormula, Nfa,
    ProductMode, TemporalModel,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const PHI_61: &str = "p & G((p & X true) <-> X !p) & F(!p & !X true)";
const PSI_61: &str = "q & G((q & X true) <-> X !q) -> F(!q & !X true)";

fn ab() -> Alphabet {
    Alphabet::new(["a", "b"]).unwrap()
}

fn regex_dfa(text: &str, alphabet: &Alphabet) -> Dfa {
    let r = parse_regex(text, alphabet).unwrap();
    Nfa::from_regex(&r, alphabet).unwrap().determinize()
}

/// Minimal DFA of the even-length words over a one-letter alphabet.
fn even_length(letter: &str) -> Dfa {
    let a = Alphabet::new([letter]).unwrap();
    Dfa::new(a, 0, vec![false, false, true], vec![1, 2, 1]).unwrap()
}

fn words_of(s: &FiniteSemigroup, sets: &[Vec<usize>], alphabet: &Alphabet) -> BTreeSet<BTreeSet<String>> {
    sets.iter()
        .map(|set| set.iter().map(|&e| alphabet.format_word(s.witness(e))).collect())
        .collect()
}

fn word_set(words: &[&[&str]]) -> BTreeSet<BTreeSet<String>> {
    words
        .iter()
        .map(|w| w.iter().map(|s| s.to_string()).collect())
        .collect()
}

fn check_example_51(s: &FiniteSemigroup) {
    let a = ab();
    let witnesses: BTreeSet<String> = (0..s.len()).map(|e| a.format_word(s.witness(e))).collect();
    let expected: BTreeSet<String> = ["a", "b", "aa", "ab", "ba", "aba", "bab", "abab", "baba"]
        .into_iter()
        .map(String::from)
        .collect();
    assert_eq!(s.len(), 9);
    assert_eq!(witnesses, expected);
    assert_eq!(s.idempotent_power(), 2);
    let family = saturate(s);
    let pairs = words_of(s, &family.non_singleton(), &a);
    assert_eq!(
        pairs,
        word_set(&[&["abab", "ab"], &["a", "aba"], &["baba", "ba"], &["b", "bab"]])
    );
}

fn criterion_1() -> String {
    let a = ab();
    let fixture = load_dfa("example51_l1.json");
    check_example_51(&FiniteSemigroup::of_dfa(&fixture));
    let l1 = load_dfa("example51_l1.json");
    let l2 = load_dfa("example51_l2.json");
    let report = fo_separable(&l1, &l2).unwrap();
    assert!(report.separable);
    check_example_51(&report.semigroup);

    let r1 = regex_dfa("(abab)+", &a);
    let r2 = regex_dfa("(baba)+", &a);
    assert!(r1.equivalent(&l1) && r2.equivalent(&l2));
    let report = fo_separable(&r1, &r2).unwrap();
    assert!(report.separable);
    check_example_51(&report.semigroup);
    "9 elements, omega 2, four maximal pairs, separable".into()
}

/// Smallest `n` with `s^n · s^n = s^n` for every element, by trying
/// exponents in turn with repeated multiplication.
fn least_idempotent_exponent(s: &FiniteSemigroup) -> usize {
    (1..)
        .find(|&n| {
            (0..s.len()).all(|x| {
                let p = (1..n).fold(x, |acc, _| s.mul(acc, x));
                s.mul(p, p) == p
            })
        })
        .unwrap()
}

fn criterion_2() -> String {
    let a = ab();
    let l1 = load_dfa("example52_l1.json");
    let l2 = load_dfa("example52_l2.json");
    let bba = a.parse_word("bba").unwrap();
    let bbab = a.parse_word("bbab").unwrap();

    let s = FiniteSemigroup::of_dfa(&l1);
    let omega = s.idempotent_power();
    let (x, y) = (s.element_of(&bba), s.element_of(&bbab));
    assert_ne!(x, y);
    assert!(saturate(&s).contains_elements(&[x, y]));
    // F1 and F2 as recognised through the shared DFA.
    let f1: Vec<usize> = s.accepting_elements(&l1).ones().collect();
    let f2: Vec<usize> = s.accepting_elements(&l2).ones().collect();
    assert_eq!(f1, vec![x]);
    let b = s.element_of(&[1]);
    assert_eq!(f2.iter().copied().collect::<BTreeSet<_>>(), BTreeSet::from([b, y]));

    for (d1, d2) in [
        (l1.clone(), l2.clone()),
        (
            regex_dfa("(b(aa)*b(aa)*a)+", &a),
            regex_dfa("(b(aa)*b(aa)*a)*b(aa)*", &a),
        ),
    ] {
        assert!(d1.equivalent(&l1) && d2.equivalent(&l2));
        let report = fo_separable(&d1, &d2).unwrap();
        assert!(!report.separable);
        let s = &report.semigroup;
        assert_eq!(report.omega, s.idempotent_power());
        assert!(saturate(s).contains_elements(&[s.element_of(&bba), s.element_of(&bbab)]));
        let v = report.violation.expect("violating pair");
        assert!(d1.accepts(&v.left_word) && l1.accepts(&v.left_word));
        assert!(d2.accepts(&v.right_word) && l2.accepts(&v.right_word));
        assert!(report.family.contains_elements(&[v.left, v.right]));
    }
    assert_eq!(
        omega,
        3,
        "every other check passed; the least exponent making every element \
         idempotent is {} by exhaustive search, as δ_a has period {} and δ_b index {}",
        least_idempotent_exponent(&s),
        s.power_cycle(s.element_of(&[0])).period,
        s.power_cycle(s.element_of(&[1])).index,
    );
    "omega 3, {bba, bbab} saturated, not separable with checked witnesses".into()
}

fn criterion_3() -> String {
    let phi = parse_ltl(PHI_61).unwrap();
    let psi = parse_ltl(PSI_61).unwrap();
    assert!(entails(&phi, &psi).unwrap());
    let v = interpolant_exists(&phi, &psi).unwrap();
    assert!(v.rho.is_empty());
    assert!(v.entails);
    assert!(!v.exists);
    let lang = language_of(&phi, &[] as &[&str]).unwrap();
    assert_eq!(lang, even_length("{}").minimize());
    "entails, no interpolant, L_phi is even length".into()
}

fn criterion_4() -> String {
    assert!(!fo_definable(&even_length("a")));
    assert!(fo_definable(&regex_dfa("(ab)+", &ab())));
    "parity not definable, (ab)+ definable".into()
}

fn criterion_5() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut definable = 0;
    for i in 0..500 {
        let d = random_dfa(&mut rng, 6, 2);
        let by_semigroup = fo_definable(&d);
        let by_cycles = counter_free_by_cycles(&d.minimize());
        let by_separation = fo_separable(&d, &d.complement()).unwrap().separable;
        assert!(
            by_semigroup == by_cycles && by_cycles == by_separation,
            "instance {i}: definable {by_semigroup}, counter-free {by_cycles}, \
             separable from complement {by_separation}\n{d:?}"
        );
        definable += by_semigroup as usize;
    }
    format!("500 DFAs agree ({definable} definable)")
}

fn criterion_6() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checked = 0usize;
    for _ in 0..300 {
        let f = random_formula(&mut rng, 3, &["p", "q"]);
        let nfa = ltl_to_nfa(&f).unwrap();
        let a = nfa.alphabet().clone();
        for w in all_words(a.len(), 6) {
            let model = TemporalModel::from_word(&a, &w).unwrap();
            assert_eq!(
                nfa.accepts(&w),
                evaluate(&model, 0, &f).unwrap(),
                "{f} on {}",
                a.format_word(&w)
            );
            checked += 1;
        }
    }
    format!("300 formulas, {checked} word checks agree")
}

fn criterion_7() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut symmetric, mut overlap, mut empty, mut aperiodic, mut periodic, mut definable) =
        (0, 0, 0, 0, 0, 0);
    let mut rounds = 0;
    while [symmetric, overlap, empty, aperiodic, periodic, definable]
        .iter()
        .any(|&c| c < 100)
    {
        rounds += 1;
        assert!(rounds < 100_000, "instance generation stalled");
        let d1 = random_dfa_ab(&mut rng, 5);
        let d2 = random_dfa_ab(&mut rng, 5);

        let forward = fo_separable(&d1, &d2).unwrap().separable;
        let backward = fo_separable(&d2, &d1).unwrap().separable;
        assert_eq!(forward, backward, "symmetry\n{d1:?}\n{d2:?}");
        symmetric += 1;

        let meet = d1.product(&d2, ProductMode::Intersection).unwrap();
        if !meet.is_empty() {
            assert!(!forward, "overlapping languages separated\n{d1:?}\n{d2:?}");
            overlap += 1;
        } else if fo_definable(&d1) {
            assert!(forward, "definable language not separated from disjoint one");
            definable += 1;
        }

        let none = d2.with_accepting([]);
        assert!(fo_separable(&d1, &none).unwrap().separable);
        empty += 1;

        let s = syntactic_semigroup(&d1);
        let singletons_only = saturate(&s).non_singleton().is_empty();
        assert_eq!(s.is_aperiodic(), singletons_only, "{d1:?}");
        if s.is_aperiodic() {
            aperiodic += 1;
        } else {
            periodic += 1;
        }
    }
    format!(
        "symmetry {symmetric}, overlap {overlap}, empty {empty}, \
         aperiodic {aperiodic}, periodic {periodic}, definable-disjoint {definable}"
    )
}

fn criterion_8() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut exists = 0;
    for _ in 0..200 {
        let phi = random_formula(&mut rng, 3, &["p", "q"]);
        let psi = random_formula(&mut rng, 3, &["q", "r"]);
        let v = interpolant_exists(&phi, &psi).unwrap();
        assert_eq!(v.entails, entails(&phi, &psi).unwrap(), "{phi} / {psi}");
        assert!(!v.exists || v.entails, "{phi} / {psi}");
        exists += v.exists as usize;
    }

    // Vocabulary containment: ψ = φ ∨ χ mentions every variable of φ.
    let mut contained = 0;
    while contained < 50 {
        let phi = random_formula(&mut rng, 2, &["p"]);
        let chi = random_formula(&mut rng, 2, &["p", "q"]);
        let psi = phi.clone().or(chi);
        if !phi.vars().is_subset(&psi.vars()) {
            continue;
        }
        assert!(interpolant_exists(&phi, &psi).unwrap().exists, "{phi} / {psi}");
        contained += 1;
    }
    for (phi, psi) in [
        ("p", "p"),
        ("p & F p", "p & F p"),
        ("p & q", "p"),
        ("p U q", "F q | F p"),
        ("G p", "p"),
        ("X p", "F p"),
    ] {
        let (phi, psi) = (parse_ltl(phi).unwrap(), parse_ltl(psi).unwrap());
        assert!(phi.vars().is_subset(&psi.vars()) || psi.vars().is_subset(&phi.vars()));
        if phi.vars().is_subset(&psi.vars()) {
            assert!(interpolant_exists(&phi, &psi).unwrap().exists, "{phi} / {psi}");
        }
    }

    // Unsatisfiable premises.
    let unsat: Vec<LtlFormula> = ["p & !p", "X false", "F q & !F true", "G p & F !p", "false U q"]
        .iter()
        .map(|s| parse_ltl(s).unwrap())
        .collect();
    let mut premises = 0;
    for phi in &unsat {
        assert!(ltl_to_nfa(phi).unwrap().is_empty(), "{phi}");
        for _ in 0..20 {
            let psi = random_formula(&mut rng, 3, &["p", "q", "r"]);
            assert!(interpolant_exists(phi, &psi).unwrap().exists, "{phi} / {psi}");
            premises += 1;
        }
    }
    format!("200 random pairs ({exists} with interpolant), {contained} containment, {premises} unsatisfiable-premise")
}

thread_local!(static LOCATION: std::cell::RefCell<String> = const { std::cell::RefCell::new(String::new()) });

fn main() {
    let criteria: [(&str, fn() -> String, Duration); 8] = [
        ("example 5.1 regression", criterion_1, Duration::from_secs(1)),
        ("example 5.2 regression", criterion_2, Duration::from_secs(1)),
        ("example 6.1 regression", criterion_3, Duration::from_secs(5)),
        ("parity non-definability", criterion_4, Duration::from_secs(1)),
        ("oracle triangle", criterion_5, Duration::from_secs(60)),
        ("ltl compilation soundness", criterion_6, Duration::from_secs(120)),
        ("separation sanity properties", criterion_7, Duration::MAX),
        ("iep invariants", criterion_8, Duration::from_secs(180)),
    ];
    // Failures are reported on the criterion line instead.
    std::panic::set_hook(Box::new(|info| {
        if let Some(loc) = info.location() {
            LOCATION.with(|l| *l.borrow_mut() = format!("{}:{}", loc.file(), loc.line()));
        }
    }));
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(detail) if elapsed <= limit => (true, detail),
            Ok(detail) => (false, format!("{detail}; over the {limit:?} limit")),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                (false, format!("{msg} [{}]", LOCATION.with(|l| l.borrow().clone())))
            }
        };
        failed += !ok as usize;
        println!(
            "criterion {}: {} {name} ({:.2?}): {detail}",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            elapsed
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
