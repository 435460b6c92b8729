use proptest::prelude::*;
use tcg::oracle::double_reversal;
use tcg::random::{letters, random_nfa, rng};
use tcg::regular::{regex_compile, CombineMode, Dfa, Nfa, Regex, RightLinearGrammar, DEFAULT_STATE_CAP};
use tcg::symbol::Word;
use tcg::witnesses::{build_witness, WitnessId};

fn nfa(seed: u64) -> Nfa {
    random_nfa(&mut rng(seed), 6, &letters(2))
}

fn walk(d: &Dfa, w: &Word) -> bool {
    let mut q = d.start();
    for &s in w.iter() {
        q = d.next(q, d.alphabet().index_of(s).unwrap());
    }
    d.is_final(q)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn minimizing_twice_changes_nothing(seed in any::<u64>()) {
        let once = nfa(seed).determinize_minimize(DEFAULT_STATE_CAP).unwrap();
        let twice = once.to_nfa().determinize_minimize(DEFAULT_STATE_CAP).unwrap();
        prop_assert_eq!(once.num_states(), twice.num_states());
        prop_assert!(once.equivalent(&twice).unwrap());
        prop_assert_eq!(once.minimize(), once.clone());
    }

    #[test]
    fn minimal_size_matches_double_reversal(seed in any::<u64>()) {
        let n = nfa(seed);
        let fast = n.to_min_dfa().unwrap();
        let slow = double_reversal(&n);
        prop_assert_eq!(fast.num_states(), slow.num_states());
        prop_assert!(fast.equivalent(&slow).unwrap());
    }

    #[test]
    fn equivalence_is_empty_symmetric_difference(a in any::<u64>(), b in any::<u64>()) {
        let x = nfa(a).to_min_dfa().unwrap();
        let y = if b % 3 == 0 { x.clone() } else { nfa(b).to_min_dfa().unwrap() };
        let left = x.combine(&y, CombineMode::Difference).unwrap();
        let right = y.combine(&x, CombineMode::Difference).unwrap();
        let sym = left.combine(&right, CombineMode::Union).unwrap();
        prop_assert_eq!(x.equivalent(&y).unwrap(), sym.is_empty());
        if let Some(w) = x.distinguishing_word(&y).unwrap() {
            prop_assert_ne!(x.accepts(&w).unwrap(), y.accepts(&w).unwrap());
        }
    }

    #[test]
    fn enumeration_grows_and_is_accepted(seed in any::<u64>(), n in 0usize..7) {
        let n_fa = nfa(seed);
        let d = n_fa.to_min_dfa().unwrap();
        let short = d.enumerate(n);
        let long = d.enumerate(n + 1);
        prop_assert!(short.iter().all(|w| long.contains(w)));
        for w in &long {
            prop_assert!(walk(&d, w));
            prop_assert!(n_fa.accepts(w).unwrap());
        }
        let all = letters(2).words_up_to(n + 1);
        prop_assert_eq!(all.iter().filter(|w| walk(&d, w)).count(), long.len());
    }

    #[test]
    fn grammar_round_trip_keeps_language(seed in any::<u64>()) {
        let d = nfa(seed).to_min_dfa().unwrap();
        let g = RightLinearGrammar::from_dfa(&d);
        prop_assert!(g.to_dfa().unwrap().equivalent(&d).unwrap());
        prop_assert!(g.to_nfa().reverse().reverse().to_min_dfa().unwrap().equivalent(&d).unwrap());
    }
}

#[test]
fn witness_languages_survive_the_conversion_chain() {
    for id in WitnessId::ALL {
        let case = build_witness(id, None).unwrap();
        let d = &case.dfa;
        let g = RightLinearGrammar::from_dfa(d);
        let back = g.to_nfa().to_min_dfa().unwrap();
        assert!(back.equivalent(d).unwrap(), "{}", case.name);
        assert_eq!(back.num_states(), d.num_states(), "{}", case.name);
    }
}

#[test]
fn regex_chain_for_small_expressions() {
    let ab = letters(2);
    for expr in ["a*b(a|b)*", "(ab|b)*a", "%eps|a", "((a|b)(a|b))*", "a*", "%empty"] {
        let d = regex_compile(expr, &ab).unwrap();
        let g = RightLinearGrammar::from_dfa(&d);
        let n = g.to_nfa();
        let back = n.to_min_dfa().unwrap();
        assert!(back.equivalent(&d).unwrap(), "{expr}");
        let r = Regex::parse(expr, &ab).unwrap();
        let printed = Regex::parse(&r.to_string(), &ab).unwrap();
        assert!(printed.compile(&ab).unwrap().equivalent(&d).unwrap(), "{expr}");
    }
}

#[test]
fn malformed_expressions_are_rejected() {
    let ab = letters(2);
    for bad in ["a(", "a|*", "c", ")"] {
        assert!(regex_compile(bad, &ab).is_err(), "{bad}");
    }
}
