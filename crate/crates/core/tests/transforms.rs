use std::collections::BTreeSet;

use proptest::prelude::*;
use tcg::fixtures;
use tcg::random::{letters, random_finite_set, rng};
use tcg::regular::Regex;
use tcg::subregular::{is_slt_k, SltMethod};
use tcg::symbol::{Alphabet, Symbol, Word};
use tcg::transforms::{
    control_rlg_one_var, kuroda_to_tc, monotone_to_kuroda, star_of_finite_union_free, KurodaGrammar, MonotoneGrammar,
};
use tcg::treectrl::{tc_enumerate, validate_tc};

fn monotone(vars: &[&str], terminals: &str, rules: &[&str]) -> MonotoneGrammar {
    MonotoneGrammar::parse_rules(
        vars.iter().map(|v| Symbol::new(v)).collect(),
        Alphabet::from_names(terminals.chars().map(String::from)),
        &rules.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        Symbol::new("S"),
    )
    .unwrap()
}

fn sources() -> Vec<MonotoneGrammar> {
    vec![
        fixtures::abc_monotone(),
        monotone(&["S"], "a", &["S -> a"]),
        monotone(&["S", "A"], "ab", &["S -> A b", "A -> a A", "A -> a"]),
        monotone(&["S", "A", "B"], "ab", &["S -> A B", "A B -> B A", "A -> a", "B -> b"]),
        monotone(&["S", "A"], "ab", &["S -> a S b", "S -> a b", "S -> A", "A -> b a"]),
        monotone(&["S", "B"], "ab", &["S -> a S B", "S -> a B", "a B -> a b", "b B -> b b"]),
        monotone(&["S"], "ab", &["S -> %eps", "S -> a b"]),
    ]
}

fn set(ws: &[Word]) -> BTreeSet<Word> {
    ws.iter().cloned().collect()
}

#[test]
fn kuroda_normal_form_preserves_language() {
    for m in sources() {
        let k = monotone_to_kuroda(&m);
        assert!(k.rules().iter().all(|r| r.rhs.len() <= 2 && r.lhs.len() <= 2), "{m:?}");
        assert_eq!(set(&k.enumerate(9).unwrap()), set(&m.enumerate(9).unwrap()));
    }
}

#[test]
fn construction_matches_source_up_to_length_twelve() {
    for m in sources() {
        let c = kuroda_to_tc(&monotone_to_kuroda(&m));
        let want = set(&m.enumerate(12).unwrap());
        for len in [0, 3, 7, 12] {
            let got = set(&tc_enumerate(&c.tc, len).words);
            let bounded: BTreeSet<Word> = want.iter().filter(|w| w.len() <= len).cloned().collect();
            assert_eq!(got, bounded, "length {len}");
        }
    }
}

#[test]
fn every_construction_is_valid_and_slt2() {
    for m in sources() {
        let c = kuroda_to_tc(&monotone_to_kuroda(&m));
        assert!(validate_tc(&c.tc).is_empty());
        assert!(is_slt_k(&c.tc.control, 2).holds());
    }
}

#[test]
fn control_representations_coincide() {
    for m in sources() {
        let c = kuroda_to_tc(&monotone_to_kuroda(&m));
        let dfa = &c.tc.control;
        let quad = c.control_desc.to_dfa(SltMethod::Window).unwrap();
        let one = control_rlg_one_var(&c);
        assert_eq!(one.var_count(), 1);
        let one = one.to_dfa().unwrap();
        assert!(dfa.equivalent(&quad).unwrap());
        assert!(dfa.equivalent(&one).unwrap());
        assert!(quad.equivalent(&one).unwrap());
        let uf = star_of_finite_union_free(&c.control_units());
        assert!(uf.is_union_free());
        assert!(uf.compile(dfa.alphabet()).unwrap().equivalent(dfa).unwrap());
    }
}

#[test]
fn rules_of_kuroda_source_are_accepted_as_is() {
    let k = fixtures::abc_kuroda();
    let again = KurodaGrammar::new(k.vars().to_vec(), k.terminals().clone(), k.rules().to_vec(), k.start()).unwrap();
    assert_eq!(again.rules(), k.rules());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn union_free_star_matches_plain_star(seed in any::<u64>(), width in 1usize..=3) {
        let alphabet = letters(width);
        let words: Vec<Word> =
            random_finite_set(&mut rng(seed), 3, 3, &alphabet).into_iter().filter(|w| !w.is_empty()).collect();
        let uf = star_of_finite_union_free(&words);
        prop_assert_eq!(uf.count_unions(), 0);
        let plain = Regex::star(Regex::union_all(words.iter().map(|w| Regex::word(w))));
        prop_assert!(uf.compile(&alphabet).unwrap().equivalent(&plain.compile(&alphabet).unwrap()).unwrap());
    }
}
