use proptest::prelude::*;
use tcg::random::{letters, random_nfa, random_slt, rng};
use tcg::regular::{Dfa, Regex, RightLinearGrammar, RlgRule};
use tcg::subregular::{
    canonical_slt, is_slt_k, search_rlg, slt1_to_rlg, slt_member, slt_to_dfa, SearchBudget, SltDescription, SltMethod,
    SltVerdict,
};
use tcg::symbol::{Alphabet, Symbol, Word};
use tcg::witnesses::{build_witness, WitnessId};

fn fixture_descriptions() -> Vec<SltDescription> {
    vec![
        SltDescription::from_chars(1, "abc", &["a", "b"], &["b", "c"], &["a", "c"], &[]).unwrap(),
        SltDescription::from_chars(1, "ab", &["a"], &["a", "b"], &["b"], &[""]).unwrap(),
        SltDescription::from_chars(2, "ab", &["ab"], &["ba", "ab"], &["ab"], &["", "a"]).unwrap(),
        SltDescription::from_chars(3, "ab", &["aab", "abb"], &["aba", "bab", "abb"], &["bab", "abb"], &["b"]).unwrap(),
        SltDescription::from_chars(2, "a", &["aa"], &[], &["aa"], &[]).unwrap(),
    ]
}

/// `F ∪ (B ∩ E) ∪ B I* E` for `k = 1`.
fn k1_regex(d: &SltDescription) -> Regex {
    let lits = |s: &std::collections::BTreeSet<Word>| Regex::union_all(s.iter().map(|w| Regex::word(w)));
    let both: Vec<Regex> = d.b().intersection(d.e()).map(|w| Regex::word(w)).collect();
    Regex::union_all([
        lits(d.f()),
        Regex::union_all(both),
        Regex::concat_all([lits(d.b()), Regex::star(lits(d.i())), lits(d.e())]),
    ])
}

fn random_dfa(seed: u64) -> Dfa {
    random_nfa(&mut rng(seed), 4, &letters(2)).to_min_dfa().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn five_state_agrees_with_window(seed in any::<u64>(), width in 1usize..=4) {
        let d = random_slt(&mut rng(seed), 1, &letters(width));
        let five = slt_to_dfa(&d, SltMethod::FiveState).unwrap();
        let window = slt_to_dfa(&d, SltMethod::Window).unwrap();
        prop_assert!(five.num_states() <= 5);
        prop_assert!(five.equivalent(&window).unwrap());
    }

    #[test]
    fn two_variable_grammar_generates_the_formula(seed in any::<u64>(), width in 1usize..=4) {
        let d = random_slt(&mut rng(seed), 1, &letters(width));
        let g = slt1_to_rlg(&d).unwrap();
        prop_assert_eq!(g.var_count(), 2);
        let direct = k1_regex(&d).compile(d.alphabet()).unwrap();
        prop_assert!(g.to_dfa().unwrap().equivalent(&direct).unwrap());
    }

    #[test]
    fn membership_agrees_with_window_automaton(seed in any::<u64>(), k in 1usize..=3) {
        let d = random_slt(&mut rng(seed), k, &letters(2));
        let window = slt_to_dfa(&d, SltMethod::Window).unwrap();
        for w in d.alphabet().words_up_to(k + 4) {
            prop_assert_eq!(slt_member(&d, &w).unwrap(), window.accepts(&w).unwrap());
        }
    }

    #[test]
    fn positive_verdicts_are_sound(seed in any::<u64>(), k in 1usize..=3) {
        let d = random_dfa(seed);
        if let SltVerdict::Yes(desc) = is_slt_k(&d, k) {
            prop_assert!(slt_to_dfa(&desc, SltMethod::Window).unwrap().equivalent(&d).unwrap());
            let canon = canonical_slt(&d, k);
            prop_assert!(slt_to_dfa(&canon, SltMethod::Window).unwrap().equivalent(&d).unwrap());
        }
    }

    #[test]
    fn negative_verdicts_carry_counterexamples(seed in any::<u64>(), k in 1usize..=3) {
        let d = random_dfa(seed);
        if let SltVerdict::No(w) = is_slt_k(&d, k) {
            let canon = slt_to_dfa(&canonical_slt(&d, k), SltMethod::Window).unwrap();
            prop_assert_ne!(canon.accepts(&w).unwrap(), d.accepts(&w).unwrap());
        }
    }

    #[test]
    fn slt_k_is_monotone_in_k(seed in any::<u64>()) {
        let d = random_dfa(seed);
        let verdicts: Vec<bool> = (1..=5).map(|k| is_slt_k(&d, k).holds()).collect();
        for k in 1..verdicts.len() {
            prop_assert!(!verdicts[k - 1] || verdicts[k], "{:?}", verdicts);
        }
    }

    #[test]
    fn search_agrees_with_naive_enumeration(seed in any::<u64>()) {
        let d = random_nfa(&mut rng(seed), 2, &letters(2)).to_min_dfa().unwrap();
        let budget = SearchBudget::new(1, 2, 2);
        let found = search_rlg(&d, budget).unwrap().grammar;
        if let Some(g) = &found {
            prop_assert!(g.to_dfa().unwrap().equivalent(&d).unwrap());
            prop_assert!(g.var_count() <= 1 && g.prod_count() <= 2);
        }
        prop_assert_eq!(found.is_some(), naive_exists(&d, budget));
    }
}

/// Every grammar within `budget`, built rule set by rule set.
fn naive_exists(d: &Dfa, budget: SearchBudget) -> bool {
    let alphabet = d.alphabet().clone();
    let vars: Vec<Symbol> = (0..budget.max_vars).map(|i| Symbol::new(&format!("V{i}"))).collect();
    let bodies = alphabet.words_up_to(budget.max_rhs_len);
    let mut rules = Vec::new();
    for &lhs in &vars {
        for b in &bodies {
            rules.push(RlgRule::terminating(lhs, b.clone()));
            for &next in &vars {
                rules.push(RlgRule::continuing(lhs, b.clone(), next));
            }
        }
    }
    let mut chosen = Vec::new();
    subsets_exist(&rules, 0, budget.max_prods, &mut chosen, &|rs: &[RlgRule]| {
        let g = RightLinearGrammar::new(vars.clone(), alphabet.clone(), rs.to_vec(), vars[0]).unwrap();
        g.to_dfa().unwrap().equivalent(d).unwrap()
    })
}

fn subsets_exist(
    rules: &[RlgRule],
    from: usize,
    left: usize,
    chosen: &mut Vec<RlgRule>,
    test: &dyn Fn(&[RlgRule]) -> bool,
) -> bool {
    if test(chosen) {
        return true;
    }
    if left == 0 {
        return false;
    }
    for i in from..rules.len() {
        chosen.push(rules[i].clone());
        let hit = subsets_exist(rules, i + 1, left - 1, chosen, test);
        chosen.pop();
        if hit {
            return true;
        }
    }
    false
}

#[test]
fn fixture_membership_matches_window_automaton() {
    for d in fixture_descriptions() {
        let window = slt_to_dfa(&d, SltMethod::Window).unwrap();
        for w in d.alphabet().words_up_to(d.k() + 4) {
            assert_eq!(slt_member(&d, &w).unwrap(), window.accepts(&w).unwrap(), "{d} on {w}");
        }
    }
}

#[test]
fn fixture_descriptions_are_recovered_by_the_decider() {
    for d in fixture_descriptions() {
        let dfa = slt_to_dfa(&d, SltMethod::Window).unwrap();
        assert!(is_slt_k(&dfa, d.k()).holds(), "{d}");
    }
}

#[test]
fn budget_failures_are_confirmed_by_naive_enumeration() {
    let cases: [(WitnessId, Option<usize>, SearchBudget); 5] = [
        (WitnessId::L5, Some(1), SearchBudget::new(2, 1, 3)),
        (WitnessId::L5, Some(2), SearchBudget::new(2, 2, 2)),
        (WitnessId::L7, None, SearchBudget::new(1, 3, 2)),
        (WitnessId::L9, Some(1), SearchBudget::new(1, 3, 2)),
        (WitnessId::L1, None, SearchBudget::new(1, 3, 2)),
    ];
    for (id, n, budget) in cases {
        let case = build_witness(id, n).unwrap();
        let fast = search_rlg(&case.dfa, budget).unwrap();
        assert!(fast.grammar.is_none(), "{} within {budget}", case.name);
        assert!(!naive_exists(&case.dfa, budget), "{} within {budget}", case.name);
    }
}

#[test]
fn budget_successes_are_confirmed_by_naive_enumeration() {
    let cases: [(WitnessId, Option<usize>, SearchBudget); 3] = [
        (WitnessId::L6, None, SearchBudget::new(1, 1, 1)),
        (WitnessId::L8, None, SearchBudget::new(1, 2, 3)),
        (WitnessId::L4, Some(2), SearchBudget::new(1, 1, 2)),
    ];
    for (id, n, budget) in cases {
        let case = build_witness(id, n).unwrap();
        let g = search_rlg(&case.dfa, budget).unwrap().grammar.expect("grammar within budget");
        assert!(g.to_dfa().unwrap().equivalent(&case.dfa).unwrap());
        assert!(naive_exists(&case.dfa, budget), "{}", case.name);
    }
}

#[test]
fn zero_budgets_are_rejected() {
    let d = Dfa::universal(Alphabet::from_names(["a"]));
    assert!(search_rlg(&d, SearchBudget::new(0, 1, 1)).is_err());
}
