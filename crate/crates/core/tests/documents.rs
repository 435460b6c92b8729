use proptest::prelude::*;
use tcg::fixtures;
use tcg::format::{Control, Document, TcDocument, WordList};
use tcg::random::{letters, random_finite_set, random_nfa, random_slt, rng};
use tcg::regular::{Regex, RightLinearGrammar};
use tcg::transforms::kuroda_to_tc;
use tcg::witnesses::{build_witness, hierarchy_report, verify_witness, HierarchyBounds, WitnessId};

fn round_trip(d: &Document) {
    let text = d.to_toml();
    let back = Document::parse(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
    assert_eq!(&back, d, "{text}");
    assert_eq!(back.to_toml(), text);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn automata_round_trip(seed in any::<u64>()) {
        let n = random_nfa(&mut rng(seed), 5, &letters(2));
        let d = n.to_min_dfa().unwrap();
        round_trip(&Document::Nfa(n));
        round_trip(&Document::Rlg(RightLinearGrammar::from_dfa(&d)));
        round_trip(&Document::Dfa(d));
    }

    #[test]
    fn descriptions_and_word_lists_round_trip(seed in any::<u64>(), k in 1usize..=3) {
        let mut r = rng(seed);
        let ab = letters(2);
        round_trip(&Document::Slt(random_slt(&mut r, k, &ab)));
        let words = random_finite_set(&mut r, 4, 4, &ab);
        round_trip(&Document::Words(WordList { alphabet: ab, words, traces: vec![] }));
    }
}

#[test]
fn grammar_documents_round_trip() {
    round_trip(&Document::Monotone(fixtures::abc_monotone()));
    round_trip(&Document::Kuroda(fixtures::abc_kuroda()));
    let g1 = fixtures::doubling();
    round_trip(&Document::Cfg(g1.core.clone()));
    round_trip(&Document::Tc(TcDocument { core: g1.core.clone(), control: Control::Dfa(g1.control.clone()) }));
    let c = kuroda_to_tc(&fixtures::abc_kuroda());
    let tc = TcDocument { core: c.tc.core.clone(), control: Control::Slt(c.control_desc.clone()) };
    assert!(tc.grammar().unwrap().control.equivalent(&c.tc.control).unwrap());
    round_trip(&Document::Tc(tc));
    let ab = letters(2);
    round_trip(&Document::Regex { alphabet: ab.clone(), regex: Regex::parse("a*b(a|b)*", &ab).unwrap() });
}

#[test]
fn reports_round_trip() {
    let case = build_witness(WitnessId::L4, Some(2)).unwrap();
    round_trip(&Document::Witness(vec![verify_witness(&case)]));
    let h = hierarchy_report(HierarchyBounds { samples: 3, ..HierarchyBounds::default() });
    round_trip(&Document::Hierarchy(h));
    round_trip(&Document::Classification(vec![("slt".into(), "1".into()), ("finite".into(), "no".into())]));
}

#[test]
fn malformed_documents_are_rejected() {
    let bad = [
        "kind = \"dfa\"\nalphabet = [\"a\"]\nstart = 0\nfinals = []\ntransitions = [[0]]\n",
        "format = 2\nkind = \"dfa\"\nalphabet = [\"a\"]\nstart = 0\nfinals = []\ntransitions = [[0]]\n",
        "format = 1\nkind = \"automaton\"\n",
        "format = 1\nkind = \"dfa\"\nalphabet = [\"a\"]\nstart = 0\nfinals = []\ntransitions = [[1]]\n",
        "format = 1\nkind = \"dfa\"\nalphabet = [\"a\"]\nstart = 0\nfinals = []\ntransitions = [[0]]\nextra = 1\n",
        "format = 1\nkind = \"regex\"\nalphabet = [\"a\"]\nexpr = \"a(\"\n",
        "format = 1\nkind = \"slt\"\nalphabet = [\"a\"]\nk = 2\nb = [\"a\"]\ni = []\ne = []\nf = []\n",
        "not toml at all [",
    ];
    for text in bad {
        assert!(Document::parse(text).is_err(), "{text}");
    }
}
