//! Reference grammars used by the witness reports, the CLI and the tests.

use crate::regular::{regex_compile, Dfa};
use crate::symbol::{Alphabet, Symbol, Word};
use crate::transforms::{monotone_to_kuroda, KurodaGrammar, MonotoneGrammar};
use crate::treectrl::{Cfg, TcGrammar};

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// `({S}, {a}, {S → SS, S → a}, S, {S}*)`, generating `a^(2^n)`.
pub fn doubling() -> TcGrammar {
    let core = Cfg::parse_rules(
        vec![Symbol::new("S")],
        Alphabet::from_names(["a"]),
        &strings(&["S -> S S", "S -> a"]),
        Symbol::new("S"),
    )
    .expect("fixture");
    let control = regex_compile("S*", &core.symbols()).expect("fixture");
    TcGrammar::new(core, control)
}

/// Linear core with control `{S, aAbBcC}`, generating `a^n b^n c^n`, `n ≥ 2`.
pub fn triple() -> TcGrammar {
    let core = Cfg::parse_rules(
        ["S", "A", "B", "C"].map(Symbol::new).to_vec(),
        Alphabet::from_names(["a", "b", "c"]),
        &strings(&["S -> a A b B c C", "A -> a A", "B -> b B", "C -> c C", "A -> a", "B -> b", "C -> c"]),
        Symbol::new("S"),
    )
    .expect("fixture");
    let control = Dfa::from_words(core.symbols(), &[Word::parse("S"), Word::parse("a A b B c C")]).expect("fixture");
    TcGrammar::new(core, control)
}

/// Monotone grammar for `{a^n b^n c^n : n ≥ 1}`.
pub fn abc_monotone() -> MonotoneGrammar {
    MonotoneGrammar::parse_rules(
        ["S", "B", "C"].map(Symbol::new).to_vec(),
        Alphabet::from_names(["a", "b", "c"]),
        &strings(&["S -> a S B C", "S -> a B C", "C B -> B C", "a B -> a b", "b B -> b b", "b C -> b c", "c C -> c c"]),
        Symbol::new("S"),
    )
    .expect("fixture")
}

pub fn abc_kuroda() -> KurodaGrammar {
    monotone_to_kuroda(&abc_monotone())
}
