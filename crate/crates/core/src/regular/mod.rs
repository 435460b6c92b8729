//! Regular-language infrastructure: automata, right-linear grammars,
//! regular expressions, conversions, boolean operations, minimization,
//! equivalence and enumeration.
//!
//! Every comparison goes through the canonical minimal DFA produced by
//! [`Dfa::minimize`].

pub mod dfa;
pub mod nfa;
pub mod regex;
pub mod rlg;

pub use dfa::{CombineMode, Dfa};
pub use nfa::{Nfa, DEFAULT_STATE_CAP};
pub use regex::{regex_compile, Regex};
pub use rlg::{RightLinearGrammar, RlgRule};

use crate::error::Result;
use crate::symbol::{Alphabet, Word};

/// Anything that denotes a regular language.
pub trait RegularLanguage {
    fn min_dfa(&self) -> Result<Dfa>;
}

impl RegularLanguage for Dfa {
    fn min_dfa(&self) -> Result<Dfa> {
        Ok(self.minimize())
    }
}

impl RegularLanguage for Nfa {
    fn min_dfa(&self) -> Result<Dfa> {
        self.to_min_dfa()
    }
}

impl RegularLanguage for RightLinearGrammar {
    fn min_dfa(&self) -> Result<Dfa> {
        self.to_dfa()
    }
}

impl RegularLanguage for (&Regex, &Alphabet) {
    fn min_dfa(&self) -> Result<Dfa> {
        self.0.compile(self.1)
    }
}

/// State(L): number of states of the minimal complete DFA, sink included.
pub fn state_complexity<L: RegularLanguage + ?Sized>(language: &L) -> Result<usize> {
    Ok(language.min_dfa()?.num_states())
}

pub fn rlg_to_nfa(g: &RightLinearGrammar) -> Nfa {
    g.to_nfa()
}

pub fn dfa_to_rlg(d: &Dfa) -> RightLinearGrammar {
    RightLinearGrammar::from_dfa(d)
}

pub fn determinize_minimize(n: &Nfa, cap: usize) -> Result<Dfa> {
    n.determinize_minimize(cap)
}

pub fn enumerate_dfa(d: &Dfa, max_len: usize) -> Vec<Word> {
    d.enumerate(max_len)
}

/// DFA of `{y : xy ∈ L for some x}`.
pub fn suffix_language(d: &Dfa) -> Dfa {
    let mut nfa = d.to_nfa();
    let reach = d.reachable();
    for (q, r) in reach.iter().enumerate() {
        if *r {
            nfa.add_start(q);
        }
    }
    nfa.to_min_dfa().expect("suffix automaton stays within the subset bound")
}

/// `xy ∈ L` implies `y ∈ L`.
pub fn is_suffix_closed(d: &Dfa) -> bool {
    suffix_language(d).is_subset_of(d).expect("same alphabet")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suffix_closure() {
        let a = Alphabet::from_names(["a"]);
        assert!(is_suffix_closed(&regex_compile("a*", &a).unwrap()));
        assert!(is_suffix_closed(&Dfa::empty(a)));
        let ab = Alphabet::from_names(["a", "b"]);
        let l7 = regex_compile("ab*a|a", &ab).unwrap();
        assert!(!is_suffix_closed(&l7));
        assert!(suffix_language(&l7).accepts(&Word::empty()).unwrap());
    }

    #[test]
    fn suffix_language_of_empty_is_empty() {
        let a = Alphabet::from_names(["a"]);
        assert!(suffix_language(&Dfa::empty(a)).is_empty());
    }

    #[test]
    fn state_complexity_of_all_carriers() {
        let ab = Alphabet::from_names(["a", "b"]);
        let r = Regex::parse("a*b(a|b)*", &ab).unwrap();
        let d = r.compile(&ab).unwrap();
        assert_eq!(state_complexity(&(&r, &ab)).unwrap(), 2);
        assert_eq!(state_complexity(&d).unwrap(), 2);
        assert_eq!(state_complexity(&d.to_nfa()).unwrap(), 2);
        assert_eq!(state_complexity(&dfa_to_rlg(&d)).unwrap(), 2);
        assert_eq!(state_complexity(&Dfa::universal(ab)).unwrap(), 1);
    }
}
