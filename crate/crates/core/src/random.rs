//! Seeded generators for random automata, descriptions and grammars.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::regular::Nfa;
use crate::subregular::SltDescription;
use crate::symbol::{Alphabet, Symbol, Word};
use crate::treectrl::{Cfg, CfgRule};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// First `n` letters of `a, b, c, …`.
pub fn letters(n: usize) -> Alphabet {
    Alphabet::from_names((0..n).map(|i| ((b'a' + i as u8) as char).to_string()))
}

fn subset<R: Rng>(rng: &mut R, words: Vec<Word>) -> Vec<Word> {
    words.into_iter().filter(|_| rng.gen_bool(0.5)).collect()
}

/// Uniformly random `⟨B, I, E, F⟩` over `alphabet` with window width `k`.
pub fn random_slt<R: Rng>(rng: &mut R, k: usize, alphabet: &Alphabet) -> SltDescription {
    let wk = alphabet.words_of_len(k);
    let short: Vec<Word> = alphabet.words_up_to(k.saturating_sub(1));
    let b = subset(rng, wk.clone());
    let i = subset(rng, wk.clone());
    let e = subset(rng, wk);
    let f = if k == 0 { Vec::new() } else { subset(rng, short) };
    SltDescription::new(k, alphabet.clone(), b, i, e, f).expect("words drawn from the alphabet")
}

/// Random NFA with `1..=max_states` states, random starts and finals and
/// occasional λ-moves.
pub fn random_nfa<R: Rng>(rng: &mut R, max_states: usize, alphabet: &Alphabet) -> Nfa {
    let n = rng.gen_range(1..=max_states);
    let mut nfa = Nfa::new(alphabet.clone());
    for _ in 0..n {
        nfa.add_state();
    }
    nfa.add_start(0);
    for q in 1..n {
        if rng.gen_bool(0.2) {
            nfa.add_start(q);
        }
    }
    for q in 0..n {
        nfa.set_final(q, rng.gen_bool(0.4));
        for a in 0..alphabet.len() {
            for r in 0..n {
                if rng.gen_bool((1.5 / n as f64).min(1.0)) {
                    nfa.add_transition(q, Some(a), r);
                }
            }
        }
        if rng.gen_bool(0.1) {
            let r = rng.gen_range(0..n);
            nfa.add_transition(q, None, r);
        }
    }
    nfa
}

/// Up to `max_words` nonempty words of length at most `max_len`.
pub fn random_finite_set<R: Rng>(rng: &mut R, max_words: usize, max_len: usize, alphabet: &Alphabet) -> Vec<Word> {
    let count = rng.gen_range(1..=max_words);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            Word::new((0..len).map(|_| *alphabet.symbols().choose(rng).expect("nonempty alphabet")).collect())
        })
        .collect()
}

/// A small non-erasing core over `{S, A}` and `{a, b}` together with an
/// optional control word; half of the controls are exactly `S`.
pub fn random_core_with_word<R: Rng>(rng: &mut R) -> (Cfg, Option<Word>) {
    let vars = vec![Symbol::new("S"), Symbol::new("A")];
    let terms = letters(2);
    let pool: Vec<Symbol> = vars.iter().chain(terms.symbols()).copied().collect();
    let mut rules = Vec::new();
    for _ in 0..rng.gen_range(2..=5) {
        let lhs = *vars.choose(rng).expect("two vars");
        let len = rng.gen_range(1..=3);
        let body: Vec<Symbol> = (0..len).map(|_| *pool.choose(rng).expect("nonempty pool")).collect();
        rules.push(CfgRule::new(lhs, body));
    }
    let core = Cfg::new(vars, terms, rules, Symbol::new("S")).expect("symbols drawn from the core");
    let word = match rng.gen_range(0..4) {
        0 => None,
        1 => {
            let len = rng.gen_range(1..=3);
            Some(Word::new((0..len).map(|_| *pool.choose(rng).expect("nonempty pool")).collect()))
        }
        _ => Some(Word::parse("S")),
    };
    (core, word)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_output() {
        let a = letters(2);
        let x = random_slt(&mut rng(7), 1, &a);
        let y = random_slt(&mut rng(7), 1, &a);
        assert_eq!(x, y);
        let n1 = random_nfa(&mut rng(3), 6, &a).to_min_dfa().unwrap();
        let n2 = random_nfa(&mut rng(3), 6, &a).to_min_dfa().unwrap();
        assert_eq!(n1, n2);
    }

    #[test]
    fn finite_sets_respect_bounds() {
        let a = letters(2);
        let mut r = rng(11);
        for _ in 0..50 {
            let ws = random_finite_set(&mut r, 3, 3, &a);
            assert!((1..=3).contains(&ws.len()));
            assert!(ws.iter().all(|w| (1..=3).contains(&w.len())));
        }
    }
}
