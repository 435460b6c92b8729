//! Slow, independent reference procedures used to cross-check the fast
//! algorithms.

use std::collections::BTreeSet;

use crate::regular::{Dfa, Nfa};
use crate::subregular::SltDescription;
use crate::symbol::{Alphabet, Word};

/// Minimal DFA by double reversal: `det(rev(det(rev(n))))`, then trimmed
/// of unreachable states and completed with a sink.
pub fn double_reversal(n: &Nfa) -> Dfa {
    let once = subset_construction(&n.reverse());
    subset_construction(&once.to_nfa().reverse())
}

/// Plain subset construction over reachable subsets; the empty subset is
/// the sink.
fn subset_construction(n: &Nfa) -> Dfa {
    let width = n.alphabet().len();
    let closure = |set: &mut BTreeSet<usize>| {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &(letter, to) in n.transitions(q) {
                if letter.is_none() && set.insert(to) {
                    stack.push(to);
                }
            }
        }
    };
    let mut start: BTreeSet<usize> = n.starts().iter().copied().collect();
    closure(&mut start);
    let mut states = vec![start];
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let mut row = Vec::with_capacity(width);
        for a in 0..width {
            let mut next: BTreeSet<usize> = BTreeSet::new();
            for &q in &states[i] {
                for &(letter, to) in n.transitions(q) {
                    if letter == Some(a) {
                        next.insert(to);
                    }
                }
            }
            closure(&mut next);
            let j = match states.iter().position(|s| *s == next) {
                Some(j) => j,
                None => {
                    states.push(next);
                    states.len() - 1
                }
            };
            row.push(j);
        }
        rows.push(row);
        i += 1;
    }
    let finals: Vec<usize> = (0..states.len()).filter(|&i| states[i].iter().any(|&q| n.is_final(q))).collect();
    Dfa::from_rows(n.alphabet().clone(), 0, &finals, &rows).expect("rows built over the alphabet")
}

/// Every complete DFA with `1..=max_states` states over `alphabet`, start 0.
pub fn all_dfas(max_states: usize, alphabet: &Alphabet) -> Vec<Dfa> {
    let width = alphabet.len();
    let mut out = Vec::new();
    for n in 1..=max_states {
        let cells = n * width;
        let total = n.pow(cells as u32);
        for code in 0..total {
            let mut c = code;
            let rows: Vec<Vec<usize>> = (0..n)
                .map(|_| {
                    (0..width)
                        .map(|_| {
                            let t = c % n;
                            c /= n;
                            t
                        })
                        .collect()
                })
                .collect();
            for mask in 0..(1usize << n) {
                let finals: Vec<usize> = (0..n).filter(|q| mask >> q & 1 == 1).collect();
                out.push(Dfa::from_rows(alphabet.clone(), 0, &finals, &rows).expect("in range"));
            }
        }
    }
    out
}

fn subsets(words: &[Word]) -> Vec<Vec<Word>> {
    (0..1usize << words.len())
        .map(|m| words.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, w)| w.clone()).collect())
        .collect()
}

/// Exhaustive search over all quadruples `⟨B, I, E, F⟩` of width `k`,
/// comparing memberships on every word up to a length at which any two
/// distinct languages of the sizes involved must differ.
pub fn slt_k_by_quadruple_search(d: &Dfa, k: usize) -> bool {
    let alphabet = d.alphabet();
    let v = alphabet.len();
    // states of the window automaton: every word of length ≤ k, plus a sink
    let window_states: usize = (0..=k).map(|j| v.pow(j as u32)).sum::<usize>() + 1;
    let horizon = d.num_states() + window_states;
    let words = alphabet.words_up_to(horizon);
    let expected: Vec<bool> = words.iter().map(|w| d.accepts(w).expect("same alphabet")).collect();

    let wk = alphabet.words_of_len(k);
    let short = alphabet.words_up_to(k.saturating_sub(1));
    // words shorter than k are decided by F alone
    let f: Vec<Word> = short.iter().filter(|w| d.accepts(w).expect("same alphabet")).cloned().collect();
    let choices = subsets(&wk);
    for b in &choices {
        for i in &choices {
            for e in &choices {
                let desc = SltDescription::new(k, alphabet.clone(), b.clone(), i.clone(), e.clone(), f.clone())
                    .expect("quadruple over the alphabet");
                let agrees = words.iter().zip(&expected).all(|(w, &x)| desc.member(w).expect("same alphabet") == x);
                if agrees {
                    return true;
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{letters, random_nfa, rng};
    use crate::regular::regex_compile;

    #[test]
    fn double_reversal_is_minimal() {
        let ab = letters(2);
        let d = regex_compile("(a|b)*a(a|b)", &ab).unwrap();
        let m = double_reversal(&d.to_nfa());
        assert_eq!(m.num_states(), d.num_states());
        assert!(m.equivalent(&d).unwrap());
        let mut r = rng(5);
        for _ in 0..20 {
            let n = random_nfa(&mut r, 5, &ab);
            assert_eq!(double_reversal(&n).num_states(), n.to_min_dfa().unwrap().num_states());
        }
    }

    #[test]
    fn dfa_count() {
        // n^(2n) transition tables times 2^n final sets
        assert_eq!(all_dfas(2, &letters(2)).len(), 2 + 16 * 4);
    }

    #[test]
    fn brute_force_on_known_languages() {
        let a = letters(1);
        assert!(slt_k_by_quadruple_search(&regex_compile("a", &a).unwrap(), 2));
        assert!(!slt_k_by_quadruple_search(&regex_compile("a", &a).unwrap(), 1));
        assert!(!slt_k_by_quadruple_search(&regex_compile("(aa)*", &a).unwrap(), 2));
    }
}
