//! Exact SLT_k decision through canonical window sets.
//!
//! If any quadruple describes `L` then so does the canonical one, so
//! `L ∈ SLT_k` iff the canonical description regenerates `L`.

use std::collections::BTreeSet;

use crate::regular::Dfa;
use crate::subregular::slt::{SltDescription, SltMethod};
use crate::symbol::Word;

/// Outcome of [`is_slt_k`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SltVerdict {
    /// The canonical description regenerates the language.
    Yes(SltDescription),
    /// A shortest word on which the canonical description and `L` differ.
    /// It always lies in the canonical language but not in `L`.
    No(Word),
}

impl SltVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, SltVerdict::Yes(_))
    }
}

/// All `u ∈ V^k` such that `δ(q, u) ∈ target` for some `q ∈ sources`.
fn windows(d: &Dfa, k: usize, sources: &[bool], target: &[bool]) -> BTreeSet<Word> {
    let n = d.num_states();
    let width = d.alphabet().len();
    // reach[j][q]: q reaches `target` in exactly j steps
    let mut reach = vec![target.to_vec()];
    for j in 1..=k {
        let prev = &reach[j - 1];
        let row: Vec<bool> = (0..n).map(|q| (0..width).any(|a| prev[d.next(q, a)])).collect();
        reach.push(row);
    }
    let start: Vec<usize> = (0..n).filter(|&q| sources[q]).collect();
    let mut out = BTreeSet::new();
    let mut prefix = Vec::with_capacity(k);
    fn go(
        d: &Dfa,
        set: Vec<usize>,
        left: usize,
        reach: &[Vec<bool>],
        prefix: &mut Vec<usize>,
        out: &mut BTreeSet<Word>,
    ) {
        if !set.iter().any(|&q| reach[left][q]) {
            return;
        }
        if left == 0 {
            out.insert(prefix.iter().map(|&a| d.alphabet().get(a)).collect());
            return;
        }
        for a in 0..d.alphabet().len() {
            let mut next: Vec<usize> = set.iter().map(|&q| d.next(q, a)).collect();
            next.sort_unstable();
            next.dedup();
            prefix.push(a);
            go(d, next, left - 1, reach, prefix, out);
            prefix.pop();
        }
    }
    go(d, start, k, &reach, &mut prefix, &mut out);
    out
}

/// Canonical candidate ⟨B, I, E, F⟩ for `L(d)` and width `k`:
/// `B`/`E` are the k-prefixes/k-suffixes of words of length `≥ k`, `I` the
/// windows with at least one letter on each side, `F = L ∩ V^{<k}`.
pub fn canonical_slt(d: &Dfa, k: usize) -> SltDescription {
    let n = d.num_states();
    let width = d.alphabet().len();
    let reach = d.reachable();
    let live = d.live();
    let finals: Vec<bool> = (0..n).map(|q| d.is_final(q)).collect();
    let mut only_start = vec![false; n];
    only_start[d.start()] = true;
    // states entered after at least one letter
    let mut after_one = vec![false; n];
    for q in (0..n).filter(|&q| reach[q]) {
        for a in 0..width {
            after_one[d.next(q, a)] = true;
        }
    }
    // states from which a final state is reachable by a non-empty word
    let live_after_one: Vec<bool> = (0..n).map(|q| (0..width).any(|a| live[d.next(q, a)])).collect();

    let b = windows(d, k, &only_start, &live);
    let e = windows(d, k, &reach, &finals);
    let i = windows(d, k, &after_one, &live_after_one);
    let f: Vec<Word> = d.enumerate(k.saturating_sub(1));
    SltDescription::new(k, d.alphabet().clone(), b, i, e, f.into_iter().collect())
        .expect("canonical sets have the right widths")
}

pub fn is_slt_k(d: &Dfa, k: usize) -> SltVerdict {
    let canon = canonical_slt(d, k);
    let regenerated = canon.to_dfa(SltMethod::Window).expect("window method accepts every width");
    match regenerated.distinguishing_word(d).expect("same alphabet") {
        None => SltVerdict::Yes(canon),
        Some(w) => SltVerdict::No(w),
    }
}

/// Smallest `k ≤ k_max` with `L(d) ∈ SLT_k`, with its certificate.
pub fn is_slt_upto(d: &Dfa, k_max: usize) -> Option<(usize, SltDescription)> {
    (1..=k_max).find_map(|k| match is_slt_k(d, k) {
        SltVerdict::Yes(desc) => Some((k, desc)),
        SltVerdict::No(_) => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regular::regex_compile;
    use crate::symbol::Alphabet;

    fn set(xs: &[&str]) -> BTreeSet<Word> {
        xs.iter().map(|x| Word::chars(x)).collect()
    }

    #[test]
    fn single_word_aa() {
        let a = Alphabet::from_names(["a"]);
        let c = canonical_slt(&regex_compile("aa", &a).unwrap(), 2);
        assert_eq!(c.b(), &set(&["aa"]));
        assert_eq!(c.e(), &set(&["aa"]));
        assert!(c.i().is_empty() && c.f().is_empty());
    }

    #[test]
    fn l1_sets_and_verdicts() {
        let ab = Alphabet::from_names(["a", "b"]);
        let l1 = regex_compile("a*b(a|b)*", &ab).unwrap();
        let c = canonical_slt(&l1, 1);
        assert_eq!(c.b(), &set(&["a", "b"]));
        assert_eq!(c.i(), &set(&["a", "b"]));
        assert_eq!(c.e(), &set(&["a", "b"]));
        assert!(c.f().is_empty());
        for k in 1..=4 {
            assert!(!is_slt_k(&l1, k).holds(), "k = {k}");
        }
    }

    #[test]
    fn empty_language() {
        let ab = Alphabet::from_names(["a", "b"]);
        for k in 1..=3 {
            let c = canonical_slt(&Dfa::empty(ab.clone()), k);
            assert!(c.b().is_empty() && c.i().is_empty() && c.e().is_empty() && c.f().is_empty());
        }
    }

    #[test]
    fn single_letter_counterexample() {
        let a = Alphabet::from_names(["a"]);
        let l6 = regex_compile("a", &a).unwrap();
        assert_eq!(is_slt_k(&l6, 1), SltVerdict::No(Word::chars("aa")));
        assert_eq!(is_slt_upto(&l6, 4).map(|(k, _)| k), Some(2));
    }

    #[test]
    fn powers_of_a() {
        let a = Alphabet::from_names(["a"]);
        let l4 = regex_compile("aaa", &a).unwrap();
        assert!(!is_slt_k(&l4, 3).holds());
        assert!(is_slt_k(&l4, 4).holds());
        let l8 = regex_compile("aaa(aaa)*", &a).unwrap();
        assert!(is_slt_upto(&l8, 6).is_none());
        assert_eq!(is_slt_upto(&Dfa::universal(a), 3).map(|(k, _)| k), Some(1));
    }
}
