//! Strictly locally k-testable descriptions ⟨B, I, E, F⟩.
//!
//! A word `w` of length `n` belongs to the described language iff
//!
//! * `n < k`: `w ∈ F`;
//! * `n = k`: `w ∈ B ∩ E`;
//! * `n > k`: its first window is in `B`, its last window is in `E`, and
//!   every window starting at positions `2 ..= n-k` is in `I`.
//!
//! The prefix and suffix windows are never required to lie in `I`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::regular::{Dfa, RightLinearGrammar, RlgRule};
use crate::symbol::{Alphabet, NameSupply, Symbol, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SltDescription {
    k: usize,
    alphabet: Alphabet,
    b: BTreeSet<Word>,
    i: BTreeSet<Word>,
    e: BTreeSet<Word>,
    f: BTreeSet<Word>,
}

/// How [`SltDescription::to_dfa`] builds the automaton.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SltMethod {
    /// Sliding-window automaton, minimized.
    Window,
    /// The fixed five-state automaton for `k = 1`, `F ⊆ {λ}`; not minimized.
    FiveState,
}

impl SltDescription {
    pub fn new<I: IntoIterator<Item = Word>>(
        k: usize,
        alphabet: Alphabet,
        b: I,
        i: I,
        e: I,
        f: I,
    ) -> Result<SltDescription> {
        if k == 0 {
            return Err(Error::InvalidArgument("window width k must be at least 1".into()));
        }
        let d = SltDescription {
            k,
            alphabet,
            b: b.into_iter().collect(),
            i: i.into_iter().collect(),
            e: e.into_iter().collect(),
            f: f.into_iter().collect(),
        };
        for (name, set) in [("B", &d.b), ("I", &d.i), ("E", &d.e)] {
            if let Some(w) = set.iter().find(|w| w.len() != k) {
                return Err(Error::InvalidArgument(format!("{name} member `{w}` does not have length {k}")));
            }
        }
        if let Some(w) = d.f.iter().find(|w| w.len() >= k) {
            return Err(Error::InvalidArgument(format!("F member `{w}` is not shorter than {k}")));
        }
        for set in [&d.b, &d.i, &d.e, &d.f] {
            for w in set {
                d.alphabet.indices(w)?;
            }
        }
        Ok(d)
    }

    /// Convenience for single-character letters: each set is a list of
    /// strings such as `"ab"`; `""` is λ.
    pub fn from_chars(k: usize, alphabet: &str, b: &[&str], i: &[&str], e: &[&str], f: &[&str]) -> Result<Self> {
        let alpha = Alphabet::new(Word::chars(alphabet).iter().copied());
        let conv = |xs: &[&str]| xs.iter().map(|x| Word::chars(x)).collect::<Vec<_>>();
        SltDescription::new(k, alpha, conv(b), conv(i), conv(e), conv(f))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn b(&self) -> &BTreeSet<Word> {
        &self.b
    }

    pub fn i(&self) -> &BTreeSet<Word> {
        &self.i
    }

    pub fn e(&self) -> &BTreeSet<Word> {
        &self.e
    }

    pub fn f(&self) -> &BTreeSet<Word> {
        &self.f
    }

    /// Same sets re-expressed over a larger alphabet.
    pub fn with_alphabet(&self, alphabet: Alphabet) -> Result<SltDescription> {
        SltDescription::new(self.k, alphabet, self.b.clone(), self.i.clone(), self.e.clone(), self.f.clone())
    }

    pub fn member(&self, w: &[Symbol]) -> Result<bool> {
        self.alphabet.indices(w)?;
        let (n, k) = (w.len(), self.k);
        let has = |set: &BTreeSet<Word>, s: &[Symbol]| set.contains(&Word::from(s));
        Ok(if n < k {
            has(&self.f, w)
        } else if n == k {
            has(&self.b, w) && has(&self.e, w)
        } else {
            has(&self.b, &w[..k]) && has(&self.e, &w[n - k..]) && (1..n - k).all(|p| has(&self.i, &w[p..p + k]))
        })
    }

    pub fn to_dfa(&self, method: SltMethod) -> Result<Dfa> {
        match method {
            SltMethod::Window => Ok(self.window_dfa()),
            SltMethod::FiveState => self.five_state_dfa(),
        }
    }

    fn window_dfa(&self) -> Dfa {
        #[derive(Clone, PartialEq, Eq, Hash)]
        enum St {
            // fewer than k letters read; the buffer is the whole word
            Short(Vec<usize>),
            // exactly k letters read; the buffer is the (valid) prefix window
            First(Vec<usize>),
            // more than k letters; buffer is the last window, all earlier
            // interior windows were in I
            Later(Vec<usize>),
            Dead,
        }
        let k = self.k;
        let to_idx = |set: &BTreeSet<Word>| -> BTreeSet<Vec<usize>> {
            set.iter().map(|w| self.alphabet.indices(w).expect("validated")).collect()
        };
        let (b, i, e, f) = (to_idx(&self.b), to_idx(&self.i), to_idx(&self.e), to_idx(&self.f));
        let step = |s: &St, a: usize| -> St {
            match s {
                St::Short(buf) => {
                    let mut nb = buf.clone();
                    nb.push(a);
                    if nb.len() < k {
                        St::Short(nb)
                    } else if b.contains(&nb) {
                        St::First(nb)
                    } else {
                        St::Dead
                    }
                }
                St::First(buf) => {
                    let mut nb = buf[1..].to_vec();
                    nb.push(a);
                    St::Later(nb)
                }
                St::Later(buf) => {
                    if !i.contains(buf) {
                        return St::Dead;
                    }
                    let mut nb = buf[1..].to_vec();
                    nb.push(a);
                    St::Later(nb)
                }
                St::Dead => St::Dead,
            }
        };
        let accepting = |s: &St| match s {
            St::Short(buf) => f.contains(buf),
            St::First(buf) | St::Later(buf) => e.contains(buf),
            St::Dead => false,
        };

        let width = self.alphabet.len();
        let mut ids: HashMap<St, usize> = HashMap::new();
        let mut states = vec![St::Short(Vec::new())];
        ids.insert(states[0].clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        let mut delta: Vec<usize> = Vec::new();
        while let Some(q) = queue.pop_front() {
            if delta.len() < (q + 1) * width {
                delta.resize((q + 1) * width, 0);
            }
            for a in 0..width {
                let t = step(&states[q], a);
                let id = match ids.get(&t) {
                    Some(&id) => id,
                    None => {
                        let id = states.len();
                        ids.insert(t.clone(), id);
                        states.push(t);
                        queue.push_back(id);
                        id
                    }
                };
                delta[q * width + a] = id;
            }
        }
        delta.resize(states.len() * width, 0);
        let finals = states.iter().map(accepting).collect();
        Dfa::new(self.alphabet.clone(), 0, finals, delta).expect("window automaton is complete").minimize()
    }

    /// The five-state automaton `z0 … z4` for `k = 1`:
    /// `z1`/`z2` accept, `z0` accepts iff `λ ∈ F`, `z4` is the sink.
    fn five_state_dfa(&self) -> Result<Dfa> {
        if self.k != 1 {
            return Err(Error::InvalidArgument(format!("the five-state construction needs k = 1, got k = {}", self.k)));
        }
        if self.f.iter().any(|w| !w.is_empty()) {
            return Err(Error::InvalidArgument("the five-state construction needs F ⊆ {λ}".into()));
        }
        let letter_in = |set: &BTreeSet<Word>, a: Symbol| set.contains(&Word::new(vec![a]));
        let (z0, z1, z2, z3, z4) = (0, 1, 2, 3, 4);
        let mut rows = vec![Vec::new(); 5];
        for &a in self.alphabet.symbols() {
            let (in_b, in_i, in_e) = (letter_in(&self.b, a), letter_in(&self.i, a), letter_in(&self.e, a));
            rows[z0].push(match (in_b, in_e) {
                (true, true) => z1,
                (true, false) => z3,
                (false, _) => z4,
            });
            let after_valid = match (in_e, in_i) {
                (true, true) => z1,
                (false, true) => z3,
                (true, false) => z2,
                (false, false) => z4,
            };
            rows[z1].push(after_valid);
            rows[z3].push(after_valid);
            rows[z2].push(z4);
            rows[z4].push(z4);
        }
        let mut finals = vec![z1, z2];
        if self.f.contains(&Word::empty()) {
            finals.push(z0);
        }
        Dfa::from_rows(self.alphabet.clone(), z0, &finals, &rows)
    }

    /// Two-nonterminal grammar: `S → w` for `w ∈ F ∪ (B∩E)`, `S → w S'` for
    /// `w ∈ B`, `S' → w S'` for `w ∈ I`, `S' → w` for `w ∈ E`.
    pub fn to_rlg(&self) -> Result<RightLinearGrammar> {
        if self.k != 1 {
            return Err(Error::InvalidArgument(format!("expected k = 1, got k = {}", self.k)));
        }
        let mut names = NameSupply::new(self.alphabet.symbols().iter().copied());
        let s = names.fresh("S");
        let s2 = names.fresh("S'");
        let mut rules = Vec::new();
        for w in self.f.iter().chain(self.b.intersection(&self.e)) {
            rules.push(RlgRule::terminating(s, w.clone()));
        }
        for w in &self.b {
            rules.push(RlgRule::continuing(s, w.clone(), s2));
        }
        for w in &self.i {
            rules.push(RlgRule::continuing(s2, w.clone(), s2));
        }
        for w in &self.e {
            rules.push(RlgRule::terminating(s2, w.clone()));
        }
        RightLinearGrammar::new(vec![s, s2], self.alphabet.clone(), rules, s)
    }

    fn fmt_set(&self, set: &BTreeSet<Word>) -> String {
        let mut ws: Vec<Word> = set.iter().cloned().collect();
        self.alphabet.sort_words(&mut ws);
        let parts: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
        format!("{{{}}}", parts.join(", "))
    }

    /// Set members as document strings, sorted in alphabet order.
    pub fn doc_words(&self, set: &BTreeSet<Word>) -> Vec<String> {
        let mut ws: Vec<Word> = set.iter().cloned().collect();
        self.alphabet.sort_words(&mut ws);
        ws.iter().map(|w| w.to_doc_string()).collect()
    }
}

impl fmt::Display for SltDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "⟨{}, {}, {}, {}⟩ (k = {})",
            self.fmt_set(&self.b),
            self.fmt_set(&self.i),
            self.fmt_set(&self.e),
            self.fmt_set(&self.f),
            self.k
        )
    }
}

pub fn slt_member(desc: &SltDescription, w: &[Symbol]) -> Result<bool> {
    desc.member(w)
}

pub fn slt_to_dfa(desc: &SltDescription, method: SltMethod) -> Result<Dfa> {
    desc.to_dfa(method)
}

pub fn slt1_to_rlg(desc: &SltDescription) -> Result<RightLinearGrammar> {
    desc.to_rlg()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regular::regex_compile;

    fn l2() -> SltDescription {
        SltDescription::from_chars(1, "abc", &["a", "b"], &["b", "c"], &["a", "c"], &[]).unwrap()
    }

    fn l7() -> SltDescription {
        SltDescription::from_chars(1, "ab", &["a"], &["b"], &["a"], &[]).unwrap()
    }

    #[test]
    fn membership_cases() {
        assert!(l2().member(&Word::chars("abc")).unwrap());
        assert!(!l2().member(&Word::chars("b")).unwrap());
        assert!(l2().member(&Word::chars("a")).unwrap());
        let lam = SltDescription::from_chars(1, "a", &[], &[], &[], &[""]).unwrap();
        assert!(lam.member(&Word::empty()).unwrap());
        assert!(matches!(l2().member(&Word::chars("d")), Err(Error::ForeignSymbol(_))));
    }

    #[test]
    fn interior_windows_exclude_prefix_and_suffix() {
        // a is never allowed in the interior, yet "aa" is in L7.
        assert!(l7().member(&Word::chars("aa")).unwrap());
        assert!(l7().member(&Word::chars("abba")).unwrap());
        assert!(!l7().member(&Word::chars("aaa")).unwrap());
    }

    #[test]
    fn five_state_is_five_states() {
        let d = l2().to_dfa(SltMethod::FiveState).unwrap();
        assert_eq!(d.num_states(), 5);
        assert_eq!(d.minimize().num_states(), 5);
        assert!(d.equivalent(&l2().to_dfa(SltMethod::Window).unwrap()).unwrap());
    }

    #[test]
    fn five_state_rejects_wrong_width() {
        let d = SltDescription::from_chars(2, "a", &["aa"], &[], &["aa"], &[]).unwrap();
        assert!(d.to_dfa(SltMethod::FiveState).is_err());
        let with_f = SltDescription::from_chars(1, "a", &[], &[], &[], &[""]).unwrap();
        assert!(with_f.to_dfa(SltMethod::FiveState).is_ok());
    }

    #[test]
    fn empty_description_is_empty_language() {
        let d = SltDescription::from_chars(1, "ab", &[], &[], &[], &[]).unwrap();
        assert!(d.to_dfa(SltMethod::Window).unwrap().is_empty());
    }

    #[test]
    fn l7_grammar_rules() {
        let g = l7().to_rlg().unwrap();
        assert_eq!(g.var_count(), 2);
        let mut rules = g.rule_strings();
        rules.sort();
        assert_eq!(rules, vec!["S -> a", "S -> a S'", "S' -> a", "S' -> b S'"]);
        let ab = Alphabet::from_names(["a", "b"]);
        assert!(g.to_dfa().unwrap().equivalent(&regex_compile("ab*a|a", &ab).unwrap()).unwrap());
    }

    #[test]
    fn width_validation() {
        assert!(SltDescription::from_chars(2, "ab", &["a"], &[], &[], &[]).is_err());
        assert!(SltDescription::from_chars(1, "ab", &[], &[], &[], &["a"]).is_err());
        assert!(SltDescription::from_chars(0, "ab", &[], &[], &[], &[]).is_err());
    }
}
