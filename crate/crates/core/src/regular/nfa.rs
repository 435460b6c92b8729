use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::regular::dfa::Dfa;
use crate::symbol::{Alphabet, Symbol};

/// Default cap on the number of subset states created by determinization.
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// Nondeterministic automaton with λ-moves. Transitions are stored per
/// source state as `(letter, target)` with `None` standing for λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    starts: Vec<usize>,
    finals: Vec<bool>,
    trans: Vec<Vec<(Option<usize>, usize)>>,
}

impl Nfa {
    pub fn new(alphabet: Alphabet) -> Nfa {
        Nfa { alphabet, starts: Vec::new(), finals: Vec::new(), trans: Vec::new() }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn add_state(&mut self) -> usize {
        self.finals.push(false);
        self.trans.push(Vec::new());
        self.finals.len() - 1
    }

    pub fn add_start(&mut self, q: usize) {
        if !self.starts.contains(&q) {
            self.starts.push(q);
        }
    }

    pub fn starts(&self) -> &[usize] {
        &self.starts
    }

    pub fn set_final(&mut self, q: usize, f: bool) {
        self.finals[q] = f;
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn add_transition(&mut self, from: usize, letter: Option<usize>, to: usize) {
        self.trans[from].push((letter, to));
    }

    pub fn transitions(&self, q: usize) -> &[(Option<usize>, usize)] {
        &self.trans[q]
    }

    /// Adds a path spelling `word` from `from` to `to`, creating
    /// intermediate states; an empty word becomes a λ-move.
    pub fn add_word_path(&mut self, from: usize, word: &[Symbol], to: usize) -> Result<()> {
        let letters = self.alphabet.indices(word)?;
        if letters.is_empty() {
            self.add_transition(from, None, to);
            return Ok(());
        }
        let mut cur = from;
        for (i, &a) in letters.iter().enumerate() {
            let next = if i + 1 == letters.len() { to } else { self.add_state() };
            self.add_transition(cur, Some(a), next);
            cur = next;
        }
        Ok(())
    }

    fn closure(&self, set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &(l, p) in &self.trans[q] {
                if l.is_none() && set.insert(p) {
                    stack.push(p);
                }
            }
        }
    }

    pub fn accepts(&self, w: &[Symbol]) -> Result<bool> {
        let letters = self.alphabet.indices(w)?;
        let mut cur: BTreeSet<usize> = self.starts.iter().copied().collect();
        self.closure(&mut cur);
        for a in letters {
            let mut next = BTreeSet::new();
            for &q in &cur {
                for &(l, p) in &self.trans[q] {
                    if l == Some(a) {
                        next.insert(p);
                    }
                }
            }
            self.closure(&mut next);
            cur = next;
        }
        Ok(cur.iter().any(|&q| self.finals[q]))
    }

    /// Subset construction. The result is complete (the empty subset acts
    /// as sink) but not minimized.
    pub fn determinize(&self, cap: usize) -> Result<Dfa> {
        let k = self.alphabet.len();
        let mut init: BTreeSet<usize> = self.starts.iter().copied().collect();
        self.closure(&mut init);
        let mut ids: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        let mut subsets = vec![init.clone()];
        ids.insert(init, 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < subsets.len() {
            let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k];
            for &q in &subsets[i] {
                for &(l, p) in &self.trans[q] {
                    if let Some(a) = l {
                        succ[a].insert(p);
                    }
                }
            }
            for mut s in succ {
                self.closure(&mut s);
                let id = match ids.get(&s) {
                    Some(&id) => id,
                    None => {
                        if subsets.len() >= cap {
                            return Err(Error::ResourceLimit { what: "determinization states", cap });
                        }
                        let id = subsets.len();
                        ids.insert(s.clone(), id);
                        subsets.push(s);
                        id
                    }
                };
                delta.push(id);
            }
            i += 1;
        }
        let finals = subsets.iter().map(|s| s.iter().any(|&q| self.finals[q])).collect();
        Dfa::new(self.alphabet.clone(), 0, finals, delta)
    }

    /// Determinize with the default cap, then minimize canonically.
    pub fn to_min_dfa(&self) -> Result<Dfa> {
        self.determinize_minimize(DEFAULT_STATE_CAP)
    }

    pub fn determinize_minimize(&self, cap: usize) -> Result<Dfa> {
        Ok(self.determinize(cap)?.minimize())
    }

    /// Automaton for the reversal of the language.
    pub fn reverse(&self) -> Nfa {
        let mut r = Nfa::new(self.alphabet.clone());
        for _ in 0..self.num_states() {
            r.add_state();
        }
        for q in 0..self.num_states() {
            for &(l, p) in &self.trans[q] {
                r.add_transition(p, l, q);
            }
            if self.finals[q] {
                r.add_start(q);
            }
        }
        for &s in &self.starts {
            r.set_final(s, true);
        }
        r
    }
}
