use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::regular::nfa::Nfa;
use crate::symbol::{Alphabet, Symbol, Word};

/// Set operation for [`Dfa::combine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineMode {
    Union,
    Intersection,
    Difference,
}

/// A complete deterministic finite automaton.
///
/// States are `0..num_states()`; `delta` is stored row-major, one row of
/// `alphabet.len()` successors per state, so the transition function is
/// total by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    start: usize,
    finals: Vec<bool>,
    delta: Vec<usize>,
}

impl Dfa {
    pub fn new(alphabet: Alphabet, start: usize, finals: Vec<bool>, delta: Vec<usize>) -> Result<Dfa> {
        let n = finals.len();
        if n == 0 || start >= n {
            return Err(Error::InvalidArgument("start state out of range".into()));
        }
        if delta.len() != n * alphabet.len() {
            return Err(Error::InvalidArgument(format!(
                "transition table has {} entries, expected {}",
                delta.len(),
                n * alphabet.len()
            )));
        }
        if let Some(bad) = delta.iter().find(|&&t| t >= n) {
            return Err(Error::InvalidArgument(format!("transition to unknown state {bad}")));
        }
        Ok(Dfa { alphabet, start, finals, delta })
    }

    /// Builds a DFA from one row of successors per state.
    pub fn from_rows(alphabet: Alphabet, start: usize, finals: &[usize], rows: &[Vec<usize>]) -> Result<Dfa> {
        let n = rows.len();
        let mut fin = vec![false; n];
        for &f in finals {
            if f >= n {
                return Err(Error::InvalidArgument(format!("final state {f} out of range")));
            }
            fin[f] = true;
        }
        for r in rows {
            if r.len() != alphabet.len() {
                return Err(Error::InvalidArgument("transition row has wrong width".into()));
            }
        }
        Dfa::new(alphabet, start, fin, rows.concat())
    }

    /// The one-state automaton accepting nothing.
    pub fn empty(alphabet: Alphabet) -> Dfa {
        let k = alphabet.len();
        Dfa { alphabet, start: 0, finals: vec![false], delta: vec![0; k] }
    }

    /// The one-state automaton accepting `V*`.
    pub fn universal(alphabet: Alphabet) -> Dfa {
        let k = alphabet.len();
        Dfa { alphabet, start: 0, finals: vec![true], delta: vec![0; k] }
    }

    /// Minimal DFA of a finite set of words.
    pub fn from_words(alphabet: Alphabet, words: &[Word]) -> Result<Dfa> {
        let mut nfa = Nfa::new(alphabet);
        let s = nfa.add_state();
        nfa.add_start(s);
        for w in words {
            let mut cur = s;
            for letter in nfa.alphabet().indices(w)? {
                let next = nfa.add_state();
                nfa.add_transition(cur, Some(letter), next);
                cur = next;
            }
            nfa.set_final(cur, true);
        }
        nfa.to_min_dfa()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        self.finals.iter().enumerate().filter(|(_, f)| **f).map(|(q, _)| q)
    }

    #[inline]
    pub fn next(&self, q: usize, letter: usize) -> usize {
        self.delta[q * self.alphabet.len() + letter]
    }

    pub fn run_indices(&self, letters: &[usize]) -> usize {
        letters.iter().fold(self.start, |q, &a| self.next(q, a))
    }

    /// Runs from `q` over a word; foreign symbols are an error.
    pub fn run_from(&self, q: usize, w: &[Symbol]) -> Result<usize> {
        let mut q = q;
        for s in w {
            let a = self.alphabet.index_of(*s).ok_or_else(|| Error::ForeignSymbol(s.name().to_owned()))?;
            q = self.next(q, a);
        }
        Ok(q)
    }

    pub fn accepts(&self, w: &[Symbol]) -> Result<bool> {
        Ok(self.finals[self.run_from(self.start, w)?])
    }

    /// Membership where foreign symbols simply reject.
    pub fn accepts_lenient(&self, w: &[Symbol]) -> bool {
        self.accepts(w).unwrap_or(false)
    }

    /// States reachable from the start state, as a mask.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![self.start];
        seen[self.start] = true;
        while let Some(q) = stack.pop() {
            for a in 0..self.alphabet.len() {
                let p = self.next(q, a);
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Minimal number of steps from each state to a final state.
    pub fn distance_to_final(&self) -> Vec<Option<usize>> {
        let n = self.num_states();
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for q in 0..n {
            for a in 0..self.alphabet.len() {
                rev[self.next(q, a)].push(q);
            }
        }
        let mut dist = vec![None; n];
        let mut queue = VecDeque::new();
        for q in self.finals() {
            dist[q] = Some(0);
            queue.push_back(q);
        }
        while let Some(q) = queue.pop_front() {
            let d = dist[q].unwrap();
            for &p in &rev[q] {
                if dist[p].is_none() {
                    dist[p] = Some(d + 1);
                    queue.push_back(p);
                }
            }
        }
        dist
    }

    /// States from which some final state is reachable.
    pub fn live(&self) -> Vec<bool> {
        self.distance_to_final().iter().map(Option::is_some).collect()
    }

    /// Canonical minimal DFA: unreachable states dropped, equivalent states
    /// merged by partition refinement, states renumbered breadth-first from
    /// the start state over the alphabet order. The sink, if any, is kept.
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet.len();
        let reach = self.reachable();
        let states: Vec<usize> = (0..self.num_states()).filter(|&q| reach[q]).collect();

        let mut class: Vec<usize> = vec![usize::MAX; self.num_states()];
        for &q in &states {
            class[q] = usize::from(self.finals[q]);
        }
        let mut count = {
            let mut seen = [false; 2];
            states.iter().for_each(|&q| seen[class[q]] = true);
            seen.iter().filter(|b| **b).count()
        };
        loop {
            let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next_class = vec![usize::MAX; self.num_states()];
            for &q in &states {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[q]);
                for a in 0..k {
                    sig.push(class[self.next(q, a)]);
                }
                let len = ids.len();
                next_class[q] = *ids.entry(sig).or_insert(len);
            }
            let new_count = ids.len();
            class = next_class;
            if new_count == count {
                break;
            }
            count = new_count;
        }

        // Breadth-first renumbering of the quotient.
        let mut rep = vec![usize::MAX; count];
        for &q in &states {
            if rep[class[q]] == usize::MAX {
                rep[class[q]] = q;
            }
        }
        let mut number = vec![usize::MAX; count];
        let mut order = Vec::with_capacity(count);
        let mut queue = VecDeque::new();
        number[class[self.start]] = 0;
        order.push(class[self.start]);
        queue.push_back(class[self.start]);
        while let Some(c) = queue.pop_front() {
            let q = rep[c];
            for a in 0..k {
                let d = class[self.next(q, a)];
                if number[d] == usize::MAX {
                    number[d] = order.len();
                    order.push(d);
                    queue.push_back(d);
                }
            }
        }
        let mut finals = Vec::with_capacity(count);
        let mut delta = Vec::with_capacity(count * k);
        for &c in &order {
            let q = rep[c];
            finals.push(self.finals[q]);
            for a in 0..k {
                delta.push(number[class[self.next(q, a)]]);
            }
        }
        Dfa { alphabet: self.alphabet.clone(), start: 0, finals, delta }
    }

    /// Size of the minimal complete DFA (sink included).
    pub fn state_complexity(&self) -> usize {
        self.minimize().num_states()
    }

    pub fn complement(&self) -> Dfa {
        let mut d = self.clone();
        d.finals.iter_mut().for_each(|f| *f = !*f);
        d.minimize()
    }

    /// Re-expresses this automaton over a superset alphabet (or a
    /// reordering of the same set). New letters lead to a fresh sink.
    pub fn over_alphabet(&self, target: &Alphabet) -> Result<Dfa> {
        if !self.alphabet.is_subset_of(target) {
            return Err(Error::AlphabetMismatch(format!("{} is not contained in {}", self.alphabet, target)));
        }
        if self.alphabet == *target {
            return Ok(self.clone());
        }
        let n = self.num_states();
        let sink = n;
        let mut delta = Vec::with_capacity((n + 1) * target.len());
        for q in 0..=n {
            for s in target.symbols() {
                match (q < n, self.alphabet.index_of(*s)) {
                    (true, Some(a)) => delta.push(self.next(q, a)),
                    _ => delta.push(sink),
                }
            }
        }
        let mut finals = self.finals.clone();
        finals.push(false);
        Ok(Dfa { alphabet: target.clone(), start: self.start, finals, delta })
    }

    fn aligned(&self, other: &Dfa) -> Result<Dfa> {
        if !self.alphabet.same_set(&other.alphabet) {
            return Err(Error::AlphabetMismatch(format!("{} vs {}", self.alphabet, other.alphabet)));
        }
        other.over_alphabet(&self.alphabet)
    }

    /// Product construction; the result is minimal and canonical.
    pub fn combine(&self, other: &Dfa, mode: CombineMode) -> Result<Dfa> {
        let other = self.aligned(other)?;
        let k = self.alphabet.len();
        let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs = vec![(self.start, other.start)];
        ids.insert((self.start, other.start), 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            for a in 0..k {
                let succ = (self.next(p, a), other.next(q, a));
                let len = pairs.len();
                let id = *ids.entry(succ).or_insert_with(|| {
                    pairs.push(succ);
                    len
                });
                delta.push(id);
            }
            i += 1;
        }
        let finals = pairs
            .iter()
            .map(|&(p, q)| {
                let (x, y) = (self.finals[p], other.finals[q]);
                match mode {
                    CombineMode::Union => x || y,
                    CombineMode::Intersection => x && y,
                    CombineMode::Difference => x && !y,
                }
            })
            .collect();
        Ok(Dfa { alphabet: self.alphabet.clone(), start: 0, finals, delta }.minimize())
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa> {
        self.combine(other, CombineMode::Union)
    }

    pub fn intersection(&self, other: &Dfa) -> Result<Dfa> {
        self.combine(other, CombineMode::Intersection)
    }

    pub fn difference(&self, other: &Dfa) -> Result<Dfa> {
        self.combine(other, CombineMode::Difference)
    }

    /// Shortest (then alphabet-least) word in the symmetric difference, or
    /// `None` when both automata accept the same language.
    pub fn distinguishing_word(&self, other: &Dfa) -> Result<Option<Word>> {
        let other = self.aligned(other)?;
        let k = self.alphabet.len();
        type Pair = (usize, usize);
        let mut parent: HashMap<Pair, Option<(Pair, usize)>> = HashMap::new();
        let mut queue = VecDeque::new();
        let root = (self.start, other.start);
        parent.insert(root, None);
        queue.push_back(root);
        while let Some(pair) = queue.pop_front() {
            if self.finals[pair.0] != other.finals[pair.1] {
                let mut letters = Vec::new();
                let mut cur = pair;
                while let Some(Some((prev, a))) = parent.get(&cur) {
                    letters.push(*a);
                    cur = *prev;
                }
                letters.reverse();
                return Ok(Some(letters.into_iter().map(|a| self.alphabet.get(a)).collect()));
            }
            for a in 0..k {
                let succ = (self.next(pair.0, a), other.next(pair.1, a));
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(succ) {
                    e.insert(Some((pair, a)));
                    queue.push_back(succ);
                }
            }
        }
        Ok(None)
    }

    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        Ok(self.distinguishing_word(other)?.is_none())
    }

    /// `L(self) ⊆ L(other)`.
    pub fn is_subset_of(&self, other: &Dfa) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_word().is_none()
    }

    /// Shortest accepted word, alphabet-least among the shortest.
    pub fn shortest_word(&self) -> Option<Word> {
        let k = self.alphabet.len();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.num_states()];
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::from([self.start]);
        seen[self.start] = true;
        while let Some(q) = queue.pop_front() {
            if self.finals[q] {
                let mut letters = Vec::new();
                let mut cur = q;
                while let Some((p, a)) = parent[cur] {
                    letters.push(a);
                    cur = p;
                }
                letters.reverse();
                return Some(letters.into_iter().map(|a| self.alphabet.get(a)).collect());
            }
            for a in 0..k {
                let p = self.next(q, a);
                if !seen[p] {
                    seen[p] = true;
                    parent[p] = Some((q, a));
                    queue.push_back(p);
                }
            }
        }
        None
    }

    /// True iff the language is finite: no cycle through a useful state.
    pub fn is_finite(&self) -> bool {
        let reach = self.reachable();
        let live = self.live();
        let useful: Vec<bool> = (0..self.num_states()).map(|q| reach[q] && live[q]).collect();
        // Iterative DFS cycle detection restricted to useful states.
        let n = self.num_states();
        let mut color = vec![0u8; n];
        for root in 0..n {
            if !useful[root] || color[root] != 0 {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            color[root] = 1;
            while let Some(&mut (q, ref mut a)) = stack.last_mut() {
                if *a == self.alphabet.len() {
                    color[q] = 2;
                    stack.pop();
                    continue;
                }
                let p = self.next(q, *a);
                *a += 1;
                if !useful[p] {
                    continue;
                }
                match color[p] {
                    0 => {
                        color[p] = 1;
                        stack.push((p, 0));
                    }
                    1 => return false,
                    _ => {}
                }
            }
        }
        true
    }

    /// `L(d) ∩ V^{≤max_len}` in length-then-lexicographic alphabet order.
    pub fn enumerate(&self, max_len: usize) -> Vec<Word> {
        let dist = self.distance_to_final();
        let k = self.alphabet.len();
        let mut out = Vec::new();
        let mut level: Vec<(Vec<usize>, usize)> = Vec::new();
        if dist[self.start].is_some_and(|d| d <= max_len) {
            level.push((Vec::new(), self.start));
        }
        for len in 0..=max_len {
            for (w, q) in &level {
                if self.finals[*q] {
                    out.push(w.iter().map(|&a| self.alphabet.get(a)).collect());
                }
            }
            if len == max_len {
                break;
            }
            let budget = max_len - len - 1;
            let mut next = Vec::new();
            for (w, q) in &level {
                for a in 0..k {
                    let p = self.next(*q, a);
                    if dist[p].is_some_and(|d| d <= budget) {
                        let mut v = w.clone();
                        v.push(a);
                        next.push((v, p));
                    }
                }
            }
            level = next;
        }
        out
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut nfa = Nfa::new(self.alphabet.clone());
        for q in 0..self.num_states() {
            nfa.add_state();
            nfa.set_final(q, self.finals[q]);
        }
        nfa.add_start(self.start);
        for q in 0..self.num_states() {
            for a in 0..self.alphabet.len() {
                nfa.add_transition(q, Some(a), self.next(q, a));
            }
        }
        nfa
    }

    /// One row of successors per state.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        let k = self.alphabet.len();
        (0..self.num_states()).map(|q| self.delta[q * k..(q + 1) * k].to_vec()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::from_names(["a", "b"])
    }

    // a*b(a|b)* by hand
    fn l1() -> Dfa {
        Dfa::from_rows(ab(), 0, &[1], &[vec![0, 1], vec![1, 1]]).unwrap()
    }

    #[test]
    fn minimize_merges_duplicates() {
        // Same language with a redundant copy of the accepting state.
        let d = Dfa::from_rows(ab(), 0, &[1, 2], &[vec![0, 1], vec![2, 1], vec![1, 2]]).unwrap();
        let m = d.minimize();
        assert_eq!(m.num_states(), 2);
        assert_eq!(m, l1().minimize());
    }

    #[test]
    fn empty_and_universal_have_one_state() {
        assert_eq!(Dfa::empty(ab()).state_complexity(), 1);
        assert_eq!(Dfa::universal(ab()).state_complexity(), 1);
        assert!(Dfa::empty(ab()).is_empty());
    }

    #[test]
    fn intersection_with_complement_is_empty() {
        let d = l1();
        assert!(d.intersection(&d.complement()).unwrap().is_empty());
    }

    #[test]
    fn difference_gives_a_star() {
        let d = Dfa::universal(ab()).difference(&l1()).unwrap();
        let expected: Vec<Word> = (0..=6).map(|n| Word::chars(&"a".repeat(n))).collect();
        assert_eq!(d.enumerate(6), expected);
    }

    #[test]
    fn distinguishing_word_is_shortest() {
        let d = l1();
        let e = Dfa::universal(ab());
        assert_eq!(d.distinguishing_word(&e).unwrap(), Some(Word::empty()));
        assert_eq!(d.distinguishing_word(&d).unwrap(), None);
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let other = Dfa::universal(Alphabet::from_names(["a"]));
        assert!(matches!(l1().union(&other), Err(Error::AlphabetMismatch(_))));
    }

    #[test]
    fn reordered_alphabets_are_aligned() {
        let ba = Alphabet::from_names(["b", "a"]);
        let d = Dfa::from_rows(ba, 0, &[1], &[vec![1, 0], vec![1, 1]]).unwrap();
        assert!(d.equivalent(&l1()).unwrap());
    }

    #[test]
    fn finiteness() {
        assert!(!l1().is_finite());
        assert!(Dfa::from_words(ab(), &[Word::chars("ab"), Word::chars("b")]).unwrap().is_finite());
        assert!(Dfa::empty(ab()).is_finite());
    }

    #[test]
    fn foreign_symbol_rejected() {
        assert!(matches!(l1().accepts(&Word::chars("c")), Err(Error::ForeignSymbol(_))));
    }
}
