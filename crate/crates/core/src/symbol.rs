//! Interned symbols, alphabets and words.
//!
//! Symbols are interned process-wide: equal names always yield the same
//! [`Symbol`]. Hashing and equality use the numeric identity; ordering uses
//! the display name so that sorted output does not depend on interning order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use once_cell::sync::Lazy;

use crate::error::{Error, Result};

struct Interner {
    names: Vec<&'static str>,
    ids: HashMap<&'static str, u32>,
}

static INTERNER: Lazy<RwLock<Interner>> =
    Lazy::new(|| RwLock::new(Interner { names: Vec::new(), ids: HashMap::new() }));

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Symbol(u32);

impl Symbol {
    pub fn new(name: &str) -> Symbol {
        if let Some(&id) = INTERNER.read().unwrap().ids.get(name) {
            return Symbol(id);
        }
        let mut interner = INTERNER.write().unwrap();
        if let Some(&id) = interner.ids.get(name) {
            return Symbol(id);
        }
        // Names live for the whole process; the set of names is small.
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        let id = interner.names.len() as u32;
        interner.names.push(leaked);
        interner.ids.insert(leaked, id);
        Symbol(id)
    }

    /// `None` unless [`is_valid_name`] holds.
    pub fn try_new(name: &str) -> Option<Symbol> {
        is_valid_name(name).then(|| Symbol::new(name))
    }

    pub fn name(self) -> &'static str {
        INTERNER.read().unwrap().names[self.0 as usize]
    }

    pub fn id(self) -> u32 {
        self.0
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0 == other.0 {
            Ordering::Equal
        } else {
            self.name().cmp(other.name())
        }
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// True for names usable as symbols in every textual format.
pub fn is_valid_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(is_name_char)
}

pub(crate) fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Produces symbols whose names avoid a set of taken names.
#[derive(Clone, Debug, Default)]
pub struct NameSupply {
    taken: std::collections::HashSet<Symbol>,
}

impl NameSupply {
    pub fn new<I: IntoIterator<Item = Symbol>>(taken: I) -> NameSupply {
        NameSupply { taken: taken.into_iter().collect() }
    }

    pub fn reserve(&mut self, s: Symbol) {
        self.taken.insert(s);
    }

    /// `base` itself if free, otherwise `base` with primes appended.
    pub fn fresh(&mut self, base: &str) -> Symbol {
        let mut name = base.to_owned();
        loop {
            let s = Symbol::new(&name);
            if self.taken.insert(s) {
                return s;
            }
            name.push('\'');
        }
    }
}

/// A finite alphabet with a fixed (insertion) order.
#[derive(Clone, Default)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
    index: HashMap<Symbol, usize>,
}

impl Alphabet {
    pub fn new<I: IntoIterator<Item = Symbol>>(symbols: I) -> Alphabet {
        let mut a = Alphabet::default();
        for s in symbols {
            a.insert(s);
        }
        a
    }

    /// Builds an alphabet from names; duplicates are ignored.
    pub fn from_names<S: AsRef<str>, I: IntoIterator<Item = S>>(names: I) -> Alphabet {
        Alphabet::new(names.into_iter().map(|n| Symbol::new(n.as_ref())))
    }

    /// Parses a whitespace- or comma-separated list of names.
    pub fn parse(text: &str) -> Result<Alphabet> {
        let names: Vec<&str> = text.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).collect();
        for n in &names {
            if !is_valid_name(n) {
                return Err(Error::InvalidArgument(format!("bad symbol name `{n}`")));
            }
        }
        Ok(Alphabet::from_names(names))
    }

    pub fn insert(&mut self, s: Symbol) -> usize {
        if let Some(&i) = self.index.get(&s) {
            return i;
        }
        self.symbols.push(s);
        self.index.insert(s, self.symbols.len() - 1);
        self.symbols.len() - 1
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn get(&self, i: usize) -> Symbol {
        self.symbols[i]
    }

    pub fn index_of(&self, s: Symbol) -> Option<usize> {
        self.index.get(&s).copied()
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.index.contains_key(&s)
    }

    pub fn lookup(&self, name: &str) -> Option<Symbol> {
        self.symbols.iter().copied().find(|s| s.name() == name)
    }

    /// Letter indices of a word, or the first foreign symbol as an error.
    pub fn indices(&self, w: &[Symbol]) -> Result<Vec<usize>> {
        w.iter().map(|s| self.index_of(*s).ok_or_else(|| Error::ForeignSymbol(s.name().to_owned()))).collect()
    }

    pub fn same_set(&self, other: &Alphabet) -> bool {
        self.len() == other.len() && self.symbols.iter().all(|s| other.contains(*s))
    }

    pub fn is_subset_of(&self, other: &Alphabet) -> bool {
        self.symbols.iter().all(|s| other.contains(*s))
    }

    /// Union keeping `self`'s order first.
    pub fn union(&self, other: &Alphabet) -> Alphabet {
        let mut a = self.clone();
        for s in other.symbols() {
            a.insert(*s);
        }
        a
    }

    /// Compares two words by length, then lexicographically in alphabet order.
    /// Symbols outside the alphabet sort after all letters, by name.
    pub fn shortlex_cmp(&self, a: &[Symbol], b: &[Symbol]) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            for (x, y) in a.iter().zip(b) {
                let o = match (self.index_of(*x), self.index_of(*y)) {
                    (Some(i), Some(j)) => i.cmp(&j),
                    (Some(_), None) => Ordering::Less,
                    (None, Some(_)) => Ordering::Greater,
                    (None, None) => x.cmp(y),
                };
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }

    /// Sorts words in length-then-lexicographic alphabet order.
    pub fn sort_words(&self, words: &mut [Word]) {
        words.sort_by(|a, b| self.shortlex_cmp(a, b));
    }

    /// All words of exactly length `k`, in lexicographic alphabet order.
    pub fn words_of_len(&self, k: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..k {
            let mut next = Vec::with_capacity(out.len() * self.len());
            for w in &out {
                for s in &self.symbols {
                    let mut v = w.clone();
                    v.push(*s);
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }

    /// All words of length at most `k`, length-then-lexicographic.
    pub fn words_up_to(&self, k: usize) -> Vec<Word> {
        (0..=k).flat_map(|l| self.words_of_len(l)).collect()
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.symbols.iter()).finish()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

/// A finite word; the empty word is λ.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn new(symbols: Vec<Symbol>) -> Word {
        Word(symbols)
    }

    /// Parses whitespace-separated symbol names. `""`, `λ` and `%eps` denote
    /// the empty word.
    pub fn parse(text: &str) -> Word {
        Word(text.split_whitespace().filter(|t| *t != "λ" && *t != "%eps").map(Symbol::new).collect())
    }

    /// One symbol per character: `Word::chars("abc")` is `a b c`.
    pub fn chars(text: &str) -> Word {
        Word(text.chars().map(|c| Symbol::new(c.encode_utf8(&mut [0; 4]))).collect())
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s)
    }

    pub fn into_vec(self) -> Vec<Symbol> {
        self.0
    }

    pub fn concat(&self, other: &[Symbol]) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        Word(v)
    }

    /// Space-separated names; the empty word prints as an empty string.
    pub fn to_doc_string(&self) -> String {
        self.0.iter().map(|s| s.name()).collect::<Vec<_>>().join(" ")
    }
}

impl std::ops::Deref for Word {
    type Target = [Symbol];
    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Word {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Word {
        Word(v.to_vec())
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Word {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("λ");
        }
        // Single-character names are printed glued together.
        let glue = self.0.iter().all(|s| s.name().chars().count() == 1);
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 && !glue {
                f.write_str(" ")?;
            }
            f.write_str(s.name())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_stable() {
        let a = Symbol::new("sym_a");
        let b = Symbol::new("sym_b");
        assert_eq!(a, Symbol::new("sym_a"));
        assert_ne!(a, b);
        assert_eq!(a.name(), "sym_a");
        assert!(a < b);
    }

    #[test]
    fn shortlex_uses_alphabet_order() {
        let v = Alphabet::from_names(["b", "a"]);
        let mut ws = vec![Word::chars("ab"), Word::chars("a"), Word::chars("b"), Word::empty()];
        v.sort_words(&mut ws);
        assert_eq!(ws, vec![Word::empty(), Word::chars("b"), Word::chars("a"), Word::chars("ab")]);
    }

    #[test]
    fn word_display() {
        assert_eq!(Word::empty().to_string(), "λ");
        assert_eq!(Word::chars("aba").to_string(), "aba");
        assert_eq!(Word::parse("a1 a2").to_string(), "a1 a2");
        assert_eq!(Word::parse("%eps"), Word::empty());
    }

    #[test]
    fn words_of_len_counts() {
        let v = Alphabet::from_names(["a", "b", "c"]);
        assert_eq!(v.words_of_len(2).len(), 9);
        assert_eq!(v.words_up_to(2).len(), 13);
    }
}
