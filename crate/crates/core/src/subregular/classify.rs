use std::fmt;

use crate::regular::{dfa_to_rlg, is_suffix_closed, Dfa, Regex, RightLinearGrammar};
use crate::subregular::decide::is_slt_upto;
use crate::subregular::search::{search_rlg, SearchBudget};
use crate::subregular::slt::SltDescription;
use crate::symbol::{Alphabet, Symbol, Word};

/// Largest number of windows tried per definiteness parameter.
const DEFINITE_WINDOW_CAP: usize = 1 << 20;
/// Largest alphabet for which all sub-alphabets are tried.
const MON_ALPHABET_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyBounds {
    pub k_max: usize,
    pub definite_k_max: usize,
    pub mon_n_max: usize,
    /// Optional exact grammar search run alongside the upper bounds.
    pub search: Option<SearchBudget>,
}

impl Default for ClassifyBounds {
    fn default() -> Self {
        ClassifyBounds { k_max: 4, definite_k_max: 8, mon_n_max: 4, search: None }
    }
}

/// A verdict that was only decided up to `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounded<T> {
    pub bound: usize,
    pub found: Option<T>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nilpotent {
    Finite(Vec<Word>),
    /// The complement is finite; these are its words.
    CoFinite(Vec<Word>),
}

/// `L = A ∪ V*B` with `A ⊆ V^{<k}`, `B ⊆ V^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definite {
    pub k: usize,
    pub a: Vec<Word>,
    pub b: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub alphabet: Alphabet,
    pub state_complexity: usize,
    /// The language itself when finite.
    pub finite: Option<Vec<Word>>,
    pub nilpotent: Option<Nilpotent>,
    pub monoidal: bool,
    /// Sub-alphabets `A_1 … A_n` with `L = A_1* ∪ … ∪ A_n*`.
    pub mon_n: Bounded<Vec<Vec<Symbol>>>,
    /// The candidate `X = L ∩ V` and whether `L = V*X`.
    pub combinational: (Vec<Symbol>, bool),
    pub definite: Bounded<Definite>,
    pub suffix_closed: bool,
    pub slt: Bounded<SltDescription>,
    pub var_rl_upper: usize,
    pub prod_rl_upper: usize,
    pub upper_grammar: RightLinearGrammar,
    pub search: Option<(SearchBudget, Option<RightLinearGrammar>)>,
}

pub fn classify(d: &Dfa, bounds: ClassifyBounds) -> crate::error::Result<ClassificationReport> {
    let d = d.minimize();
    let alphabet = d.alphabet().clone();

    let finite = d.is_finite().then(|| d.enumerate(d.num_states()));
    let co = d.complement();
    let nilpotent = match &finite {
        Some(ws) => Some(Nilpotent::Finite(ws.clone())),
        None if co.is_finite() => Some(Nilpotent::CoFinite(co.enumerate(co.num_states()))),
        None => None,
    };
    let monoidal = d.equivalent(&Dfa::universal(alphabet.clone()))?;
    let mon_n = Bounded { bound: bounds.mon_n_max, found: mon_decomposition(&d, bounds.mon_n_max)? };
    let combinational = combinational(&d)?;
    let definite = definite(&d, bounds.definite_k_max)?;
    let suffix_closed = is_suffix_closed(&d);
    let slt = Bounded { bound: bounds.k_max, found: is_slt_upto(&d, bounds.k_max).map(|(_, desc)| desc) };
    let upper_grammar = dfa_to_rlg(&d).reduce();
    let search = match bounds.search {
        Some(b) => Some((b, search_rlg(&d, b)?.grammar)),
        None => None,
    };
    Ok(ClassificationReport {
        state_complexity: d.num_states(),
        var_rl_upper: upper_grammar.var_count(),
        prod_rl_upper: upper_grammar.prod_count(),
        alphabet,
        finite,
        nilpotent,
        monoidal,
        mon_n,
        combinational,
        definite,
        suffix_closed,
        slt,
        upper_grammar,
        search,
    })
}

fn star_of(letters: &[Symbol]) -> Regex {
    Regex::star(Regex::union_all(letters.iter().map(|&s| Regex::lit(s))))
}

/// The maximal sub-alphabets whose star lies in `L`; every one of them is
/// needed in any decomposition, so their number is the least `n`.
fn mon_decomposition(d: &Dfa, n_max: usize) -> crate::error::Result<Option<Vec<Vec<Symbol>>>> {
    let alpha = d.alphabet();
    if alpha.len() > MON_ALPHABET_CAP {
        return Ok(None);
    }
    let mut inside: Vec<u32> = Vec::new();
    for mask in 0u32..(1 << alpha.len()) {
        let letters: Vec<Symbol> = (0..alpha.len()).filter(|i| mask >> i & 1 == 1).map(|i| alpha.get(i)).collect();
        if star_of(&letters).compile(alpha)?.is_subset_of(d)? {
            inside.push(mask);
        }
    }
    let maximal: Vec<u32> = inside.iter().copied().filter(|&m| !inside.iter().any(|&o| o != m && o & m == m)).collect();
    if maximal.is_empty() || maximal.len() > n_max {
        return Ok(None);
    }
    let parts: Vec<Vec<Symbol>> =
        maximal.iter().map(|&m| (0..alpha.len()).filter(|i| m >> i & 1 == 1).map(|i| alpha.get(i)).collect()).collect();
    let union = Regex::union_all(parts.iter().map(|p| star_of(p))).compile(alpha)?;
    Ok(union.equivalent(d)?.then_some(parts))
}

fn combinational(d: &Dfa) -> crate::error::Result<(Vec<Symbol>, bool)> {
    let alpha = d.alphabet();
    let x: Vec<Symbol> = alpha.symbols().iter().copied().filter(|&s| d.accepts_lenient(&[s])).collect();
    let all = alpha.symbols().to_vec();
    let candidate = Regex::concat(star_of(&all), Regex::union_all(x.iter().map(|&s| Regex::lit(s))));
    let holds = candidate.compile(alpha)?.equivalent(d)?;
    Ok((x, holds))
}

fn definite(d: &Dfa, k_max: usize) -> crate::error::Result<Bounded<Definite>> {
    let alpha = d.alphabet();
    let reach = d.reachable();
    let reachable: Vec<usize> = (0..d.num_states()).filter(|&q| reach[q]).collect();
    let all = alpha.symbols().to_vec();
    let mut checked = 0;
    for k in 1..=k_max {
        if alpha.len().checked_pow(k as u32).is_none_or(|n| n > DEFINITE_WINDOW_CAP) {
            break;
        }
        checked = k;
        let a = d.enumerate(k - 1);
        let b: Vec<Word> = alpha
            .words_of_len(k)
            .into_iter()
            .filter(|v| {
                let idx = alpha.indices(v).expect("own alphabet");
                reachable.iter().all(|&q| d.is_final(idx.iter().fold(q, |p, &x| d.next(p, x))))
            })
            .collect();
        let candidate = Regex::union(
            Regex::union_all(a.iter().map(|w| Regex::word(w))),
            Regex::concat(star_of(&all), Regex::union_all(b.iter().map(|w| Regex::word(w)))),
        );
        if candidate.compile(alpha)?.equivalent(d)? {
            return Ok(Bounded { bound: k_max, found: Some(Definite { k, a, b }) });
        }
    }
    Ok(Bounded { bound: checked, found: None })
}

fn words(ws: &[Word]) -> String {
    let parts: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn letters(ls: &[Symbol]) -> String {
    let parts: Vec<&str> = ls.iter().map(|s| s.name()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alphabet: {}", self.alphabet)?;
        writeln!(f, "state_complexity: {}", self.state_complexity)?;
        match &self.finite {
            Some(ws) => writeln!(f, "finite: yes {}", words(ws))?,
            None => writeln!(f, "finite: no")?,
        }
        match &self.nilpotent {
            Some(Nilpotent::Finite(_)) => writeln!(f, "nilpotent: yes (finite)")?,
            Some(Nilpotent::CoFinite(ws)) => writeln!(f, "nilpotent: yes (complement {})", words(ws))?,
            None => writeln!(f, "nilpotent: no")?,
        }
        writeln!(f, "monoidal: {}", yes_no(self.monoidal))?;
        match &self.mon_n.found {
            Some(parts) => {
                let ps: Vec<String> = parts.iter().map(|p| format!("{}*", letters(p))).collect();
                writeln!(f, "mon_n: {} ({})", parts.len(), ps.join(" ∪ "))?
            }
            None => writeln!(f, "mon_n: none up to {}", self.mon_n.bound)?,
        }
        let (x, holds) = &self.combinational;
        writeln!(f, "combinational: {} (X = {})", yes_no(*holds), letters(x))?;
        match &self.definite.found {
            Some(def) => writeln!(f, "definite: k = {} (A = {}, B = {})", def.k, words(&def.a), words(&def.b))?,
            None => writeln!(f, "definite: none up to k = {}", self.definite.bound)?,
        }
        writeln!(f, "suffix_closed: {}", yes_no(self.suffix_closed))?;
        match &self.slt.found {
            Some(desc) => writeln!(f, "slt: {} {}", desc.k(), desc)?,
            None => writeln!(f, "slt: none up to k = {}", self.slt.bound)?,
        }
        writeln!(f, "var_rl_upper: {}", self.var_rl_upper)?;
        writeln!(f, "prod_rl_upper: {}", self.prod_rl_upper)?;
        writeln!(f, "upper_grammar: {}", self.upper_grammar)?;
        if let Some((budget, g)) = &self.search {
            match g {
                Some(g) => writeln!(f, "search {budget}: {g}")?,
                None => writeln!(f, "search {budget}: none within budget")?,
            }
        }
        Ok(())
    }
}
