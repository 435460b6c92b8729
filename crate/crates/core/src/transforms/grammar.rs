//! Monotone and Kuroda-form grammars with bounded enumeration.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::regular::rlg::split_rule;
use crate::symbol::{Alphabet, Symbol, Word};

pub const DEFAULT_FORM_CAP: usize = 5_000_000;

/// A rule `α → β` over `N ∪ T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Production {
    pub lhs: Vec<Symbol>,
    pub rhs: Vec<Symbol>,
}

impl Production {
    pub fn new(lhs: Vec<Symbol>, rhs: Vec<Symbol>) -> Production {
        Production { lhs, rhs }
    }

    pub fn parse(line: &str) -> Result<Production> {
        let (l, r) = split_rule(line)?;
        let lhs = Word::parse(l).into_vec();
        if lhs.is_empty() {
            return Err(Error::Format(format!("rule `{line}` has an empty left-hand side")));
        }
        Ok(Production { lhs, rhs: Word::parse(r).into_vec() })
    }
}

impl fmt::Display for Production {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |s: &[Symbol]| s.iter().map(|x| x.name()).collect::<Vec<_>>().join(" ");
        let rhs = if self.rhs.is_empty() { "%eps".to_string() } else { side(&self.rhs) };
        write!(f, "{} -> {}", side(&self.lhs), rhs)
    }
}

/// Length-non-decreasing grammar; `S → λ` is allowed when `S` occurs on no
/// right-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneGrammar {
    vars: Vec<Symbol>,
    terminals: Alphabet,
    rules: Vec<Production>,
    start: Symbol,
}

fn check_symbols(vars: &[Symbol], terminals: &Alphabet, start: Symbol, rules: &[Production]) -> Result<()> {
    let var_set: HashSet<Symbol> = vars.iter().copied().collect();
    if var_set.len() != vars.len() {
        return Err(Error::InvalidGrammar("duplicate nonterminal".into()));
    }
    if let Some(v) = vars.iter().find(|v| terminals.contains(**v)) {
        return Err(Error::InvalidGrammar(format!("`{v}` is both a nonterminal and a terminal")));
    }
    if !var_set.contains(&start) {
        return Err(Error::InvalidGrammar(format!("start symbol `{start}` is not a nonterminal")));
    }
    for r in rules {
        if let Some(s) = r.lhs.iter().chain(&r.rhs).find(|s| !var_set.contains(s) && !terminals.contains(**s)) {
            return Err(Error::UnknownSymbol(format!("{s} (in rule `{r}`)")));
        }
        if !r.lhs.iter().any(|s| var_set.contains(s)) {
            return Err(Error::InvalidGrammar(format!("rule `{r}` has no nonterminal on its left-hand side")));
        }
    }
    let erases = rules.iter().any(|r| r.rhs.is_empty());
    for r in rules.iter().filter(|r| r.rhs.is_empty()) {
        if r.lhs != [start] {
            return Err(Error::InvalidGrammar(format!("erasing rule `{r}`")));
        }
    }
    if erases {
        if let Some(r) = rules.iter().find(|r| r.rhs.contains(&start)) {
            return Err(Error::InvalidGrammar(format!("`{start} -> %eps` present but `{start}` occurs in `{r}`")));
        }
    }
    Ok(())
}

impl MonotoneGrammar {
    pub fn new(vars: Vec<Symbol>, terminals: Alphabet, rules: Vec<Production>, start: Symbol) -> Result<Self> {
        check_symbols(&vars, &terminals, start, &rules)?;
        if let Some(r) = rules.iter().find(|r| !r.rhs.is_empty() && r.rhs.len() < r.lhs.len()) {
            return Err(Error::InvalidGrammar(format!("rule `{r}` shortens the sentential form")));
        }
        let mut rules = rules;
        rules.sort();
        rules.dedup();
        Ok(MonotoneGrammar { vars, terminals, rules, start })
    }

    pub fn parse_rules(vars: Vec<Symbol>, terminals: Alphabet, lines: &[String], start: Symbol) -> Result<Self> {
        let rules = lines.iter().map(|l| Production::parse(l)).collect::<Result<Vec<_>>>()?;
        MonotoneGrammar::new(vars, terminals, rules, start)
    }

    pub fn vars(&self) -> &[Symbol] {
        &self.vars
    }

    pub fn terminals(&self) -> &Alphabet {
        &self.terminals
    }

    pub fn rules(&self) -> &[Production] {
        &self.rules
    }

    pub fn start(&self) -> Symbol {
        self.start
    }

    /// `L(G) ∩ T^{≤ max_len}`, shortlex-sorted.
    pub fn enumerate(&self, max_len: usize) -> Result<Vec<Word>> {
        self.enumerate_capped(max_len, DEFAULT_FORM_CAP)
    }

    /// Breadth-first search over sentential forms of length at most
    /// `max_len`; no rule shortens a form except `S → λ` at the root.
    pub fn enumerate_capped(&self, max_len: usize, cap: usize) -> Result<Vec<Word>> {
        let mut alpha = Alphabet::new(self.vars.iter().copied());
        for &t in self.terminals.symbols() {
            alpha.insert(t);
        }
        let code = |s: Symbol| alpha.index_of(s).expect("declared") as u16;
        let is_term: Vec<bool> = alpha.symbols().iter().map(|&s| self.terminals.contains(s)).collect();
        let rules: Vec<(Vec<u16>, Vec<u16>)> = self
            .rules
            .iter()
            .map(|r| (r.lhs.iter().map(|&s| code(s)).collect(), r.rhs.iter().map(|&s| code(s)).collect()))
            .collect();
        let mut by_first: HashMap<u16, Vec<usize>> = HashMap::new();
        for (i, (l, _)) in rules.iter().enumerate() {
            by_first.entry(l[0]).or_default().push(i);
        }
        let root = vec![code(self.start)];
        let mut seen: HashSet<Vec<u16>> = HashSet::from([root.clone()]);
        let mut queue = VecDeque::from([root]);
        let mut words = Vec::new();
        while let Some(form) = queue.pop_front() {
            if form.iter().all(|&c| is_term[c as usize]) {
                if form.len() <= max_len {
                    words.push(form.iter().map(|&c| alpha.get(c as usize)).collect::<Word>());
                }
                continue;
            }
            for pos in 0..form.len() {
                let Some(cands) = by_first.get(&form[pos]) else { continue };
                for &ri in cands {
                    let (lhs, rhs) = &rules[ri];
                    if !form[pos..].starts_with(lhs) {
                        continue;
                    }
                    let len = form.len() - lhs.len() + rhs.len();
                    if len > max_len {
                        continue;
                    }
                    let mut next = Vec::with_capacity(len);
                    next.extend_from_slice(&form[..pos]);
                    next.extend_from_slice(rhs);
                    next.extend_from_slice(&form[pos + lhs.len()..]);
                    if seen.insert(next.clone()) {
                        if seen.len() > cap {
                            return Err(Error::ResourceLimit { what: "sentential forms", cap });
                        }
                        queue.push_back(next);
                    }
                }
            }
        }
        self.terminals.sort_words(&mut words);
        Ok(words)
    }
}

/// Which of the four Kuroda shapes (or the guarded erasing rule) a rule has.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KurodaShape {
    /// `AB → CD`
    Context,
    /// `A → BC`
    Binary,
    /// `A → B`
    Chain,
    /// `A → a`
    Terminal,
    /// `S → λ`
    Erase,
}

/// Grammar whose rules are all of the shapes `AB → CD`, `A → BC`, `A → B`,
/// `A → a`, plus an optional `S → λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KurodaGrammar {
    inner: MonotoneGrammar,
}

impl KurodaGrammar {
    pub fn new(vars: Vec<Symbol>, terminals: Alphabet, rules: Vec<Production>, start: Symbol) -> Result<Self> {
        let inner = MonotoneGrammar::new(vars, terminals, rules, start)?;
        for r in &inner.rules {
            inner.shape(r).ok_or_else(|| Error::InvalidGrammar(format!("rule `{r}` is not in Kuroda form")))?;
        }
        Ok(KurodaGrammar { inner })
    }

    pub fn parse_rules(vars: Vec<Symbol>, terminals: Alphabet, lines: &[String], start: Symbol) -> Result<Self> {
        let rules = lines.iter().map(|l| Production::parse(l)).collect::<Result<Vec<_>>>()?;
        KurodaGrammar::new(vars, terminals, rules, start)
    }

    pub fn shape(&self, r: &Production) -> KurodaShape {
        self.inner.shape(r).expect("validated")
    }

    pub fn as_monotone(&self) -> &MonotoneGrammar {
        &self.inner
    }

    pub fn vars(&self) -> &[Symbol] {
        &self.inner.vars
    }

    pub fn terminals(&self) -> &Alphabet {
        &self.inner.terminals
    }

    pub fn rules(&self) -> &[Production] {
        &self.inner.rules
    }

    pub fn start(&self) -> Symbol {
        self.inner.start
    }

    pub fn enumerate(&self, max_len: usize) -> Result<Vec<Word>> {
        self.inner.enumerate(max_len)
    }
}

impl MonotoneGrammar {
    fn shape(&self, r: &Production) -> Option<KurodaShape> {
        let var = |s: &Symbol| self.vars.contains(s);
        let all_vars = |xs: &[Symbol]| xs.iter().all(var);
        match (r.lhs.len(), r.rhs.len()) {
            (1, 0) if r.lhs[0] == self.start => Some(KurodaShape::Erase),
            (2, 2) if all_vars(&r.lhs) && all_vars(&r.rhs) => Some(KurodaShape::Context),
            (1, 2) if all_vars(&r.lhs) && all_vars(&r.rhs) => Some(KurodaShape::Binary),
            (1, 1) if var(&r.lhs[0]) && var(&r.rhs[0]) => Some(KurodaShape::Chain),
            (1, 1) if var(&r.lhs[0]) && self.terminals.contains(r.rhs[0]) => Some(KurodaShape::Terminal),
            _ => None,
        }
    }
}

fn rules_text(rules: &[Production]) -> String {
    rules.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for MonotoneGrammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", rules_text(&self.rules))
    }
}

impl fmt::Display for KurodaGrammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.inner.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    use crate::fixtures::abc_monotone;

    #[test]
    fn abc_enumeration() {
        let ws = abc_monotone().enumerate(9).unwrap();
        assert_eq!(ws, vec![Word::chars("abc"), Word::chars("aabbcc"), Word::chars("aaabbbccc")]);
    }

    #[test]
    fn monotonicity_enforced() {
        let v = vec![Symbol::new("S"), Symbol::new("A")];
        let err = MonotoneGrammar::parse_rules(v, Alphabet::from_names(["a"]), &["S A -> a".into()], Symbol::new("S"));
        assert!(err.is_err());
    }

    #[test]
    fn start_erasure_side_condition() {
        let v = vec![Symbol::new("S")];
        let bad = MonotoneGrammar::parse_rules(
            v.clone(),
            Alphabet::from_names(["a"]),
            &["S -> %eps".into(), "S -> a S".into()],
            Symbol::new("S"),
        );
        assert!(bad.is_err());
        let ok = MonotoneGrammar::parse_rules(v, Alphabet::from_names(["a"]), &["S -> %eps".into()], Symbol::new("S"));
        assert_eq!(ok.unwrap().enumerate(2).unwrap(), vec![Word::empty()]);
    }

    #[test]
    fn kuroda_shapes() {
        let v = ["S", "A", "B"].map(Symbol::new).to_vec();
        let t = Alphabet::from_names(["a"]);
        let ok = KurodaGrammar::parse_rules(
            v.clone(),
            t.clone(),
            &["S -> A B".into(), "A B -> B A".into(), "A -> a".into(), "B -> A".into()],
            Symbol::new("S"),
        )
        .unwrap();
        assert_eq!(ok.shape(&Production::parse("A B -> B A").unwrap()), KurodaShape::Context);
        assert!(KurodaGrammar::parse_rules(v, t, &["S -> a A".into()], Symbol::new("S")).is_err());
    }
}
