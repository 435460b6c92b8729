use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::regular::rlg::split_rule;
use crate::symbol::{Alphabet, Symbol, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CfgRule {
    pub lhs: Symbol,
    pub body: Vec<Symbol>,
}

impl CfgRule {
    pub fn new(lhs: Symbol, body: Vec<Symbol>) -> CfgRule {
        CfgRule { lhs, body }
    }
}

impl fmt::Display for CfgRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ->", self.lhs)?;
        if self.body.is_empty() {
            return write!(f, " %eps");
        }
        for s in &self.body {
            write!(f, " {s}")?;
        }
        Ok(())
    }
}

/// Context-free grammar. Erasing rules are representable so that
/// validation can report them; see [`Cfg::erasing_violations`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cfg {
    vars: Vec<Symbol>,
    terminals: Alphabet,
    rules: Vec<CfgRule>,
    start: Symbol,
    by_lhs: BTreeMap<Symbol, Vec<Vec<Symbol>>>,
}

impl Cfg {
    pub fn new(vars: Vec<Symbol>, terminals: Alphabet, rules: Vec<CfgRule>, start: Symbol) -> Result<Cfg> {
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
        for r in &rules {
            if !var_set.contains(&r.lhs) {
                return Err(Error::InvalidGrammar(format!("rule `{r}`: `{}` is not a nonterminal", r.lhs)));
            }
            if let Some(s) = r.body.iter().find(|s| !var_set.contains(s) && !terminals.contains(**s)) {
                return Err(Error::UnknownSymbol(format!("{s} (in rule `{r}`)")));
            }
        }
        let mut rules = rules;
        rules.sort();
        rules.dedup();
        let mut by_lhs: BTreeMap<Symbol, Vec<Vec<Symbol>>> = BTreeMap::new();
        for r in &rules {
            by_lhs.entry(r.lhs).or_default().push(r.body.clone());
        }
        Ok(Cfg { vars, terminals, rules, start, by_lhs })
    }

    /// Rules such as `S -> a S b` or `S -> %eps`.
    pub fn parse_rules(vars: Vec<Symbol>, terminals: Alphabet, lines: &[String], start: Symbol) -> Result<Cfg> {
        let mut rules = Vec::new();
        for line in lines {
            let (lhs, rhs) = split_rule(line)?;
            rules.push(CfgRule::new(Symbol::new(lhs), Word::parse(rhs).into_vec()));
        }
        Cfg::new(vars, terminals, rules, start)
    }

    pub fn vars(&self) -> &[Symbol] {
        &self.vars
    }

    pub fn terminals(&self) -> &Alphabet {
        &self.terminals
    }

    pub fn rules(&self) -> &[CfgRule] {
        &self.rules
    }

    pub fn start(&self) -> Symbol {
        self.start
    }

    pub fn is_var(&self, s: Symbol) -> bool {
        self.vars.contains(&s)
    }

    pub fn bodies(&self, var: Symbol) -> &[Vec<Symbol>] {
        self.by_lhs.get(&var).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// `N ∪ T`, nonterminals first.
    pub fn symbols(&self) -> Alphabet {
        let mut a = Alphabet::new(self.vars.iter().copied());
        for &t in self.terminals.symbols() {
            a.insert(t);
        }
        a
    }

    /// Erasing rules other than `S → λ`, and `S` on a right-hand side when
    /// `S → λ` is present.
    pub fn erasing_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for r in self.rules.iter().filter(|r| r.body.is_empty() && r.lhs != self.start) {
            out.push(format!("erasing rule `{r}`"));
        }
        let start_erases = self.rules.iter().any(|r| r.body.is_empty() && r.lhs == self.start);
        if start_erases {
            for r in self.rules.iter().filter(|r| r.body.contains(&self.start)) {
                out.push(format!("start symbol on a right-hand side with `{} -> %eps`: `{r}`", self.start));
            }
        }
        out
    }

    pub fn rule_strings(&self) -> Vec<String> {
        self.rules.iter().map(|r| r.to_string()).collect()
    }
}

impl fmt::Display for Cfg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.rule_strings().join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g1() -> Cfg {
        Cfg::parse_rules(
            vec![Symbol::new("S")],
            Alphabet::from_names(["a"]),
            &["S -> S S".into(), "S -> a".into()],
            Symbol::new("S"),
        )
        .unwrap()
    }

    #[test]
    fn bodies_by_lhs() {
        let g = g1();
        assert_eq!(g.bodies(Symbol::new("S")).len(), 2);
        assert!(g.erasing_violations().is_empty());
        assert_eq!(g.symbols().len(), 2);
    }

    #[test]
    fn erasing_is_reported() {
        let g = Cfg::parse_rules(
            vec![Symbol::new("S"), Symbol::new("A")],
            Alphabet::from_names(["a"]),
            &["S -> A S".into(), "A -> %eps".into(), "S -> %eps".into()],
            Symbol::new("S"),
        )
        .unwrap();
        let v = g.erasing_violations();
        assert_eq!(v.len(), 2);
        assert!(v[0].contains("erasing rule"));
    }

    #[test]
    fn unknown_symbol() {
        let err =
            Cfg::parse_rules(vec![Symbol::new("S")], Alphabet::from_names(["a"]), &["S -> b".into()], Symbol::new("S"))
                .unwrap_err();
        assert!(matches!(err, Error::UnknownSymbol(_)));
    }
}
