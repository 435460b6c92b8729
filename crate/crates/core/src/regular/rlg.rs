use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::regular::dfa::Dfa;
use crate::regular::nfa::Nfa;
use crate::symbol::{Alphabet, NameSupply, Symbol, Word};

/// A rule `lhs → body next` with `body` a terminal word and `next` an
/// optional nonterminal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RlgRule {
    pub lhs: Symbol,
    pub body: Word,
    pub next: Option<Symbol>,
}

impl RlgRule {
    pub fn new(lhs: Symbol, body: Word, next: Option<Symbol>) -> RlgRule {
        RlgRule { lhs, body, next }
    }

    pub fn terminating(lhs: Symbol, body: Word) -> RlgRule {
        RlgRule { lhs, body, next: None }
    }

    pub fn continuing(lhs: Symbol, body: Word, next: Symbol) -> RlgRule {
        RlgRule { lhs, body, next: Some(next) }
    }
}

impl fmt::Display for RlgRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ->", self.lhs)?;
        if self.body.is_empty() && self.next.is_none() {
            return write!(f, " %eps");
        }
        for s in self.body.iter() {
            write!(f, " {s}")?;
        }
        if let Some(n) = self.next {
            write!(f, " {n}")?;
        }
        Ok(())
    }
}

/// Right-linear grammar `(N, T, P, S)`; rules are kept sorted and unique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightLinearGrammar {
    vars: Vec<Symbol>,
    terminals: Alphabet,
    rules: Vec<RlgRule>,
    start: Symbol,
}

impl RightLinearGrammar {
    pub fn new(vars: Vec<Symbol>, terminals: Alphabet, rules: Vec<RlgRule>, start: Symbol) -> Result<Self> {
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
                return Err(Error::InvalidGrammar(format!("rule `{r}`: unknown nonterminal `{}`", r.lhs)));
            }
            if let Some(n) = r.next {
                if !var_set.contains(&n) {
                    return Err(Error::InvalidGrammar(format!("rule `{r}`: unknown nonterminal `{n}`")));
                }
            }
            if let Some(s) = r.body.iter().find(|s| !terminals.contains(**s)) {
                return Err(Error::InvalidGrammar(format!("rule `{r}`: `{s}` is not a terminal")));
            }
        }
        let rules: Vec<RlgRule> = rules.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        Ok(RightLinearGrammar { vars, terminals, rules, start })
    }

    /// Parses rules such as `S -> a b S`, `S -> a` or `S -> %eps`. The last
    /// token of a body is the continuation if it names a nonterminal.
    pub fn parse_rules(vars: Vec<Symbol>, terminals: Alphabet, lines: &[String], start: Symbol) -> Result<Self> {
        let var_set: HashSet<Symbol> = vars.iter().copied().collect();
        let mut rules = Vec::new();
        for line in lines {
            let (lhs, rhs) = split_rule(line)?;
            let lhs = Symbol::new(lhs);
            let mut body: Vec<Symbol> = Word::parse(rhs).into_vec();
            let next = match body.last() {
                Some(s) if var_set.contains(s) => body.pop(),
                _ => None,
            };
            rules.push(RlgRule { lhs, body: Word::new(body), next });
        }
        RightLinearGrammar::new(vars, terminals, rules, start)
    }

    pub fn vars(&self) -> &[Symbol] {
        &self.vars
    }

    pub fn terminals(&self) -> &Alphabet {
        &self.terminals
    }

    pub fn rules(&self) -> &[RlgRule] {
        &self.rules
    }

    pub fn start(&self) -> Symbol {
        self.start
    }

    /// Var(G) = |N|.
    pub fn var_count(&self) -> usize {
        self.vars.len()
    }

    /// Prod(G) = |P|.
    pub fn prod_count(&self) -> usize {
        self.rules.len()
    }

    /// One state per nonterminal plus a single accepting state.
    pub fn to_nfa(&self) -> Nfa {
        let mut nfa = Nfa::new(self.terminals.clone());
        let ids: HashMap<Symbol, usize> = self.vars.iter().map(|v| (*v, nfa.add_state())).collect();
        let accept = nfa.add_state();
        nfa.set_final(accept, true);
        nfa.add_start(ids[&self.start]);
        for r in &self.rules {
            let to = r.next.map(|n| ids[&n]).unwrap_or(accept);
            nfa.add_word_path(ids[&r.lhs], &r.body, to).expect("bodies are validated against the terminal alphabet");
        }
        nfa
    }

    pub fn to_dfa(&self) -> Result<Dfa> {
        self.to_nfa().to_min_dfa()
    }

    /// Grammar with one nonterminal per useful DFA state: `Q → a P` for each
    /// transition between useful states and `Q → λ` for final states. The
    /// sink and unreachable states contribute nothing.
    pub fn from_dfa(d: &Dfa) -> RightLinearGrammar {
        let reach = d.reachable();
        let live = d.live();
        let useful: Vec<bool> = (0..d.num_states()).map(|q| reach[q] && live[q]).collect();
        let mut names = NameSupply::new(d.alphabet().symbols().iter().copied());
        let mut var_of: Vec<Option<Symbol>> = vec![None; d.num_states()];
        let start = names.fresh("S");
        var_of[d.start()] = Some(start);
        let mut vars = vec![start];
        let mut counter = 1;
        for q in 0..d.num_states() {
            if useful[q] && var_of[q].is_none() {
                let v = names.fresh(&format!("Q{counter}"));
                counter += 1;
                var_of[q] = Some(v);
                vars.push(v);
            }
        }
        let mut rules = Vec::new();
        for q in 0..d.num_states() {
            if !useful[q] {
                continue;
            }
            let lhs = var_of[q].unwrap();
            for a in 0..d.alphabet().len() {
                let p = d.next(q, a);
                if useful[p] {
                    rules.push(RlgRule::continuing(lhs, Word::new(vec![d.alphabet().get(a)]), var_of[p].unwrap()));
                }
            }
            if d.is_final(q) {
                rules.push(RlgRule::terminating(lhs, Word::empty()));
            }
        }
        RightLinearGrammar::new(vars, d.alphabet().clone(), rules, start).expect("constructed grammar is well-formed")
    }

    /// Inlines non-start nonterminals whose rules all terminate, then drops
    /// nonterminals that no longer occur. The language is unchanged.
    pub fn reduce(&self) -> RightLinearGrammar {
        let mut rules = self.rules.clone();
        loop {
            let candidate = self.vars.iter().copied().find(|&v| {
                v != self.start
                    && rules.iter().any(|r| r.next == Some(v))
                    && rules.iter().filter(|r| r.lhs == v).all(|r| r.next.is_none())
            });
            let Some(v) = candidate else { break };
            let endings: Vec<Word> = rules.iter().filter(|r| r.lhs == v).map(|r| r.body.clone()).collect();
            let mut next_rules = Vec::new();
            for r in rules.into_iter().filter(|r| r.lhs != v) {
                if r.next == Some(v) {
                    for e in &endings {
                        next_rules.push(RlgRule::terminating(r.lhs, r.body.concat(e)));
                    }
                } else {
                    next_rules.push(r);
                }
            }
            rules = next_rules;
        }
        let used: HashSet<Symbol> = rules.iter().flat_map(|r| std::iter::once(r.lhs).chain(r.next)).collect();
        let vars: Vec<Symbol> = self.vars.iter().copied().filter(|v| *v == self.start || used.contains(v)).collect();
        rules.retain(|r| vars.contains(&r.lhs));
        RightLinearGrammar::new(vars, self.terminals.clone(), rules, self.start)
            .expect("reduction keeps well-formedness")
    }

    /// Sum of body lengths (terminal parts).
    pub fn total_body_len(&self) -> usize {
        self.rules.iter().map(|r| r.body.len()).sum()
    }

    pub fn rule_strings(&self) -> Vec<String> {
        self.rules.iter().map(|r| r.to_string()).collect()
    }
}

impl fmt::Display for RightLinearGrammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rules: Vec<String> = self.rule_strings();
        write!(f, "{{{}}}", rules.join(", "))
    }
}

/// Splits `A -> body` (also accepts `→`).
pub(crate) fn split_rule(line: &str) -> Result<(&str, &str)> {
    let (lhs, rhs) = line
        .split_once("->")
        .or_else(|| line.split_once('→'))
        .ok_or_else(|| Error::Format(format!("rule `{line}` lacks `->`")))?;
    Ok((lhs.trim(), rhs.trim()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regular::regex::regex_compile;

    fn s(n: &str) -> Symbol {
        Symbol::new(n)
    }

    #[test]
    fn single_rule_grammar() {
        let g = RightLinearGrammar::new(
            vec![s("S")],
            Alphabet::from_names(["a"]),
            vec![RlgRule::terminating(s("S"), Word::chars("a"))],
            s("S"),
        )
        .unwrap();
        let d = g.to_dfa().unwrap();
        assert_eq!(d.enumerate(4), vec![Word::chars("a")]);
    }

    #[test]
    fn multiples_of_three_grammar() {
        let a = Alphabet::from_names(["a"]);
        let g = RightLinearGrammar::parse_rules(
            vec![s("S")],
            a.clone(),
            &["S -> a a a S".into(), "S -> a a a".into()],
            s("S"),
        )
        .unwrap();
        assert!(g.to_dfa().unwrap().equivalent(&regex_compile("aaa(aaa)*", &a).unwrap()).unwrap());
    }

    #[test]
    fn from_dfa_round_trip() {
        let ab = Alphabet::from_names(["a", "b"]);
        let d = regex_compile("a*b(a|b)*", &ab).unwrap();
        let g = RightLinearGrammar::from_dfa(&d);
        assert_eq!(g.var_count(), 2);
        assert!(g.prod_count() <= d.num_states() * ab.len() + 1);
        assert!(g.to_dfa().unwrap().equivalent(&d).unwrap());
    }

    #[test]
    fn universal_dfa_needs_one_variable() {
        let d = Dfa::universal(Alphabet::from_names(["a"]));
        assert_eq!(RightLinearGrammar::from_dfa(&d).var_count(), 1);
    }

    #[test]
    fn single_word_reduces_to_one_rule() {
        let a = Alphabet::from_names(["a"]);
        let g = RightLinearGrammar::from_dfa(&regex_compile("a", &a).unwrap()).reduce();
        assert_eq!(g.rule_strings(), vec!["S -> a"]);
        assert_eq!(g.var_count(), 1);
    }

    #[test]
    fn rejects_bad_shapes() {
        let a = Alphabet::from_names(["a"]);
        assert!(RightLinearGrammar::new(vec![s("a")], a.clone(), vec![], s("a")).is_err());
        assert!(RightLinearGrammar::new(vec![s("S")], a, vec![RlgRule::terminating(s("S"), Word::chars("b"))], s("S"))
            .is_err());
    }
}
