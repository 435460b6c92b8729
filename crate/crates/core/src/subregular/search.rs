//! Exact bounded search for right-linear grammars.
//!
//! The search grows grammars from the empty rule set. At each node it
//! takes the shortest word of `L` the grammar misses and branches over every
//! way that word could be derived within the budget, adding the rules the
//! derivation needs. Grammars generating a word outside `L` are discarded,
//! since adding rules never shrinks the language. Every inclusion-minimal
//! grammar for `L` within the budget is reached this way, so the search is
//! exact: if no node covers `L`, no grammar within the budget exists.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::regular::{Dfa, Nfa, RightLinearGrammar, RlgRule, DEFAULT_STATE_CAP};
use crate::symbol::{NameSupply, Word};

pub const DEFAULT_NODE_CAP: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_vars: usize,
    pub max_prods: usize,
    pub max_rhs_len: usize,
}

impl SearchBudget {
    pub fn new(max_vars: usize, max_prods: usize, max_rhs_len: usize) -> SearchBudget {
        SearchBudget { max_vars, max_prods, max_rhs_len }
    }
}

impl std::fmt::Display for SearchBudget {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{},{},{}}}", self.max_vars, self.max_prods, self.max_rhs_len)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    /// The least grammar within budget, or `None`.
    pub grammar: Option<RightLinearGrammar>,
    /// Distinct grammars (up to renaming) examined.
    pub nodes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Rule {
    lhs: usize,
    body: Vec<usize>,
    next: Option<usize>,
}

type Key = (usize, usize, Vec<Rule>);

struct Search<'a> {
    d: &'a Dfa,
    budget: SearchBudget,
    cap: usize,
    seen: HashSet<Vec<Rule>>,
    best: Option<Key>,
    letters: Vec<usize>,
}

enum Check {
    Unsound,
    Missing(Vec<usize>),
    Exact,
}

pub fn search_rlg(d: &Dfa, budget: SearchBudget) -> Result<SearchResult> {
    search_rlg_capped(d, budget, DEFAULT_NODE_CAP)
}

pub fn search_rlg_capped(d: &Dfa, budget: SearchBudget, cap: usize) -> Result<SearchResult> {
    if budget.max_vars == 0 || budget.max_prods == 0 || budget.max_rhs_len == 0 {
        return Err(Error::InvalidArgument(format!("budget components must be at least 1, got {budget}")));
    }
    let letters = letters_used(d);
    let mut s = Search { d, budget, cap, seen: HashSet::new(), best: None, letters };
    s.node(Vec::new())?;
    let grammar = s.best.take().map(|(_, _, rules)| to_grammar(d, &rules));
    Ok(SearchResult { grammar, nodes: s.seen.len() })
}

impl Search<'_> {
    fn node(&mut self, rules: Vec<Rule>) -> Result<()> {
        let rules = canonical(rules, self.budget.max_vars);
        if !self.seen.insert(rules.clone()) {
            return Ok(());
        }
        if self.seen.len() > self.cap {
            return Err(Error::ResourceLimit { what: "grammar search nodes", cap: self.cap });
        }
        match check(self.d, &rules)? {
            Check::Unsound => Ok(()),
            Check::Exact => {
                let key = solution_key(rules);
                if self.best.as_ref().is_none_or(|b| key < *b) {
                    self.best = Some(key);
                }
                Ok(())
            }
            Check::Missing(w) => {
                let limit = self.rule_limit();
                if rules.len() + self.still_needed(&rules) > limit || rules.len() >= limit {
                    return Ok(());
                }
                let used = vars_used(&rules);
                let mut path = vec![(0usize, 0usize)];
                let mut added = Vec::new();
                self.derive(&rules, &w, 0, 0, used, limit, &mut path, &mut added)
            }
        }
    }

    /// Grammars with more rules than the best solution so far cannot win.
    fn rule_limit(&self) -> usize {
        match &self.best {
            Some((n, _, _)) => (*n).min(self.budget.max_prods),
            None => self.budget.max_prods,
        }
    }

    /// Lower bound on rules any covering extension must still add: letters
    /// of `L` absent from every body, and referenced variables with no rules.
    fn still_needed(&self, rules: &[Rule]) -> usize {
        let uncovered = self.letters.iter().filter(|a| !rules.iter().any(|r| r.body.contains(a))).count();
        let dangling = rules
            .iter()
            .filter_map(|r| r.next)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .filter(|&v| !rules.iter().any(|r| r.lhs == v))
            .count();
        let r = self.budget.max_rhs_len;
        dangling + uncovered.saturating_sub(dangling * r).div_ceil(r)
    }

    #[allow(clippy::too_many_arguments)]
    fn derive(
        &mut self,
        base: &[Rule],
        w: &[usize],
        pos: usize,
        var: usize,
        used: usize,
        limit: usize,
        path: &mut Vec<(usize, usize)>,
        added: &mut Vec<Rule>,
    ) -> Result<()> {
        let rest = w.len() - pos;
        for j in 0..=self.budget.max_rhs_len.min(rest) {
            let body = &w[pos..pos + j];
            if j == rest {
                let rule = Rule { lhs: var, body: body.to_vec(), next: None };
                if let Some(fresh) = self.admit(base, added, &rule, limit) {
                    let mut rules = base.to_vec();
                    rules.extend(added.iter().cloned());
                    if fresh {
                        rules.push(rule);
                    }
                    self.node(rules)?;
                }
            }
            let top = if used < self.budget.max_vars { used + 1 } else { used };
            for next in 0..top {
                if path.contains(&(pos + j, next)) {
                    continue;
                }
                let rule = Rule { lhs: var, body: body.to_vec(), next: Some(next) };
                let Some(fresh) = self.admit(base, added, &rule, limit) else { continue };
                if fresh {
                    added.push(rule);
                }
                path.push((pos + j, next));
                let used_after = used.max(next + 1);
                self.derive(base, w, pos + j, next, used_after, limit, path, added)?;
                path.pop();
                if fresh {
                    added.pop();
                }
            }
        }
        Ok(())
    }

    /// `Some(true)` if the rule is new and fits, `Some(false)` if already present.
    fn admit(&self, base: &[Rule], added: &[Rule], rule: &Rule, limit: usize) -> Option<bool> {
        if base.contains(rule) || added.contains(rule) {
            Some(false)
        } else if base.len() + added.len() < limit {
            Some(true)
        } else {
            None
        }
    }
}

/// Letters occurring in some word of `L(d)`.
fn letters_used(d: &Dfa) -> Vec<usize> {
    let reach = d.reachable();
    let live = d.live();
    (0..d.alphabet().len()).filter(|&a| (0..d.num_states()).any(|q| reach[q] && live[d.next(q, a)])).collect()
}

fn vars_used(rules: &[Rule]) -> usize {
    rules.iter().flat_map(|r| std::iter::once(r.lhs).chain(r.next)).max().map_or(1, |m| m + 1)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Least sorted rule list over all renamings that fix the start variable.
fn canonical(rules: Vec<Rule>, max_vars: usize) -> Vec<Rule> {
    let n = vars_used(&rules).min(max_vars.max(1));
    let mut best: Option<Vec<Rule>> = None;
    for p in permutations(n.saturating_sub(1)) {
        let map = |v: usize| if v == 0 { 0 } else { p[v - 1] + 1 };
        let mut renamed: Vec<Rule> =
            rules.iter().map(|r| Rule { lhs: map(r.lhs), body: r.body.clone(), next: r.next.map(map) }).collect();
        renamed.sort();
        renamed.dedup();
        if best.as_ref().is_none_or(|b| renamed < *b) {
            best = Some(renamed);
        }
    }
    best.unwrap_or_default()
}

fn solution_key(rules: Vec<Rule>) -> Key {
    let total = rules.iter().map(|r| r.body.len()).sum();
    (rules.len(), total, rules)
}

fn to_nfa(d: &Dfa, rules: &[Rule]) -> Nfa {
    let alpha = d.alphabet();
    let mut nfa = Nfa::new(alpha.clone());
    let vars = vars_used(rules);
    for _ in 0..vars {
        nfa.add_state();
    }
    let accept = nfa.add_state();
    nfa.set_final(accept, true);
    nfa.add_start(0);
    for r in rules {
        let body: Vec<_> = r.body.iter().map(|&a| alpha.get(a)).collect();
        nfa.add_word_path(r.lhs, &body, r.next.unwrap_or(accept)).expect("letters come from the alphabet");
    }
    nfa
}

/// Soundness (`L(G) ⊆ L`) and the shortest missing word, in one product walk.
fn check(d: &Dfa, rules: &[Rule]) -> Result<Check> {
    let g = to_nfa(d, rules).determinize(DEFAULT_STATE_CAP)?;
    let width = d.alphabet().len();
    let gn = g.num_states();
    let idx = |p: usize, q: usize| p * d.num_states() + q;
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; gn * d.num_states()];
    let mut seen = vec![false; gn * d.num_states()];
    let root = idx(g.start(), d.start());
    seen[root] = true;
    let mut queue = VecDeque::from([(g.start(), d.start())]);
    let mut missing: Option<usize> = None;
    while let Some((p, q)) = queue.pop_front() {
        if g.is_final(p) && !d.is_final(q) {
            return Ok(Check::Unsound);
        }
        if missing.is_none() && !g.is_final(p) && d.is_final(q) {
            missing = Some(idx(p, q));
        }
        for a in 0..width {
            let (p2, q2) = (g.next(p, a), d.next(q, a));
            let i = idx(p2, q2);
            if !seen[i] {
                seen[i] = true;
                parent[i] = Some((idx(p, q), a));
                queue.push_back((p2, q2));
            }
        }
    }
    Ok(match missing {
        None => Check::Exact,
        Some(mut i) => {
            let mut w = Vec::new();
            while let Some((from, a)) = parent[i] {
                w.push(a);
                i = from;
            }
            w.reverse();
            Check::Missing(w)
        }
    })
}

fn to_grammar(d: &Dfa, rules: &[Rule]) -> RightLinearGrammar {
    let alpha = d.alphabet();
    let mut names = NameSupply::new(alpha.symbols().iter().copied());
    let n = vars_used(rules);
    let vars: Vec<_> =
        (0..n)
            .map(|v| {
                if v == 0 {
                    names.fresh("S")
                } else {
                    names.fresh(&((b'A' + ((v - 1) % 26) as u8) as char).to_string())
                }
            })
            .collect();
    let out: Vec<RlgRule> = rules
        .iter()
        .map(|r| {
            let body: Word = r.body.iter().map(|&a| alpha.get(a)).collect();
            RlgRule::new(vars[r.lhs], body, r.next.map(|v| vars[v]))
        })
        .collect();
    RightLinearGrammar::new(vars.clone(), alpha.clone(), out, vars[0]).expect("search output is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regular::regex_compile;
    use crate::symbol::Alphabet;

    fn lang(re: &str, letters: &[&str]) -> Dfa {
        regex_compile(re, &Alphabet::from_names(letters.iter().copied())).unwrap()
    }

    #[test]
    fn single_letter() {
        let r = search_rlg(&lang("a", &["a"]), SearchBudget::new(1, 1, 1)).unwrap();
        assert_eq!(r.grammar.unwrap().rule_strings(), vec!["S -> a"]);
    }

    #[test]
    fn multiples_of_three() {
        let r = search_rlg(&lang("aaa(aaa)*", &["a"]), SearchBudget::new(1, 2, 3)).unwrap();
        let g = r.grammar.unwrap();
        let mut rules = g.rule_strings();
        rules.sort();
        assert_eq!(rules, vec!["S -> a a a", "S -> a a a S"]);
    }

    #[test]
    fn l7_has_no_one_variable_grammar() {
        let d = lang("ab*a|a", &["a", "b"]);
        assert!(search_rlg(&d, SearchBudget::new(1, 6, 4)).unwrap().grammar.is_none());
        let two = search_rlg(&d, SearchBudget::new(2, 4, 1)).unwrap().grammar.unwrap();
        assert!(two.to_dfa().unwrap().equivalent(&d).unwrap());
    }

    #[test]
    fn universal_language_needs_n_plus_one_rules() {
        let d = lang("(a|b)*", &["a", "b"]);
        assert!(search_rlg(&d, SearchBudget::new(2, 2, 4)).unwrap().grammar.is_none());
        let g = search_rlg(&d, SearchBudget::new(1, 3, 1)).unwrap().grammar.unwrap();
        assert_eq!(g.prod_count(), 3);
    }

    #[test]
    fn empty_language_has_empty_grammar() {
        let d = Dfa::empty(Alphabet::from_names(["a"]));
        let g = search_rlg(&d, SearchBudget::new(1, 1, 1)).unwrap().grammar.unwrap();
        assert_eq!(g.prod_count(), 0);
    }

    #[test]
    fn zero_budget_is_rejected() {
        assert!(search_rlg(&lang("a", &["a"]), SearchBudget::new(0, 1, 1)).is_err());
    }

    #[test]
    fn node_cap_is_enforced() {
        let d = lang("(a|b)*", &["a", "b"]);
        let err = search_rlg_capped(&d, SearchBudget::new(3, 4, 3), 2).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { .. }));
    }
}
