//! Monotone grammar to Kuroda normal form in three phases:
//!
//! 1. terminal separation: every terminal inside a rule that is not already
//!    `A → a` is replaced by a proxy `X_a` with the rule `X_a → a`;
//! 2. body splitting: `A → B1 B2 … Bn` (`n ≥ 3`) becomes
//!    `A → B1 Y`, `Y → B2 … Bn`, recursively, with one `Y` per distinct suffix;
//! 3. context chaining: `A1 … Am → B1 … Bn` (`m ≥ 2`, not `2 → 2`) becomes
//!    `A1 A2 → B1 W2`, `Wi A(i+1) → Bi W(i+1)` and finally `Wm → Bm … Bn`,
//!    with fresh `W` symbols per rule.

use std::collections::HashMap;

use crate::symbol::{NameSupply, Symbol};
use crate::transforms::grammar::{KurodaGrammar, MonotoneGrammar, Production};

struct Builder {
    names: NameSupply,
    vars: Vec<Symbol>,
    rules: Vec<Production>,
    proxies: HashMap<Symbol, Symbol>,
    suffixes: HashMap<Vec<Symbol>, Symbol>,
    y_count: usize,
    w_count: usize,
}

impl Builder {
    fn fresh_var(&mut self, base: &str) -> Symbol {
        let v = self.names.fresh(base);
        self.vars.push(v);
        v
    }

    fn proxy(&mut self, t: Symbol) -> Symbol {
        if let Some(&x) = self.proxies.get(&t) {
            return x;
        }
        let x = self.fresh_var(&format!("X_{}", t.name()));
        self.proxies.insert(t, x);
        self.rules.push(Production::new(vec![x], vec![t]));
        x
    }

    /// Nonterminal deriving exactly `suffix` (length ≥ 2).
    fn suffix_var(&mut self, suffix: &[Symbol]) -> Symbol {
        if let Some(&y) = self.suffixes.get(suffix) {
            return y;
        }
        self.y_count += 1;
        let y = self.fresh_var(&format!("Y_{}", self.y_count));
        self.suffixes.insert(suffix.to_vec(), y);
        self.emit_unit(y, suffix);
        y
    }

    /// `lhs → body` for a nonempty all-nonterminal body, split to width ≤ 2.
    fn emit_unit(&mut self, lhs: Symbol, body: &[Symbol]) {
        if body.len() <= 2 {
            self.rules.push(Production::new(vec![lhs], body.to_vec()));
        } else {
            let y = self.suffix_var(&body[1..]);
            self.rules.push(Production::new(vec![lhs], vec![body[0], y]));
        }
    }

    fn emit_context(&mut self, lhs: &[Symbol], rhs: &[Symbol]) {
        let m = lhs.len();
        if m == 2 && rhs.len() == 2 {
            self.rules.push(Production::new(lhs.to_vec(), rhs.to_vec()));
            return;
        }
        let ws: Vec<Symbol> = (2..=m)
            .map(|_| {
                self.w_count += 1;
                let name = format!("W_{}", self.w_count);
                self.fresh_var(&name)
            })
            .collect();
        // ws[i - 2] is W_i
        self.rules.push(Production::new(vec![lhs[0], lhs[1]], vec![rhs[0], ws[0]]));
        for i in 2..m {
            self.rules.push(Production::new(vec![ws[i - 2], lhs[i]], vec![rhs[i - 1], ws[i - 1]]));
        }
        self.emit_unit(ws[m - 2], &rhs[m - 1..]);
    }
}

pub fn monotone_to_kuroda(g: &MonotoneGrammar) -> KurodaGrammar {
    let taken = g.vars().iter().chain(g.terminals().symbols()).copied();
    let mut b = Builder {
        names: NameSupply::new(taken),
        vars: g.vars().to_vec(),
        rules: Vec::new(),
        proxies: HashMap::new(),
        suffixes: HashMap::new(),
        y_count: 0,
        w_count: 0,
    };
    let is_term = |s: &Symbol| g.terminals().contains(*s);

    // phase 1
    let mut separated = Vec::new();
    for r in g.rules() {
        let keep = r.rhs.is_empty() || (r.lhs.len() == 1 && r.rhs.len() == 1 && is_term(&r.rhs[0]));
        if keep {
            separated.push(r.clone());
            continue;
        }
        let mut sub = |side: &[Symbol]| -> Vec<Symbol> {
            side.iter().map(|s| if is_term(s) { b.proxy(*s) } else { *s }).collect()
        };
        let lhs = sub(&r.lhs);
        let rhs = sub(&r.rhs);
        separated.push(Production::new(lhs, rhs));
    }

    // phases 2 and 3
    for r in separated {
        if r.rhs.is_empty() || (r.lhs.len() == 1 && r.rhs.len() == 1 && is_term(&r.rhs[0])) {
            b.rules.push(r);
        } else if r.lhs.len() == 1 {
            b.emit_unit(r.lhs[0], &r.rhs);
        } else {
            b.emit_context(&r.lhs, &r.rhs);
        }
    }
    KurodaGrammar::new(b.vars, g.terminals().clone(), b.rules, g.start()).expect("construction yields Kuroda shapes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::{Alphabet, Word};

    fn mono(vars: &[&str], terms: &[&str], rules: &[&str]) -> MonotoneGrammar {
        MonotoneGrammar::parse_rules(
            vars.iter().map(|v| Symbol::new(v)).collect(),
            Alphabet::from_names(terms.iter().copied()),
            &rules.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            Symbol::new(vars[0]),
        )
        .unwrap()
    }

    fn rule_set(k: &KurodaGrammar) -> Vec<String> {
        k.rules().iter().map(|r| r.to_string()).collect()
    }

    #[test]
    fn terminal_separation() {
        let k = monotone_to_kuroda(&mono(&["A", "B"], &["a"], &["A -> a B", "B -> a"]));
        assert_eq!(rule_set(&k), vec!["A -> X_a B", "B -> a", "X_a -> a"]);
    }

    #[test]
    fn context_rule_kept() {
        let k = monotone_to_kuroda(&mono(&["S", "B", "C"], &["a"], &["C B -> B C", "S -> a"]));
        assert!(rule_set(&k).contains(&"C B -> B C".to_string()));
        assert_eq!(k.rules().len(), 2);
    }

    #[test]
    fn body_splitting() {
        let k = monotone_to_kuroda(&mono(&["A", "B", "C", "D"], &["a"], &["A -> B C D"]));
        assert_eq!(rule_set(&k), vec!["A -> B Y_1", "Y_1 -> C D"]);
    }

    #[test]
    fn long_context_rule() {
        let g = mono(&["S", "A", "B", "C"], &["a", "b"], &["S -> A B C", "A B C -> a b b a", "S -> a"]);
        let k = monotone_to_kuroda(&g);
        assert_eq!(k.enumerate(4).unwrap(), vec![Word::chars("a"), Word::chars("abba")]);
        assert_eq!(g.enumerate(4).unwrap(), k.enumerate(4).unwrap());
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let k = monotone_to_kuroda(&mono(&["S", "X_a"], &["a"], &["S -> a X_a", "X_a -> a"]));
        assert!(k.vars().iter().any(|v| v.name() == "X_a'"));
        assert_eq!(k.enumerate(3).unwrap(), vec![Word::chars("aa")]);
    }
}
