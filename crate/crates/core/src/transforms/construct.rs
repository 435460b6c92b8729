//! Kuroda grammar to tree-controlled grammar with a strictly locally
//! 2-testable control language, plus the alternative control descriptions
//! (one-variable grammar, union-free expression) and the single-word
//! control semantics.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Result;
use crate::regular::{Dfa, Regex, RightLinearGrammar, RlgRule};
use crate::subregular::SltDescription;
use crate::symbol::{Alphabet, NameSupply, Symbol, Word};
use crate::transforms::grammar::{KurodaGrammar, KurodaShape};
use crate::treectrl::{Cfg, CfgRule, TcGrammar};

/// A labelled context rule `p: AB → CD` and its two markers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Marker {
    pub label: usize,
    pub rule: [Symbol; 4],
    pub first: Symbol,
    pub second: Symbol,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TcConstruction {
    pub tc: TcGrammar,
    pub control_desc: SltDescription,
    /// `N ∪ {â}`
    pub n_cf: Vec<Symbol>,
    pub n1: Vec<Symbol>,
    pub n2: Vec<Symbol>,
    pub n12: Vec<(Symbol, Symbol)>,
    pub p_cf: Vec<CfgRule>,
    pub p_t: Vec<CfgRule>,
    pub p_d: Vec<CfgRule>,
    pub p_cs: Vec<CfgRule>,
    /// `S → λ` when the source has it.
    pub p_erase: Vec<CfgRule>,
    pub hat_map: BTreeMap<Symbol, Symbol>,
    pub markers: Vec<Marker>,
}

impl TcConstruction {
    /// The control words `x ∈ N_cf ∪ N12` whose star is the control language.
    pub fn control_units(&self) -> Vec<Word> {
        let mut out: Vec<Word> = self.n_cf.iter().map(|&s| Word::new(vec![s])).collect();
        out.extend(self.n12.iter().map(|&(a, b)| Word::new(vec![a, b])));
        out
    }
}

pub fn kuroda_to_tc(g: &KurodaGrammar) -> TcConstruction {
    let taken = g.vars().iter().chain(g.terminals().symbols()).copied();
    let mut names = NameSupply::new(taken);
    let s = g.start();
    let erases = g.rules().iter().any(|r| g.shape(r) == KurodaShape::Erase);

    let mut hat_map = BTreeMap::new();
    let mut hats = Vec::new();
    for &a in g.terminals().symbols() {
        let h = names.fresh(&format!("hat_{}", a.name()));
        hat_map.insert(a, h);
        hats.push(h);
    }
    let mut n_cf: Vec<Symbol> = g.vars().to_vec();
    n_cf.extend(&hats);

    let (mut p_cf, mut p_t, mut p_d, mut p_cs, mut p_erase) = (vec![], vec![], vec![], vec![], vec![]);
    let (mut n1, mut n2, mut n12, mut markers) = (vec![], vec![], vec![], vec![]);
    let mut label = 0;
    for r in g.rules() {
        match g.shape(r) {
            KurodaShape::Binary => p_cf.push(CfgRule::new(r.lhs[0], r.rhs.clone())),
            // `A → A` coincides with the delay rule
            KurodaShape::Chain if r.lhs == r.rhs => {}
            KurodaShape::Chain => p_cf.push(CfgRule::new(r.lhs[0], r.rhs.clone())),
            KurodaShape::Terminal => p_t.push(CfgRule::new(r.lhs[0], vec![hat_map[&r.rhs[0]]])),
            KurodaShape::Erase => p_erase.push(CfgRule::new(s, vec![])),
            KurodaShape::Context => {
                label += 1;
                let (a, b, c, d) = (r.lhs[0], r.lhs[1], r.rhs[0], r.rhs[1]);
                let m1 = names.fresh(&format!("M_{label}_1"));
                let m2 = names.fresh(&format!("M_{label}_2"));
                p_cs.push(CfgRule::new(a, vec![m1]));
                p_cs.push(CfgRule::new(b, vec![m2]));
                p_cs.push(CfgRule::new(m1, vec![c]));
                p_cs.push(CfgRule::new(m2, vec![d]));
                n1.push(m1);
                n2.push(m2);
                n12.push((m1, m2));
                markers.push(Marker { label, rule: [a, b, c, d], first: m1, second: m2 });
            }
        }
    }
    for (&a, &h) in &hat_map {
        p_t.push(CfgRule::new(h, vec![a]));
    }
    for &v in &n_cf {
        if !(erases && v == s) {
            p_d.push(CfgRule::new(v, vec![v]));
        }
    }

    let mut vars = n_cf.clone();
    vars.extend(&n1);
    vars.extend(&n2);
    let rules: Vec<CfgRule> = p_cf.iter().chain(&p_t).chain(&p_d).chain(&p_cs).chain(&p_erase).cloned().collect();
    let core = Cfg::new(vars, g.terminals().clone(), rules, s).expect("construction is well-formed");
    let alphabet = core.symbols();

    let unit_regex = Regex::union_all(
        n_cf.iter()
            .map(|&x| Regex::lit(x))
            .chain(n12.iter().map(|&(a, b)| Regex::concat(Regex::lit(a), Regex::lit(b)))),
    );
    let control = Regex::star(unit_regex).compile(&alphabet).expect("control symbols are in the alphabet");
    let control_desc = proof_quadruple(&alphabet, &n_cf, &n1, &n2, &n12);

    TcConstruction {
        tc: TcGrammar::new(core, control),
        control_desc,
        n_cf,
        n1,
        n2,
        n12,
        p_cf,
        p_t,
        p_d,
        p_cs,
        p_erase,
        hat_map,
        markers,
    }
}

/// `B = N_cf² ∪ N_cf N1 ∪ N12`,
/// `I = N_cf² ∪ N_cf N1 ∪ N12 ∪ N2 N_cf ∪ N2 N1`,
/// `E = N_cf² ∪ N12 ∪ N2 N_cf`, `F = N_cf ∪ {λ}`.
fn proof_quadruple(
    alphabet: &Alphabet,
    n_cf: &[Symbol],
    n1: &[Symbol],
    n2: &[Symbol],
    n12: &[(Symbol, Symbol)],
) -> SltDescription {
    let prod = |xs: &[Symbol], ys: &[Symbol]| -> BTreeSet<Word> {
        xs.iter().flat_map(|&x| ys.iter().map(move |&y| Word::new(vec![x, y]))).collect()
    };
    let cf2 = prod(n_cf, n_cf);
    let cf1 = prod(n_cf, n1);
    let p12: BTreeSet<Word> = n12.iter().map(|&(a, b)| Word::new(vec![a, b])).collect();
    let two_cf = prod(n2, n_cf);
    let two_one = prod(n2, n1);
    let union = |sets: &[&BTreeSet<Word>]| -> BTreeSet<Word> { sets.iter().flat_map(|s| s.iter().cloned()).collect() };
    let b = union(&[&cf2, &cf1, &p12]);
    let i = union(&[&cf2, &cf1, &p12, &two_cf, &two_one]);
    let e = union(&[&cf2, &p12, &two_cf]);
    let mut f: BTreeSet<Word> = n_cf.iter().map(|&x| Word::new(vec![x])).collect();
    f.insert(Word::empty());
    SltDescription::new(2, alphabet.clone(), b, i, e, f).expect("proof sets have the right widths")
}

/// `S' → x S'`, `S' → x` for every unit `x`, and `S' → λ`.
pub fn one_var_star_grammar(units: &[Word], alphabet: &Alphabet) -> Result<RightLinearGrammar> {
    let mut names = NameSupply::new(alphabet.symbols().iter().copied());
    let sv = names.fresh("S'");
    let mut rules = vec![RlgRule::terminating(sv, Word::empty())];
    for x in units {
        rules.push(RlgRule::continuing(sv, x.clone(), sv));
        rules.push(RlgRule::terminating(sv, x.clone()));
    }
    RightLinearGrammar::new(vec![sv], alphabet.clone(), rules, sv)
}

pub fn control_rlg_one_var(c: &TcConstruction) -> RightLinearGrammar {
    one_var_star_grammar(&c.control_units(), c.tc.control.alphabet()).expect("units are over the control alphabet")
}

/// `({w1}* {w2}* ⋯ {wn}*)*`
pub fn star_of_finite_union_free(words: &[Word]) -> Regex {
    let mut ws: Vec<Word> = words.to_vec();
    ws.sort();
    ws.dedup();
    Regex::star(Regex::concat_all(ws.iter().map(|w| Regex::star(Regex::word(w)))))
}

/// Language of a TC grammar whose control has at most one word: the
/// terminal bodies of the start symbol if the control is exactly `{S}`,
/// otherwise nothing.
pub fn rl1p_semantics(core: &Cfg, control_word: Option<&Word>) -> BTreeSet<Word> {
    match control_word {
        Some(w) if w.symbols() == [core.start()] => core
            .bodies(core.start())
            .iter()
            .filter(|b| b.iter().all(|s| core.terminals().contains(*s)))
            .map(|b| Word::from(b.as_slice()))
            .collect(),
        _ => BTreeSet::new(),
    }
}

/// Control DFA of the single-word language `{w}` (or `∅`).
pub fn singleton_control(core: &Cfg, control_word: Option<&Word>) -> Result<Dfa> {
    let words: Vec<Word> = control_word.into_iter().cloned().collect();
    Dfa::from_words(core.symbols(), &words)
}
