use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::regular::{regex_compile, Dfa, RightLinearGrammar};
use crate::subregular::{is_slt_k, search_rlg, SearchBudget, SltDescription, SltMethod, SltVerdict};
use crate::symbol::{Alphabet, Symbol, Word};

/// Largest parameter accepted without an explicit higher limit.
pub const DEFAULT_MAX_N: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WitnessId {
    L1,
    L2,
    L3,
    L4,
    L5,
    L6,
    L7,
    L8,
    L9,
}

impl WitnessId {
    pub const ALL: [WitnessId; 9] = [
        WitnessId::L1,
        WitnessId::L2,
        WitnessId::L3,
        WitnessId::L4,
        WitnessId::L5,
        WitnessId::L6,
        WitnessId::L7,
        WitnessId::L8,
        WitnessId::L9,
    ];

    /// Accepts `l-l9`, `L9` and `l9`.
    pub fn parse(text: &str) -> Result<WitnessId> {
        let t = text.trim().to_ascii_lowercase();
        let short = t.strip_prefix("l-").unwrap_or(&t);
        WitnessId::ALL
            .into_iter()
            .find(|id| &id.as_str()[2..] == short)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown witness id `{text}` (expected l-l1 … l-l9)")))
    }

    pub fn as_str(self) -> &'static str {
        match self {
            WitnessId::L1 => "l-l1",
            WitnessId::L2 => "l-l2",
            WitnessId::L3 => "l-l3",
            WitnessId::L4 => "l-l4",
            WitnessId::L5 => "l-l5",
            WitnessId::L6 => "l-l6",
            WitnessId::L7 => "l-l7",
            WitnessId::L8 => "l-l8",
            WitnessId::L9 => "l-l9",
        }
    }

    /// Smallest admissible `n`, or `None` for unparameterized languages.
    pub fn min_n(self) -> Option<usize> {
        match self {
            WitnessId::L3 => Some(2),
            WitnessId::L4 | WitnessId::L5 | WitnessId::L9 => Some(1),
            _ => None,
        }
    }
}

impl fmt::Display for WitnessId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    RegZ(usize),
    Slt,
    SltK(usize),
    RlV(usize),
    RlP(usize),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::RegZ(n) => write!(f, "REG_{n}^Z"),
            Family::Slt => write!(f, "SLT"),
            Family::SltK(k) => write!(f, "SLT_{k}"),
            Family::RlV(n) => write!(f, "RL_{n}^V"),
            Family::RlP(n) => write!(f, "RL_{n}^P"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Method {
    StateComplexity,
    SltDecider,
    /// Decider run for every `k` up to the bound.
    SltUpTo(usize),
    Search(SearchBudget),
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::StateComplexity => write!(f, "minimal DFA"),
            Method::SltDecider => write!(f, "SLT_k decider"),
            Method::SltUpTo(k) => write!(f, "SLT_k decider for k <= {k}"),
            Method::Search(b) => write!(f, "grammar search within budget {b}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub family: Family,
    pub member: bool,
    pub method: Method,
}

impl Claim {
    fn new(family: Family, member: bool, method: Method) -> Claim {
        Claim { family, member, method }
    }

    /// Negative claims settled by a bounded search are only bounded refutations.
    pub fn is_exact(&self) -> bool {
        match self.method {
            Method::StateComplexity | Method::SltDecider => true,
            Method::SltUpTo(_) | Method::Search(_) => self.member,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Regex(String),
    Slt(SltDescription),
    Rlg(RightLinearGrammar),
    Words(Vec<Word>),
}

impl Source {
    pub fn label(&self) -> &'static str {
        match self {
            Source::Regex(_) => "regex",
            Source::Slt(_) => "slt",
            Source::Rlg(_) => "rlg",
            Source::Words(_) => "words",
        }
    }

    pub fn to_dfa(&self, alphabet: &Alphabet) -> Result<Dfa> {
        match self {
            Source::Regex(r) => regex_compile(r, alphabet),
            Source::Slt(d) => Ok(d.to_dfa(SltMethod::Window)?.minimize()),
            Source::Rlg(g) => g.to_dfa(),
            Source::Words(ws) => Ok(Dfa::from_words(alphabet.clone(), ws)?.minimize()),
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Regex(r) => write!(f, "{r}"),
            Source::Slt(d) => write!(f, "{d}"),
            Source::Rlg(g) => write!(f, "{g}"),
            Source::Words(ws) => {
                let parts: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCase {
    pub id: WitnessId,
    pub n: Option<usize>,
    pub name: String,
    pub alphabet: Alphabet,
    /// Minimal DFA of the first source.
    pub dfa: Dfa,
    pub sources: Vec<Source>,
    pub claims: Vec<Claim>,
    pub warnings: Vec<String>,
}

fn indexed(n: usize) -> Alphabet {
    Alphabet::from_names((1..=n).map(|i| format!("a{i}")))
}

fn sym(i: usize) -> Symbol {
    Symbol::new(&format!("a{i}"))
}

fn pair(i: usize, j: usize) -> Word {
    Word::new(vec![sym(i), sym(j)])
}

fn rlg(vars: &[&str], alphabet: &Alphabet, rules: &[&str]) -> Result<RightLinearGrammar> {
    RightLinearGrammar::parse_rules(
        vars.iter().map(|v| Symbol::new(v)).collect(),
        alphabet.clone(),
        &rules.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        Symbol::new(vars[0]),
    )
}

pub fn build_witness(id: WitnessId, n: Option<usize>) -> Result<WitnessCase> {
    build_witness_with_limit(id, n, DEFAULT_MAX_N)
}

/// As [`build_witness`], accepting parameters up to `max_n`; parameters
/// beyond the default range are flagged in `warnings`.
pub fn build_witness_with_limit(id: WitnessId, n: Option<usize>, max_n: usize) -> Result<WitnessCase> {
    let n = match (id.min_n(), n) {
        (None, None) => None,
        (None, Some(_)) => return Err(Error::InvalidArgument(format!("{id} takes no parameter"))),
        (Some(lo), None) => Some(lo.max(2)),
        (Some(lo), Some(n)) if n < lo || n > max_n => {
            return Err(Error::InvalidArgument(format!("{id}: n = {n} outside the supported range {lo}..={max_n}")))
        }
        (Some(_), Some(n)) => Some(n),
    };
    let mut warnings = Vec::new();
    if let Some(n) = n.filter(|&n| n > DEFAULT_MAX_N) {
        warnings.push(format!("n = {n} exceeds the default range; searches and deciders may be slow"));
    }
    use Family::*;
    use Method::*;
    let (name, alphabet, sources, claims) = match id {
        WitnessId::L1 => {
            let a = Alphabet::from_names(["a", "b"]);
            let claims = vec![
                Claim::new(RegZ(2), true, StateComplexity),
                Claim::new(RegZ(1), false, StateComplexity),
                Claim::new(Slt, false, SltUpTo(4)),
            ];
            ("L1".to_string(), a, vec![Source::Regex("a*b(a|b)*".into())], claims)
        }
        WitnessId::L2 => {
            let d = SltDescription::from_chars(1, "abc", &["a", "b"], &["b", "c"], &["a", "c"], &[])?;
            let claims = vec![
                Claim::new(SltK(1), true, SltDecider),
                Claim::new(RegZ(5), true, StateComplexity),
                Claim::new(RegZ(4), false, StateComplexity),
            ];
            ("L2".to_string(), d.alphabet().clone(), vec![Source::Slt(d)], claims)
        }
        WitnessId::L3 => {
            let n = n.expect("parameterized");
            let a = indexed(n - 1);
            let word = Word::new((1..n).map(sym).collect());
            let desc = if n == 2 {
                SltDescription::new(2, a.clone(), vec![], vec![], vec![], vec![word.clone()])?
            } else {
                let interior: Vec<Word> = (2..=n.saturating_sub(3)).map(|p| pair(p, p + 1)).collect();
                SltDescription::new(2, a.clone(), vec![pair(1, 2)], interior, vec![pair(n - 2, n - 1)], vec![])?
            };
            let claims = vec![
                Claim::new(SltK(2), true, SltDecider),
                Claim::new(RegZ(n + 1), true, StateComplexity),
                Claim::new(RegZ(n), false, StateComplexity),
            ];
            (format!("L3,{n}"), a, vec![Source::Words(vec![word]), Source::Slt(desc)], claims)
        }
        WitnessId::L4 => {
            let n = n.expect("parameterized");
            let a = Alphabet::from_names(["a"]);
            let word = Word::new(vec![Symbol::new("a"); n]);
            let g = rlg(&["S"], &a, &[&format!("S -> {}", word.to_doc_string())])?;
            let claims = vec![
                Claim::new(RlP(1), true, Search(SearchBudget::new(1, 1, n))),
                Claim::new(SltK(n), false, SltDecider),
                Claim::new(SltK(n + 1), true, SltDecider),
            ];
            (format!("L4,{n}"), a, vec![Source::Words(vec![word]), Source::Rlg(g)], claims)
        }
        WitnessId::L5 => {
            let n = n.expect("parameterized");
            let a = indexed(n);
            let letters: Vec<Word> = (1..=n).map(|i| Word::new(vec![sym(i)])).collect();
            let desc =
                SltDescription::new(1, a.clone(), letters.clone(), letters.clone(), letters, vec![Word::empty()])?;
            let re = format!("({})*", (1..=n).map(|i| format!("a{i}")).collect::<Vec<_>>().join("|"));
            let claims = vec![
                Claim::new(SltK(1), true, SltDecider),
                Claim::new(RlP(n), false, Search(SearchBudget::new(n, n, 4))),
            ];
            (format!("L5,{n}"), a, vec![Source::Regex(re), Source::Slt(desc)], claims)
        }
        WitnessId::L6 => {
            let a = Alphabet::from_names(["a"]);
            let claims = vec![
                Claim::new(RlV(1), true, Search(SearchBudget::new(1, 1, 1))),
                Claim::new(SltK(1), false, SltDecider),
            ];
            ("L6".to_string(), a, vec![Source::Words(vec![Word::chars("a")])], claims)
        }
        WitnessId::L7 => {
            let d = SltDescription::from_chars(1, "ab", &["a"], &["b"], &["a"], &[])?;
            let claims = vec![
                Claim::new(SltK(1), true, SltDecider),
                Claim::new(RlV(1), false, Search(SearchBudget::new(1, 6, 4))),
            ];
            ("L7".to_string(), d.alphabet().clone(), vec![Source::Regex("ab*a|a".into()), Source::Slt(d)], claims)
        }
        WitnessId::L8 => {
            let a = Alphabet::from_names(["a"]);
            let g = rlg(&["S"], &a, &["S -> a a a S", "S -> a a a"])?;
            let claims =
                vec![Claim::new(RlV(1), true, Search(SearchBudget::new(1, 2, 3))), Claim::new(Slt, false, SltUpTo(6))];
            ("L8".to_string(), a, vec![Source::Regex("aaa(aaa)*".into()), Source::Rlg(g)], claims)
        }
        WitnessId::L9 => {
            let n = n.expect("parameterized");
            let a = indexed(n + 1);
            let re: String = (1..=n + 1).map(|i| format!("a{i}a{i}*")).collect();
            let interior: Vec<Word> = (1..=n + 1).map(|p| pair(p, p)).chain((1..=n).map(|p| pair(p, p + 1))).collect();
            let desc = SltDescription::new(
                2,
                a.clone(),
                vec![pair(1, 1), pair(1, 2)],
                interior,
                vec![pair(n, n + 1), pair(n + 1, n + 1)],
                vec![],
            )?;
            let claims = vec![
                Claim::new(SltK(2), true, SltDecider),
                Claim::new(RlV(n), false, Search(SearchBudget::new(n, n + 2, 2))),
            ];
            (format!("L9,{n}"), a, vec![Source::Regex(re), Source::Slt(desc)], claims)
        }
    };
    let dfa = sources[0].to_dfa(&alphabet)?;
    Ok(WitnessCase { id, n, name, alphabet, dfa, sources, claims, warnings })
}

/// Cases checked by `witness all`.
pub fn default_suite() -> Vec<(WitnessId, Option<usize>)> {
    use WitnessId::*;
    let mut out = vec![(L1, None), (L2, None)];
    out.extend((2..=6).map(|n| (L3, Some(n))));
    out.extend((1..=4).map(|n| (L4, Some(n))));
    out.extend((1..=4).map(|n| (L5, Some(n))));
    out.extend([(L6, None), (L7, None), (L8, None)]);
    out.extend((1..=4).map(|n| (L9, Some(n))));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub family: String,
    pub member: bool,
    pub method: String,
    pub exact: bool,
    pub ok: bool,
    pub evidence: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceCheck {
    pub source: String,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub name: String,
    pub alphabet: Vec<String>,
    pub state_complexity: usize,
    pub sources: Vec<SourceCheck>,
    pub claims: Vec<ClaimResult>,
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl WitnessReport {
    /// Every source agrees and every claim verified at its stated bound.
    pub fn green(&self) -> bool {
        self.sources.iter().all(|s| s.agrees) && self.claims.iter().all(|c| c.ok)
    }

    pub fn claim(&self, family: &str) -> Option<&ClaimResult> {
        self.claims.iter().find(|c| c.family == family)
    }
}

impl fmt::Display for WitnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.green() { "green" } else { "red" };
        writeln!(f, "witness {} ({}): {tag}", self.id, self.name)?;
        writeln!(f, "  alphabet: {}", self.alphabet.join(" "))?;
        writeln!(f, "  state complexity: {}", self.state_complexity)?;
        for s in &self.sources {
            writeln!(f, "  source {}: {}", s.source, if s.agrees { "agrees" } else { "DISAGREES" })?;
        }
        for c in &self.claims {
            let mark = if c.ok { "ok" } else { "FAIL" };
            let verdict = if c.member { "yes" } else { "no" };
            let kind = if c.exact { "exact" } else { "bounded" };
            writeln!(f, "  [{mark}] {}: {verdict} ({kind}; {}) {}", c.family, c.method, c.evidence)?;
        }
        for w in &self.warnings {
            writeln!(f, "  warning: {w}")?;
        }
        Ok(())
    }
}

fn check_claim(d: &Dfa, claim: &Claim) -> (bool, String) {
    match (&claim.family, &claim.method) {
        (Family::RegZ(n), Method::StateComplexity) => {
            let sc = d.num_states();
            ((sc <= *n) == claim.member, format!("state complexity {sc}"))
        }
        (Family::SltK(k), Method::SltDecider) => match is_slt_k(d, *k) {
            SltVerdict::Yes(desc) => (claim.member, format!("canonical {desc}")),
            SltVerdict::No(w) => (!claim.member, format!("counterexample `{}`", w.to_doc_string())),
        },
        (Family::Slt, Method::SltUpTo(k_max)) => {
            let mut parts = Vec::new();
            for k in 1..=*k_max {
                match is_slt_k(d, k) {
                    SltVerdict::Yes(_) => return (claim.member, format!("SLT_{k} holds")),
                    SltVerdict::No(w) => parts.push(format!("k={k}: `{}`", w.to_doc_string())),
                }
            }
            (!claim.member, format!("counterexamples {}", parts.join(", ")))
        }
        (Family::RlV(_) | Family::RlP(_), Method::Search(budget)) => match search_rlg(d, *budget) {
            Ok(r) => match r.grammar {
                Some(g) => {
                    let agrees = g.to_dfa().and_then(|gd| gd.equivalent(d)).unwrap_or(false);
                    (claim.member && agrees, format!("grammar {g} ({} nodes)", r.nodes))
                }
                None => (!claim.member, format!("no grammar within budget {budget} ({} nodes)", r.nodes)),
            },
            Err(e) => (false, format!("search failed: {e}")),
        },
        (family, method) => (false, format!("{method} cannot decide {family}")),
    }
}

pub fn verify_witness(case: &WitnessCase) -> WitnessReport {
    let d = &case.dfa;
    let sources = case
        .sources
        .iter()
        .map(|s| SourceCheck {
            source: s.label().to_string(),
            agrees: s.to_dfa(&case.alphabet).and_then(|x| x.equivalent(d)).unwrap_or(false),
        })
        .collect();
    let claims = case
        .claims
        .iter()
        .map(|c| {
            let (ok, evidence) = check_claim(d, c);
            ClaimResult {
                family: c.family.to_string(),
                member: c.member,
                method: c.method.to_string(),
                exact: c.is_exact(),
                ok,
                evidence,
            }
        })
        .collect();
    WitnessReport {
        id: case.id.to_string(),
        n: case.n,
        name: case.name.clone(),
        alphabet: case.alphabet.symbols().iter().map(|s| s.name().to_string()).collect(),
        state_complexity: d.num_states(),
        sources,
        claims,
        warnings: case.warnings.clone(),
    }
}

/// Verifies each case on its own thread; results keep the input order.
pub fn verify_all(cases: &[WitnessCase]) -> Vec<WitnessReport> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = cases.iter().map(|c| scope.spawn(move || verify_witness(c))).collect();
        handles.into_iter().map(|h| h.join().expect("verification does not panic")).collect()
    })
}
