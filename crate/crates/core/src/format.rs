//! Workspace documents: TOML files with `format = 1`, a `kind` and
//! kind-specific fields.
//!
//! ```toml
//! format = 1
//! kind = "dfa"
//! alphabet = ["a", "b"]
//! start = 0
//! finals = [1]
//! transitions = [[0, 1], [1, 1]]
//! ```
//!
//! Words are written as whitespace-separated symbol names, with `""` for λ.
//! Grammar rules use the `A -> a B` notation, `%eps` for an empty body.
//! A `tc` document holds a `[core]` grammar and a `[control]` table whose
//! own `kind` is one of `dfa`, `regex`, `rlg` or `slt`; the control alphabet
//! defaults to the core's nonterminals followed by its terminals.

use std::fmt;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::regular::{Dfa, Nfa, Regex, RightLinearGrammar};
use crate::subregular::{SltDescription, SltMethod};
use crate::symbol::{Alphabet, Symbol, Word};
use crate::transforms::{KurodaGrammar, MonotoneGrammar};
use crate::treectrl::{Cfg, TcGrammar};
use crate::witnesses::{HierarchyReport, WitnessReport};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Control {
    Dfa(Dfa),
    Regex(Regex),
    Rlg(RightLinearGrammar),
    Slt(SltDescription),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TcDocument {
    pub core: Cfg,
    pub control: Control,
}

impl TcDocument {
    pub fn grammar(&self) -> Result<TcGrammar> {
        let alphabet = self.core.symbols();
        let control = match &self.control {
            Control::Dfa(d) => d.over_alphabet(&alphabet)?,
            Control::Regex(r) => r.compile(&alphabet)?,
            Control::Rlg(g) => g.to_dfa()?.over_alphabet(&alphabet)?,
            Control::Slt(s) => s.to_dfa(SltMethod::Window)?.over_alphabet(&alphabet)?,
        };
        Ok(TcGrammar::new(self.core.clone(), control))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordList {
    pub alphabet: Alphabet,
    pub words: Vec<Word>,
    /// `(word, trace)` pairs, the trace in its display form.
    pub traces: Vec<(Word, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Dfa(Dfa),
    Nfa(Nfa),
    Rlg(RightLinearGrammar),
    Regex { alphabet: Alphabet, regex: Regex },
    Slt(SltDescription),
    Cfg(Cfg),
    Monotone(MonotoneGrammar),
    Kuroda(KurodaGrammar),
    Tc(TcDocument),
    Words(WordList),
    Classification(Vec<(String, String)>),
    Witness(Vec<WitnessReport>),
    Hierarchy(HierarchyReport),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Dfa(_) => "dfa",
            Document::Nfa(_) => "nfa",
            Document::Rlg(_) => "rlg",
            Document::Regex { .. } => "regex",
            Document::Slt(_) => "slt",
            Document::Cfg(_) => "cfg",
            Document::Monotone(_) => "monotone",
            Document::Kuroda(_) => "kuroda",
            Document::Tc(_) => "tc",
            Document::Words(_) => "words",
            Document::Classification(_) => "classification",
            Document::Witness(_) => "witness",
            Document::Hierarchy(_) => "hierarchy",
        }
    }

    /// Minimal DFA of a regular-language document.
    pub fn to_dfa(&self) -> Result<Dfa> {
        match self {
            Document::Dfa(d) => Ok(d.minimize()),
            Document::Nfa(n) => n.to_min_dfa(),
            Document::Rlg(g) => g.to_dfa(),
            Document::Regex { alphabet, regex } => regex.compile(alphabet),
            Document::Slt(s) => Ok(s.to_dfa(SltMethod::Window)?.minimize()),
            other => Err(Error::Format(format!("a `{}` document does not denote a regular language", other.kind()))),
        }
    }

    pub fn parse(text: &str) -> Result<Document> {
        let table: toml::Table = toml::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        match table.get("format") {
            Some(toml::Value::Integer(v)) if *v == FORMAT_VERSION as i64 => {}
            Some(v) => return Err(Error::Format(format!("unsupported format version {v}"))),
            None => return Err(Error::Format("missing `format` field".into())),
        }
        let kind = match table.get("kind") {
            Some(toml::Value::String(k)) => k.clone(),
            _ => return Err(Error::Format("missing `kind` field".into())),
        };
        let mut body = table;
        body.remove("format");
        body.remove("kind");
        let value = toml::Value::Table(body);
        Ok(match kind.as_str() {
            "dfa" => Document::Dfa(take::<RawDfa>(value)?.build()?),
            "nfa" => Document::Nfa(take::<RawNfa>(value)?.build()?),
            "rlg" => Document::Rlg(take::<RawGrammar>(value)?.rlg()?),
            "regex" => {
                let raw: RawRegex = take(value)?;
                let alphabet = alphabet_of(&raw.alphabet)?;
                let regex = Regex::parse(&raw.expr, &alphabet)?;
                Document::Regex { alphabet, regex }
            }
            "slt" => Document::Slt(take::<RawSlt>(value)?.build()?),
            "cfg" => Document::Cfg(take::<RawGrammar>(value)?.cfg()?),
            "monotone" => Document::Monotone(take::<RawGrammar>(value)?.monotone()?),
            "kuroda" => Document::Kuroda(take::<RawGrammar>(value)?.kuroda()?),
            "tc" => Document::Tc(take::<RawTc>(value)?.build()?),
            "words" => Document::Words(take::<RawWords>(value)?.build()?),
            "classification" => {
                let raw: RawClassification = take(value)?;
                Document::Classification(raw.entries.into_iter().map(|e| (e.key, e.value)).collect())
            }
            "witness" => Document::Witness(take::<RawWitness>(value)?.reports),
            "hierarchy" => Document::Hierarchy(take(value)?),
            other => return Err(Error::Format(format!("unknown document kind `{other}`"))),
        })
    }

    pub fn to_toml(&self) -> String {
        let body = match self {
            Document::Dfa(d) => put(&RawDfa::from(d)),
            Document::Nfa(n) => put(&RawNfa::from(n)),
            Document::Rlg(g) => put(&RawGrammar::from_rlg(g)),
            Document::Regex { alphabet, regex } => {
                put(&RawRegex { alphabet: names(alphabet), expr: regex.to_string() })
            }
            Document::Slt(s) => put(&RawSlt::from(s)),
            Document::Cfg(g) => put(&RawGrammar::from_cfg(g)),
            Document::Monotone(g) => put(&RawGrammar::from_monotone(g)),
            Document::Kuroda(g) => put(&RawGrammar::from_monotone(g.as_monotone())),
            Document::Tc(t) => put(&RawTc::from(t)),
            Document::Words(w) => put(&RawWords::from(w)),
            Document::Classification(entries) => put(&RawClassification {
                entries: entries.iter().map(|(k, v)| RawEntry { key: k.clone(), value: v.clone() }).collect(),
            }),
            Document::Witness(reports) => put(&RawWitness { reports: reports.clone() }),
            Document::Hierarchy(h) => put(h),
        };
        let mut out = format!("format = {FORMAT_VERSION}\nkind = \"{}\"\n", self.kind());
        out.push_str(&body);
        out
    }

    pub fn read(path: &Path) -> Result<Document> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Document::parse(&text)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_toml()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_toml())
    }
}

fn take<T: DeserializeOwned>(v: toml::Value) -> Result<T> {
    v.try_into().map_err(|e: toml::de::Error| Error::Format(e.to_string()))
}

fn put<T: Serialize>(v: &T) -> String {
    toml::to_string(v).expect("document bodies serialize")
}

fn names(a: &Alphabet) -> Vec<String> {
    a.symbols().iter().map(|s| s.name().to_string()).collect()
}

fn alphabet_of(names: &[String]) -> Result<Alphabet> {
    let mut a = Alphabet::new([]);
    for n in names {
        let s = Symbol::try_new(n).ok_or_else(|| Error::Format(format!("invalid symbol name `{n}`")))?;
        if a.contains(s) {
            return Err(Error::Format(format!("duplicate symbol `{n}`")));
        }
        a.insert(s);
    }
    Ok(a)
}

fn symbols_of(names: &[String]) -> Result<Vec<Symbol>> {
    names
        .iter()
        .map(|n| Symbol::try_new(n).ok_or_else(|| Error::Format(format!("invalid symbol name `{n}`"))))
        .collect()
}

fn word_strings(ws: &[Word]) -> Vec<String> {
    ws.iter().map(|w| w.to_doc_string()).collect()
}

fn parse_words(ws: &[String]) -> Vec<Word> {
    ws.iter().map(|w| Word::parse(w)).collect()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDfa {
    alphabet: Vec<String>,
    start: usize,
    finals: Vec<usize>,
    transitions: Vec<Vec<usize>>,
}

impl RawDfa {
    fn build(self) -> Result<Dfa> {
        Dfa::from_rows(alphabet_of(&self.alphabet)?, self.start, &self.finals, &self.transitions)
    }
}

impl From<&Dfa> for RawDfa {
    fn from(d: &Dfa) -> Self {
        RawDfa { alphabet: names(d.alphabet()), start: d.start(), finals: d.finals().collect(), transitions: d.rows() }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    from: usize,
    to: usize,
    /// Absent for λ-moves.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    letter: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNfa {
    alphabet: Vec<String>,
    states: usize,
    starts: Vec<usize>,
    finals: Vec<usize>,
    #[serde(default)]
    transitions: Vec<RawEdge>,
}

impl RawNfa {
    fn build(self) -> Result<Nfa> {
        let alphabet = alphabet_of(&self.alphabet)?;
        let mut n = Nfa::new(alphabet.clone());
        for _ in 0..self.states {
            n.add_state();
        }
        let check = |q: usize| {
            if q < self.states {
                Ok(q)
            } else {
                Err(Error::Format(format!("state {q} out of range (states = {})", self.states)))
            }
        };
        for &q in &self.starts {
            n.add_start(check(q)?);
        }
        for &q in &self.finals {
            n.set_final(check(q)?, true);
        }
        for e in &self.transitions {
            let letter = match &e.letter {
                None => None,
                Some(name) => Some(
                    alphabet
                        .lookup(name)
                        .and_then(|s| alphabet.index_of(s))
                        .ok_or_else(|| Error::ForeignSymbol(name.clone()))?,
                ),
            };
            n.add_transition(check(e.from)?, letter, check(e.to)?);
        }
        Ok(n)
    }
}

impl From<&Nfa> for RawNfa {
    fn from(n: &Nfa) -> Self {
        let a = n.alphabet();
        let transitions = (0..n.num_states())
            .flat_map(|q| {
                n.transitions(q).iter().map(move |&(letter, to)| RawEdge {
                    from: q,
                    to,
                    letter: letter.map(|i| a.get(i).name().to_string()),
                })
            })
            .collect();
        RawNfa {
            alphabet: names(a),
            states: n.num_states(),
            starts: n.starts().to_vec(),
            finals: (0..n.num_states()).filter(|&q| n.is_final(q)).collect(),
            transitions,
        }
    }
}

/// Shared shape of `rlg`, `cfg`, `monotone` and `kuroda` documents.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrammar {
    alphabet: Vec<String>,
    variables: Vec<String>,
    start: String,
    rules: Vec<String>,
}

impl RawGrammar {
    fn parts(&self) -> Result<(Vec<Symbol>, Alphabet, Symbol)> {
        let start = Symbol::try_new(&self.start)
            .ok_or_else(|| Error::Format(format!("invalid symbol name `{}`", self.start)))?;
        Ok((symbols_of(&self.variables)?, alphabet_of(&self.alphabet)?, start))
    }

    fn rlg(self) -> Result<RightLinearGrammar> {
        let (v, a, s) = self.parts()?;
        RightLinearGrammar::parse_rules(v, a, &self.rules, s)
    }

    fn cfg(self) -> Result<Cfg> {
        let (v, a, s) = self.parts()?;
        Cfg::parse_rules(v, a, &self.rules, s)
    }

    fn monotone(self) -> Result<MonotoneGrammar> {
        let (v, a, s) = self.parts()?;
        MonotoneGrammar::parse_rules(v, a, &self.rules, s)
    }

    fn kuroda(self) -> Result<KurodaGrammar> {
        let (v, a, s) = self.parts()?;
        KurodaGrammar::parse_rules(v, a, &self.rules, s)
    }

    fn new(vars: &[Symbol], terminals: &Alphabet, start: Symbol, rules: Vec<String>) -> RawGrammar {
        RawGrammar {
            alphabet: names(terminals),
            variables: vars.iter().map(|v| v.name().to_string()).collect(),
            start: start.name().to_string(),
            rules,
        }
    }

    fn from_rlg(g: &RightLinearGrammar) -> RawGrammar {
        RawGrammar::new(g.vars(), g.terminals(), g.start(), g.rule_strings())
    }

    fn from_cfg(g: &Cfg) -> RawGrammar {
        RawGrammar::new(g.vars(), g.terminals(), g.start(), g.rule_strings())
    }

    fn from_monotone(g: &MonotoneGrammar) -> RawGrammar {
        RawGrammar::new(g.vars(), g.terminals(), g.start(), g.rules().iter().map(|r| r.to_string()).collect())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRegex {
    alphabet: Vec<String>,
    expr: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSlt {
    alphabet: Vec<String>,
    k: usize,
    b: Vec<String>,
    i: Vec<String>,
    e: Vec<String>,
    f: Vec<String>,
}

impl RawSlt {
    fn build(self) -> Result<SltDescription> {
        SltDescription::new(
            self.k,
            alphabet_of(&self.alphabet)?,
            parse_words(&self.b),
            parse_words(&self.i),
            parse_words(&self.e),
            parse_words(&self.f),
        )
    }
}

impl From<&SltDescription> for RawSlt {
    fn from(s: &SltDescription) -> Self {
        RawSlt {
            alphabet: names(s.alphabet()),
            k: s.k(),
            b: s.doc_words(s.b()),
            i: s.doc_words(s.i()),
            e: s.doc_words(s.e()),
            f: s.doc_words(s.f()),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawControl {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alphabet: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    start: Option<toml::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    finals: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    transitions: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    expr: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    variables: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rules: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    i: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    e: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    f: Option<Vec<String>>,
}

fn need<T>(field: Option<T>, name: &str, kind: &str) -> Result<T> {
    field.ok_or_else(|| Error::Format(format!("`{kind}` control lacks `{name}`")))
}

impl RawControl {
    fn empty(kind: &str) -> RawControl {
        RawControl {
            kind: kind.into(),
            alphabet: None,
            start: None,
            finals: None,
            transitions: None,
            expr: None,
            variables: None,
            rules: None,
            k: None,
            b: None,
            i: None,
            e: None,
            f: None,
        }
    }

    fn build(self, default_alphabet: &Alphabet) -> Result<Control> {
        let alphabet = match &self.alphabet {
            Some(a) => alphabet_of(a)?,
            None => default_alphabet.clone(),
        };
        let kind = self.kind.clone();
        Ok(match kind.as_str() {
            "dfa" => {
                let start = match need(self.start, "start", &kind)? {
                    toml::Value::Integer(q) if q >= 0 => q as usize,
                    other => return Err(Error::Format(format!("dfa control start must be a state, got {other}"))),
                };
                Control::Dfa(Dfa::from_rows(
                    alphabet,
                    start,
                    &need(self.finals, "finals", &kind)?,
                    &need(self.transitions, "transitions", &kind)?,
                )?)
            }
            "regex" => Control::Regex(Regex::parse(&need(self.expr, "expr", &kind)?, &alphabet)?),
            "rlg" => {
                let start = match need(self.start, "start", &kind)? {
                    toml::Value::String(s) => s,
                    other => return Err(Error::Format(format!("rlg control start must be a name, got {other}"))),
                };
                let raw = RawGrammar {
                    alphabet: names(&alphabet),
                    variables: need(self.variables, "variables", &kind)?,
                    start,
                    rules: need(self.rules, "rules", &kind)?,
                };
                Control::Rlg(raw.rlg()?)
            }
            "slt" => Control::Slt(
                RawSlt {
                    alphabet: names(&alphabet),
                    k: need(self.k, "k", &kind)?,
                    b: need(self.b, "b", &kind)?,
                    i: need(self.i, "i", &kind)?,
                    e: need(self.e, "e", &kind)?,
                    f: need(self.f, "f", &kind)?,
                }
                .build()?,
            ),
            other => return Err(Error::Format(format!("unknown control kind `{other}`"))),
        })
    }

    fn from_control(c: &Control, default_alphabet: &Alphabet) -> RawControl {
        let own = |a: &Alphabet| if a == default_alphabet { None } else { Some(names(a)) };
        match c {
            Control::Dfa(d) => RawControl {
                alphabet: own(d.alphabet()),
                start: Some(toml::Value::Integer(d.start() as i64)),
                finals: Some(d.finals().collect()),
                transitions: Some(d.rows()),
                ..RawControl::empty("dfa")
            },
            Control::Regex(r) => RawControl { expr: Some(r.to_string()), ..RawControl::empty("regex") },
            Control::Rlg(g) => RawControl {
                alphabet: own(g.terminals()),
                start: Some(toml::Value::String(g.start().name().to_string())),
                variables: Some(g.vars().iter().map(|v| v.name().to_string()).collect()),
                rules: Some(g.rule_strings()),
                ..RawControl::empty("rlg")
            },
            Control::Slt(s) => RawControl {
                alphabet: own(s.alphabet()),
                k: Some(s.k()),
                b: Some(s.doc_words(s.b())),
                i: Some(s.doc_words(s.i())),
                e: Some(s.doc_words(s.e())),
                f: Some(s.doc_words(s.f())),
                ..RawControl::empty("slt")
            },
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTc {
    core: RawGrammar,
    control: RawControl,
}

impl RawTc {
    fn build(self) -> Result<TcDocument> {
        let core = self.core.cfg()?;
        let control = self.control.build(&core.symbols())?;
        Ok(TcDocument { core, control })
    }
}

impl From<&TcDocument> for RawTc {
    fn from(t: &TcDocument) -> Self {
        RawTc { core: RawGrammar::from_cfg(&t.core), control: RawControl::from_control(&t.control, &t.core.symbols()) }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTrace {
    word: String,
    levels: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWords {
    alphabet: Vec<String>,
    words: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    traces: Vec<RawTrace>,
}

impl RawWords {
    fn build(self) -> Result<WordList> {
        let alphabet = alphabet_of(&self.alphabet)?;
        let words = parse_words(&self.words);
        for w in &words {
            alphabet.indices(w)?;
        }
        let traces = self.traces.into_iter().map(|t| (Word::parse(&t.word), t.levels)).collect();
        Ok(WordList { alphabet, words, traces })
    }
}

impl From<&WordList> for RawWords {
    fn from(w: &WordList) -> Self {
        RawWords {
            alphabet: names(&w.alphabet),
            words: word_strings(&w.words),
            traces: w
                .traces
                .iter()
                .map(|(word, t)| RawTrace { word: word.to_doc_string(), levels: t.clone() })
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    key: String,
    value: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClassification {
    entries: Vec<RawEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWitness {
    reports: Vec<WitnessReport>,
}

/// Splits `key: value` lines of a text report.
pub fn report_entries(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|line| line.split_once(": ").map(|(k, v)| (k.trim().to_string(), v.trim().to_string())))
        .collect()
}
