//! The `tcg` command line. Every command reads workspace documents, prints
//! a text or document rendering, optionally writes a document with `--out`,
//! and reports through the exit code: 0 success, 1 red report, 2 usage,
//! format or resource error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::format::{report_entries, Control, Document, TcDocument, WordList};
use crate::oracle::{all_dfas, double_reversal, slt_k_by_quadruple_search};
use crate::random::{letters, random_finite_set, random_nfa, rng};
use crate::regular::{Dfa, Regex, RightLinearGrammar};
use crate::subregular::DEFAULT_NODE_CAP;
use crate::subregular::{
    classify, is_slt_k, is_slt_upto, search_rlg_capped, ClassifyBounds, SearchBudget, SltMethod, SltVerdict,
};
use crate::symbol::{Alphabet, Word};
use crate::transforms::{kuroda_to_tc, monotone_to_kuroda, star_of_finite_union_free};
use crate::treectrl::{tc_certify, tc_enumerate_with, validate_tc, TcOptions};
use crate::witnesses::{
    build_witness_with_limit, default_suite, hierarchy_report, verify_all, verify_witness, HierarchyBounds, WitnessId,
    DEFAULT_MAX_N,
};

#[derive(Parser, Debug)]
#[command(name = "tcg", version, about = "Tree-controlled grammars with subregular control languages")]
pub struct Cli {
    /// Output rendering on stdout.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Also write the result document to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Doc,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compile a regular expression to its minimal DFA.
    Regex(RegexArgs),
    /// Convert, minimize or enumerate a regular-language document.
    Automaton(AutomatonArgs),
    /// Run the structural family deciders and complexity measures.
    Classify(ClassifyArgs),
    /// Decide SLT_k membership or convert SLT descriptions.
    Slt(SltArgs),
    /// Exact bounded search for a right-linear grammar.
    SearchRlg(SearchArgs),
    /// Tree-controlled grammar enumeration and certification.
    #[command(subcommand)]
    Tc(TcCommand),
    /// Grammar transformations.
    #[command(subcommand)]
    Transform(TransformCommand),
    /// Witness languages and their claims.
    #[command(subcommand)]
    Witness(WitnessCommand),
    /// Hierarchy edges with local verification status.
    Hierarchy(HierarchyArgs),
}

#[derive(Args, Debug)]
pub struct RegexArgs {
    /// Expression, e.g. `a*b(a|b)*`; multi-character symbols need spaces.
    pub expr: String,
    /// Alphabet as whitespace-separated symbol names.
    #[arg(long)]
    pub alphabet: String,
    /// Also list accepted words up to this length.
    #[arg(long)]
    pub max_len: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Dfa,
    Nfa,
    Rlg,
}

#[derive(Args, Debug)]
pub struct AutomatonArgs {
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Kind of the output document.
    #[arg(long, value_enum, default_value_t = Target::Dfa)]
    pub to: Target,
    #[arg(long)]
    pub max_len: Option<usize>,
    /// Instead of converting, compare minimization with double reversal on
    /// this many seeded random NFAs (up to 6 states, 2 letters).
    #[arg(long, conflicts_with = "input")]
    pub oracle_check: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, default_value_t = 4)]
    pub k_max: usize,
    /// Optional exact grammar search, `vars,prods,rhs`.
    #[arg(long, value_parser = parse_budget)]
    pub budget: Option<SearchBudget>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SltEmit {
    Window,
    FiveState,
    Rlg,
}

#[derive(Args, Debug)]
pub struct SltArgs {
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Decide exactly this k.
    #[arg(long)]
    pub k: Option<usize>,
    /// Smallest k up to this bound.
    #[arg(long, default_value_t = 4)]
    pub k_max: usize,
    /// Convert an `slt` document instead of deciding.
    #[arg(long, value_enum)]
    pub emit: Option<SltEmit>,
    /// Compare the decider with exhaustive quadruple search on every DFA
    /// with at most 3 states over 2 letters, for k up to `--k-max`.
    #[arg(long, conflicts_with = "input")]
    pub oracle_check: bool,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// `vars,prods,rhs`
    #[arg(long, value_parser = parse_budget)]
    pub budget: SearchBudget,
    /// Cap on explored grammars.
    #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
    pub cap: usize,
}

#[derive(Subcommand, Debug)]
pub enum TcCommand {
    /// Words of length at most `--max-len`, in shortlex order.
    Enumerate(TcArgs),
    /// Check derivation certificates of enumerated words.
    Certify(TcCertifyArgs),
}

#[derive(Args, Debug)]
pub struct TcArgs {
    #[arg(long, alias = "in")]
    pub grammar: PathBuf,
    #[arg(long)]
    pub max_len: usize,
    #[arg(long)]
    pub max_depth: Option<usize>,
    /// Include one derivation trace per word.
    #[arg(long)]
    pub traces: bool,
}

#[derive(Args, Debug)]
pub struct TcCertifyArgs {
    #[arg(long, alias = "in")]
    pub grammar: PathBuf,
    #[arg(long)]
    pub max_len: usize,
    /// Certify only this word (whitespace-separated symbols).
    #[arg(long)]
    pub word: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum TransformCommand {
    /// Monotone grammar to Kuroda normal form.
    Kuroda(InArgs),
    /// Kuroda (or monotone) grammar to a tree-controlled grammar with SLT_2 control.
    CsToTc(CsToTcArgs),
    /// Finite word set to the union-free expression `({w1}*…{wn}*)*`.
    UfStar(UfArgs),
}

#[derive(Args, Debug)]
pub struct InArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
}

#[derive(Args, Debug)]
pub struct CsToTcArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Write the control description as an `slt` document.
    #[arg(long)]
    pub control_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct UfArgs {
    /// A `words` document.
    #[arg(long = "in", conflicts_with = "words")]
    pub input: Option<PathBuf>,
    /// Comma-separated words of whitespace-separated symbols.
    #[arg(long)]
    pub words: Option<String>,
    /// Instead, check this many seeded random sets (at most 3 words of
    /// length at most 3) against the plain star of their union.
    #[arg(long, conflicts_with_all = ["input", "words"])]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum WitnessCommand {
    /// Verify one witness case.
    Verify(WitnessArgs),
    /// Verify the default suite.
    All,
}

#[derive(Args, Debug)]
pub struct WitnessArgs {
    #[arg(long)]
    pub id: String,
    #[arg(long)]
    pub n: Option<usize>,
    /// Raise the parameter limit.
    #[arg(long, default_value_t = DEFAULT_MAX_N)]
    pub max_n: usize,
}

#[derive(Args, Debug)]
pub struct HierarchyArgs {
    #[arg(long, default_value_t = HierarchyBounds::default().max_len)]
    pub max_len: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = HierarchyBounds::default().samples)]
    pub samples: usize,
}

pub fn parse_budget(text: &str) -> std::result::Result<SearchBudget, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [v, p, r] = parts.as_slice() else {
        return Err(format!("expected `vars,prods,rhs`, got `{text}`"));
    };
    let num = |s: &str| s.parse::<usize>().map_err(|e| format!("`{s}`: {e}"));
    Ok(SearchBudget::new(num(v)?, num(p)?, num(r)?))
}

/// Result of one command before rendering.
struct Outcome {
    text: String,
    doc: Option<Document>,
    red: bool,
}

impl Outcome {
    fn ok(text: String, doc: Option<Document>) -> Outcome {
        Outcome { text, doc, red: false }
    }
}

fn regular_input(path: &Option<PathBuf>) -> Result<Document> {
    match path {
        Some(p) => Document::read(p),
        None => Err(Error::InvalidArgument("missing --in".into())),
    }
}

fn word_lines(ws: &[Word]) -> String {
    ws.iter().map(|w| format!("{w}\n")).collect()
}

fn dfa_text(d: &Dfa, max_len: Option<usize>) -> String {
    let mut s = format!("states: {}\n", d.num_states());
    if let Some(n) = max_len {
        s.push_str(&format!("words up to length {n}:\n"));
        s.push_str(&word_lines(&d.enumerate(n)));
    }
    s
}

fn run_regex(a: &RegexArgs) -> Result<Outcome> {
    let alphabet = Alphabet::parse(&a.alphabet)?;
    let regex = Regex::parse(&a.expr, &alphabet)?;
    let d = regex.compile(&alphabet)?;
    Ok(Outcome::ok(format!("regex: {regex}\n{}", dfa_text(&d, a.max_len)), Some(Document::Dfa(d))))
}

fn run_automaton(a: &AutomatonArgs) -> Result<Outcome> {
    if let Some(count) = a.oracle_check {
        let ab = letters(2);
        let mut r = rng(a.seed);
        let mut bad = 0;
        for _ in 0..count {
            let n = random_nfa(&mut r, 6, &ab);
            let fast = n.to_min_dfa()?;
            let slow = double_reversal(&n);
            if fast.num_states() != slow.num_states() || !fast.equivalent(&slow)? {
                bad += 1;
            }
        }
        let text = format!("minimization vs double reversal: {} NFAs, {bad} disagreements (seed {})\n", count, a.seed);
        return Ok(Outcome { text, doc: None, red: bad > 0 });
    }
    let d = regular_input(&a.input)?.to_dfa()?;
    let doc = match a.to {
        Target::Dfa => Document::Dfa(d.clone()),
        Target::Nfa => Document::Nfa(d.to_nfa()),
        Target::Rlg => Document::Rlg(RightLinearGrammar::from_dfa(&d)),
    };
    Ok(Outcome::ok(dfa_text(&d, a.max_len), Some(doc)))
}

fn run_classify(a: &ClassifyArgs) -> Result<Outcome> {
    let d = Document::read(&a.input)?.to_dfa()?;
    let bounds = ClassifyBounds { k_max: a.k_max, search: a.budget, ..ClassifyBounds::default() };
    let text = classify(&d, bounds)?.to_string();
    let doc = Document::Classification(report_entries(&text));
    Ok(Outcome::ok(text, Some(doc)))
}

fn run_slt(a: &SltArgs) -> Result<Outcome> {
    if a.oracle_check {
        let dfas = all_dfas(3, &letters(2));
        let mut seen = std::collections::HashSet::new();
        let distinct: Vec<Dfa> = dfas
            .iter()
            .map(Dfa::minimize)
            .filter(|d| seen.insert((d.rows(), d.finals().collect::<Vec<_>>())))
            .collect();
        let mut bad = Vec::new();
        for k in 1..=a.k_max {
            for d in &distinct {
                if is_slt_k(d, k).holds() != slt_k_by_quadruple_search(d, k) {
                    bad.push(format!("k = {k}: {:?}", d.rows()));
                }
            }
        }
        let mut text = format!(
            "decider vs quadruple search: {} automata ({} distinct languages), k <= {}, {} disagreements\n",
            dfas.len(),
            distinct.len(),
            a.k_max,
            bad.len()
        );
        text.push_str(&word_lines_str(&bad));
        return Ok(Outcome { text, doc: None, red: !bad.is_empty() });
    }
    let input = regular_input(&a.input)?;
    if let Some(emit) = a.emit {
        let Document::Slt(desc) = &input else {
            return Err(Error::InvalidArgument(format!("--emit needs an slt document, got `{}`", input.kind())));
        };
        let doc = match emit {
            SltEmit::Window => Document::Dfa(desc.to_dfa(SltMethod::Window)?),
            SltEmit::FiveState => Document::Dfa(desc.to_dfa(SltMethod::FiveState)?),
            SltEmit::Rlg => Document::Rlg(desc.to_rlg()?),
        };
        let text = match &doc {
            Document::Dfa(d) => format!("states: {}\n", d.num_states()),
            Document::Rlg(g) => format!("{} nonterminals: {g}\n", g.var_count()),
            _ => unreachable!(),
        };
        return Ok(Outcome::ok(text, Some(doc)));
    }
    let d = input.to_dfa()?;
    if let Some(k) = a.k {
        return Ok(match is_slt_k(&d, k) {
            SltVerdict::Yes(desc) => Outcome::ok(format!("SLT_{k}: yes\n{desc}\n"), Some(Document::Slt(desc))),
            SltVerdict::No(w) => Outcome::ok(format!("SLT_{k}: no (counterexample {w})\n"), None),
        });
    }
    Ok(match is_slt_upto(&d, a.k_max) {
        Some((k, desc)) => Outcome::ok(format!("SLT_{k}: yes (smallest k)\n{desc}\n"), Some(Document::Slt(desc))),
        None => Outcome::ok(format!("SLT: none up to k = {}\n", a.k_max), None),
    })
}

fn word_lines_str(xs: &[String]) -> String {
    xs.iter().map(|x| format!("{x}\n")).collect()
}

fn run_search(a: &SearchArgs) -> Result<Outcome> {
    let d = Document::read(&a.input)?.to_dfa()?;
    let r = search_rlg_capped(&d, a.budget, a.cap)?;
    Ok(match r.grammar {
        Some(g) => Outcome::ok(
            format!("grammar within budget {}: {g}\nnodes: {}\n", a.budget, r.nodes),
            Some(Document::Rlg(g)),
        ),
        None => Outcome::ok(format!("none within budget {}\nnodes: {}\n", a.budget, r.nodes), None),
    })
}

fn load_tc(path: &std::path::Path) -> Result<crate::treectrl::TcGrammar> {
    let doc = Document::read(path)?;
    let Document::Tc(t) = doc else {
        return Err(Error::Format(format!("expected a `tc` document, got `{}`", doc.kind())));
    };
    let g = t.grammar()?;
    let violations = validate_tc(&g);
    if !violations.is_empty() {
        let msgs: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(Error::InvalidGrammar(msgs.join("; ")));
    }
    Ok(g)
}

fn run_tc(c: &TcCommand) -> Result<Outcome> {
    match c {
        TcCommand::Enumerate(a) => {
            let g = load_tc(&a.grammar)?;
            let e = tc_enumerate_with(&g, TcOptions { max_len: a.max_len, max_depth: a.max_depth, traces: a.traces });
            let mut text = word_lines(&e.words);
            let traces: Vec<(Word, String)> = e.traces.iter().map(|(w, t)| (w.clone(), t.to_string())).collect();
            if a.traces {
                for (w, t) in &traces {
                    text.push_str(&format!("trace {w}: {t}\n"));
                }
            }
            let doc = Document::Words(WordList { alphabet: g.core.terminals().clone(), words: e.words, traces });
            Ok(Outcome::ok(text, Some(doc)))
        }
        TcCommand::Certify(a) => {
            let g = load_tc(&a.grammar)?;
            let e = tc_enumerate_with(&g, TcOptions::new(a.max_len));
            let targets: Vec<Word> = match &a.word {
                Some(w) => vec![Word::parse(w)],
                None => e.words.clone(),
            };
            let mut text = String::new();
            let mut red = false;
            for w in &targets {
                match e.traces.get(w) {
                    None => {
                        red = true;
                        text.push_str(&format!("{w}: not derivable within length {}\n", a.max_len));
                    }
                    Some(t) => {
                        let c = tc_certify(&g, t);
                        red |= !c.ok || c.word.as_ref() != Some(w);
                        match c.diagnostic {
                            None => text.push_str(&format!("{w}: ok ({} levels)\n", t.levels.len())),
                            Some(msg) => text.push_str(&format!("{w}: FAIL {msg}\n")),
                        }
                    }
                }
            }
            Ok(Outcome { text, doc: None, red })
        }
    }
}

fn run_transform(c: &TransformCommand) -> Result<Outcome> {
    match c {
        TransformCommand::Kuroda(a) => {
            let k = match Document::read(&a.input)? {
                Document::Monotone(m) => monotone_to_kuroda(&m),
                Document::Kuroda(k) => k,
                other => return Err(Error::Format(format!("expected a monotone grammar, got `{}`", other.kind()))),
            };
            let text: String = k.rules().iter().map(|r| format!("{r}\n")).collect();
            Ok(Outcome::ok(text, Some(Document::Kuroda(k))))
        }
        TransformCommand::CsToTc(a) => {
            let k = match Document::read(&a.input)? {
                Document::Monotone(m) => monotone_to_kuroda(&m),
                Document::Kuroda(k) => k,
                other => return Err(Error::Format(format!("expected a kuroda grammar, got `{}`", other.kind()))),
            };
            let c = kuroda_to_tc(&k);
            if let Some(p) = &a.control_out {
                Document::Slt(c.control_desc.clone()).write(p)?;
            }
            let mut text = String::new();
            for (name, rules) in
                [("P_cf", &c.p_cf), ("P_t", &c.p_t), ("P_d", &c.p_d), ("P_cs", &c.p_cs), ("P_erase", &c.p_erase)]
            {
                let rs: Vec<String> = rules.iter().map(|r| r.to_string()).collect();
                text.push_str(&format!("{name}: {}\n", rs.join(", ")));
            }
            let d = &c.control_desc;
            text.push_str(&format!(
                "control: SLT_{} with |B| = {}, |I| = {}, |E| = {}, |F| = {}\n",
                d.k(),
                d.b().len(),
                d.i().len(),
                d.e().len(),
                d.f().len()
            ));
            let doc =
                Document::Tc(TcDocument { core: c.tc.core.clone(), control: Control::Slt(c.control_desc.clone()) });
            Ok(Outcome::ok(text, Some(doc)))
        }
        TransformCommand::UfStar(a) => {
            if let Some(count) = a.random {
                return uf_random_check(count, a.seed);
            }
            let words: Vec<Word> = match (&a.input, &a.words) {
                (Some(p), _) => match Document::read(p)? {
                    Document::Words(w) => w.words,
                    other => return Err(Error::Format(format!("expected a words document, got `{}`", other.kind()))),
                },
                (None, Some(ws)) => ws.split(',').map(Word::parse).collect(),
                (None, None) => return Err(Error::InvalidArgument("give --in or --words".into())),
            };
            if words.iter().any(|w| w.is_empty()) {
                return Err(Error::InvalidArgument("words must be nonempty".into()));
            }
            let mut alphabet = Alphabet::new([]);
            for w in &words {
                for &s in w.iter() {
                    alphabet.insert(s);
                }
            }
            let regex = star_of_finite_union_free(&words);
            let text = format!("{regex}\nunions: {}\n", regex.count_unions());
            Ok(Outcome::ok(text, Some(Document::Regex { alphabet, regex })))
        }
    }
}

fn uf_random_check(count: usize, seed: u64) -> Result<Outcome> {
    let mut r = rng(seed);
    let mut text = String::new();
    let mut bad = 0;
    for j in 0..count {
        let alphabet = letters(1 + j % 3);
        let words: Vec<Word> =
            random_finite_set(&mut r, 3, 3, &alphabet).into_iter().filter(|w| !w.is_empty()).collect();
        let uf = star_of_finite_union_free(&words);
        let plain = Regex::star(Regex::union_all(words.iter().map(|w| Regex::word(w))));
        let same = uf.compile(&alphabet)?.equivalent(&plain.compile(&alphabet)?)?;
        let ok = same && uf.count_unions() == 0;
        bad += usize::from(!ok);
        text.push_str(&format!("{} {uf}\n", if ok { "ok  " } else { "FAIL" }));
    }
    text.push_str(&format!("{count} random sets (seed {seed}), {bad} failures\n"));
    Ok(Outcome { text, doc: None, red: bad > 0 })
}

fn run_witness(c: &WitnessCommand) -> Result<Outcome> {
    let reports = match c {
        WitnessCommand::Verify(a) => {
            let case = build_witness_with_limit(WitnessId::parse(&a.id)?, a.n, a.max_n)?;
            vec![verify_witness(&case)]
        }
        WitnessCommand::All => {
            let cases = default_suite()
                .into_iter()
                .map(|(id, n)| build_witness_with_limit(id, n, DEFAULT_MAX_N))
                .collect::<Result<Vec<_>>>()?;
            verify_all(&cases)
        }
    };
    let red = reports.iter().any(|r| !r.green());
    let mut text: String = reports.iter().map(|r| r.to_string()).collect();
    if reports.len() > 1 {
        let green = reports.iter().filter(|r| r.green()).count();
        text.push_str(&format!("{green}/{} green\n", reports.len()));
    }
    Ok(Outcome { text, doc: Some(Document::Witness(reports)), red })
}

fn run_hierarchy(a: &HierarchyArgs) -> Result<Outcome> {
    let h = hierarchy_report(HierarchyBounds { max_len: a.max_len, seed: a.seed, samples: a.samples });
    let red = !h.green();
    Ok(Outcome { text: h.to_string(), doc: Some(Document::Hierarchy(h)), red })
}

fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Regex(a) => run_regex(a),
        Command::Automaton(a) => run_automaton(a),
        Command::Classify(a) => run_classify(a),
        Command::Slt(a) => run_slt(a),
        Command::SearchRlg(a) => run_search(a),
        Command::Tc(c) => run_tc(c),
        Command::Transform(c) => run_transform(c),
        Command::Witness(c) => run_witness(c),
        Command::Hierarchy(a) => run_hierarchy(a),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(rendered.as_bytes());
            } else {
                let _ = stderr.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    if let Some(path) = &cli.out {
        let written = match &outcome.doc {
            Some(doc) => doc.write(path),
            None => std::fs::write(path, &outcome.text).map_err(Error::from),
        };
        if let Err(e) = written {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    }
    let rendered = match (cli.format, &outcome.doc) {
        (OutputFormat::Doc, Some(doc)) => doc.to_toml(),
        (OutputFormat::Doc, None) => {
            let _ = writeln!(stderr, "note: this result has no document form; printing text");
            outcome.text.clone()
        }
        (OutputFormat::Text, _) => outcome.text.clone(),
    };
    let _ = stdout.write_all(rendered.as_bytes());
    i32::from(outcome.red)
}
