use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::fixtures;
use crate::random::{letters, random_core_with_word, random_finite_set, random_slt, rng};
use crate::regular::Dfa;
use crate::subregular::{canonical_slt, is_slt_k, search_rlg, SearchBudget, SltDescription, SltMethod};
use crate::symbol::{Symbol, Word};
use crate::transforms::{
    control_rlg_one_var, kuroda_to_tc, rl1p_semantics, singleton_control, star_of_finite_union_free,
};
use crate::treectrl::{tc_certify, tc_enumerate, tc_enumerate_with, validate_tc, Cfg, CfgRule, TcGrammar, TcOptions};
use crate::witnesses::catalog::{build_witness, default_suite, verify_all, WitnessReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HierarchyBounds {
    /// Length bound for the tree-controlled enumerations.
    pub max_len: usize,
    pub seed: u64,
    /// Random instances per randomized check.
    pub samples: usize,
}

impl Default for HierarchyBounds {
    fn default() -> Self {
        HierarchyBounds { max_len: 9, seed: 0, samples: 25 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// Proper inclusion.
    Proper,
    /// Inclusion whose properness is open.
    Inclusion,
    Equal,
    Incomparable,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Proper => "⊂",
            Relation::Inclusion => "⊆",
            Relation::Equal => "=",
            Relation::Incomparable => "||",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Green,
    Red,
    Cited,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Green => "green",
            Status::Red => "red",
            Status::Cited => "cited",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub from: String,
    pub to: String,
    pub relation: Relation,
    pub status: Status,
    #[serde(default)]
    pub evidence: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HierarchyReport {
    /// Subregular families.
    pub families: Vec<Edge>,
    /// Tree-controlled families.
    pub controlled: Vec<Edge>,
    pub witnesses: Vec<WitnessReport>,
}

impl HierarchyReport {
    /// No locally checked edge is red.
    pub fn green(&self) -> bool {
        self.families.iter().chain(&self.controlled).all(|e| e.status != Status::Red)
    }
}

impl fmt::Display for HierarchyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let section = |f: &mut fmt::Formatter<'_>, title: &str, edges: &[Edge]| -> fmt::Result {
            writeln!(f, "{title}")?;
            for e in edges {
                writeln!(f, "  [{}] {} {} {}", e.status, e.from, e.relation, e.to)?;
                for line in &e.evidence {
                    writeln!(f, "      {line}")?;
                }
            }
            Ok(())
        };
        section(f, "subregular families:", &self.families)?;
        section(f, "tree-controlled families:", &self.controlled)?;
        writeln!(f, "status: {}", if self.green() { "green" } else { "red" })
    }
}

fn cited(from: &str, to: &str, relation: Relation) -> Edge {
    Edge { from: from.into(), to: to.into(), relation, status: Status::Cited, evidence: Vec::new() }
}

fn checked(from: &str, to: &str, relation: Relation, checks: Vec<(bool, String)>) -> Edge {
    let status = if checks.iter().all(|(ok, _)| *ok) { Status::Green } else { Status::Red };
    let evidence = checks.into_iter().map(|(ok, s)| format!("{} {s}", if ok { "ok" } else { "FAIL" })).collect();
    Edge { from: from.into(), to: to.into(), relation, status, evidence }
}

/// Every k = 1 description over `{a, b}`, then `samples` random ones over
/// up to four letters.
fn slt1_descriptions(bounds: &HierarchyBounds) -> Vec<SltDescription> {
    let ab = letters(2);
    let singles: Vec<Word> = ab.words_of_len(1);
    let subsets: Vec<Vec<Word>> = (0..4u32)
        .map(|m| singles.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, w)| w.clone()).collect())
        .collect();
    let mut out = Vec::new();
    for b in &subsets {
        for i in &subsets {
            for e in &subsets {
                for f in [vec![], vec![Word::empty()]] {
                    out.push(
                        SltDescription::new(1, ab.clone(), b.clone(), i.clone(), e.clone(), f).expect("k = 1 words"),
                    );
                }
            }
        }
    }
    let mut r = rng(bounds.seed);
    for j in 0..bounds.samples {
        out.push(random_slt(&mut r, 1, &letters(1 + j % 4)));
    }
    out
}

fn five_state_check(descs: &[SltDescription]) -> (bool, String) {
    let bad = descs.iter().filter(|d| {
        let five = d.to_dfa(SltMethod::FiveState).expect("k = 1");
        let window = d.to_dfa(SltMethod::Window).expect("k = 1");
        five.num_states() > 5 || !five.equivalent(&window).unwrap_or(false)
    });
    let bad = bad.count();
    (
        bad == 0,
        format!("five-state automaton matches the window semantics on {} descriptions ({bad} mismatches)", descs.len()),
    )
}

fn two_var_check(descs: &[SltDescription]) -> (bool, String) {
    let bad = descs
        .iter()
        .filter(|d| {
            let g = d.to_rlg().expect("k = 1");
            let window = d.to_dfa(SltMethod::Window).expect("k = 1");
            g.var_count() != 2 || !g.to_dfa().and_then(|x| x.equivalent(&window)).unwrap_or(false)
        })
        .count();
    (
        bad == 0,
        format!("two-variable grammar matches the window semantics on {} descriptions ({bad} mismatches)", descs.len()),
    )
}

fn witness_fact(reports: &[WitnessReport], name: &str, families: &[&str]) -> (bool, String) {
    match reports.iter().find(|r| r.name == name) {
        None => (false, format!("witness {name} missing")),
        Some(r) => {
            let ok = r.green() && families.iter().all(|f| r.claim(f).is_some());
            let shown: Vec<String> = families
                .iter()
                .map(|f| match r.claim(f) {
                    Some(c) => format!("{f}: {}", if c.member { "yes" } else { "no" }),
                    None => format!("{f}: ?"),
                })
                .collect();
            (ok, format!("witness {name} ({}) {}", shown.join(", "), if r.green() { "green" } else { "red" }))
        }
    }
}

fn subregular_edges(bounds: &HierarchyBounds, w: &[WitnessReport]) -> Vec<Edge> {
    use Relation::*;
    let descs = slt1_descriptions(bounds);
    let mut edges: Vec<Edge> = [
        ("FIN", "NIL"),
        ("MON", "REG_1^Z"),
        ("REG_1^Z", "NIL"),
        ("REG_1^Z", "SUF"),
        ("REG_1^Z", "COMM"),
        ("REG_1^Z", "UF"),
        ("REG_1^Z", "REG_2^Z"),
        ("REG_1^Z", "SLT_1"),
        ("RL_1^P", "FIN"),
        ("RL_1^P", "UF"),
        ("RL_1^V", "RL_2^V"),
        ("RL_2^V", "RL_n^V"),
        ("RL_n^V", "REG"),
        ("REG_2^Z", "RL_2^V"),
        ("REG_2^Z", "REG_3^Z"),
        ("REG_3^Z", "REG_4^Z"),
        ("REG_4^Z", "REG_5^Z"),
        ("REG_5^Z", "REG_n^Z"),
        ("REG_n^Z", "REG"),
        ("RL_1^P", "RL_2^P"),
        ("RL_2^P", "RL_3^P"),
        ("RL_2^P", "RL_1^V"),
        ("RL_3^P", "RL_4^P"),
        ("RL_4^P", "RL_n^P"),
        ("RL_4^P", "RL_2^V"),
        ("RL_n^P", "REG"),
        ("NIL", "DEF"),
        ("NIL", "RL_1^V"),
        ("COMB", "DEF"),
        ("COMB", "RL_1^V"),
        ("COMB", "REG_2^Z"),
        ("COMB", "SLT_1"),
        ("SLT_1", "SLT_2"),
        ("SLT_1", "ORD"),
        ("SLT_2", "SLT_k"),
        ("SLT_k", "SLT"),
        ("SLT", "NC"),
        ("ORD", "NC"),
        ("DEF", "ORD"),
        ("DEF", "SLT"),
        ("DEF", "RL_2^V"),
        ("NC", "PS"),
        ("PS", "REG"),
        ("SUF", "PS"),
        ("COMM", "CIRC"),
        ("CIRC", "REG"),
        ("UF", "REG"),
    ]
    .iter()
    .map(|&(a, b)| cited(a, b, Proper))
    .collect();

    edges.push(checked(
        "SLT_1",
        "REG_5^Z",
        Proper,
        vec![
            five_state_check(&descs),
            witness_fact(w, "L2", &["REG_5^Z", "REG_4^Z"]),
            witness_fact(w, "L1", &["REG_2^Z", "SLT"]),
        ],
    ));
    edges.push(checked(
        "SLT_1",
        "RL_2^V",
        Proper,
        vec![two_var_check(&descs), witness_fact(w, "L6", &["RL_1^V", "SLT_1"])],
    ));

    let l3: Vec<(bool, String)> =
        (2..=6).map(|n| witness_fact(w, &format!("L3,{n}"), &["SLT_2", &format!("REG_{n}^Z")])).collect();
    let l4: Vec<(bool, String)> =
        (1..=4).map(|n| witness_fact(w, &format!("L4,{n}"), &["RL_1^P", &format!("SLT_{n}")])).collect();
    let l5: Vec<(bool, String)> =
        (1..=4).map(|n| witness_fact(w, &format!("L5,{n}"), &["SLT_1", &format!("RL_{n}^P")])).collect();
    let l9: Vec<(bool, String)> =
        (1..=4).map(|n| witness_fact(w, &format!("L9,{n}"), &["SLT_2", &format!("RL_{n}^V")])).collect();
    let l1 = || witness_fact(w, "L1", &["REG_2^Z", "SLT"]);

    edges.push(checked(
        "SLT_1",
        "REG_n^Z (2 <= n <= 4)",
        Incomparable,
        vec![l1(), witness_fact(w, "L2", &["SLT_1", "REG_4^Z"])],
    ));
    edges.push(checked("SLT_k (k >= 2)", "REG_n^Z (n >= 2)", Incomparable, std::iter::once(l1()).chain(l3).collect()));
    edges.push(checked("SLT_k", "RL_n^P", Incomparable, l4.into_iter().chain(l5).collect()));
    edges.push(checked(
        "SLT_1",
        "RL_1^V",
        Incomparable,
        vec![witness_fact(w, "L6", &["RL_1^V", "SLT_1"]), witness_fact(w, "L7", &["SLT_1", "RL_1^V"])],
    ));
    edges.push(checked(
        "SLT_k (k >= 2)",
        "RL_n^V",
        Incomparable,
        std::iter::once(witness_fact(w, "L8", &["RL_1^V", "SLT"])).chain(l9).collect(),
    ));
    edges
}

fn word_set(ws: &[Word]) -> BTreeSet<Word> {
    ws.iter().cloned().collect()
}

fn certify_all(g: &TcGrammar, max_len: usize) -> (bool, usize) {
    let e = tc_enumerate_with(g, TcOptions { traces: true, ..TcOptions::new(max_len) });
    let ok = e.words.iter().all(|w| e.traces.get(w).is_some_and(|t| tc_certify(g, t).ok));
    (ok, e.words.len())
}

fn slt2_pipeline(bounds: &HierarchyBounds) -> Vec<(bool, String)> {
    let mono = fixtures::abc_monotone();
    let c = kuroda_to_tc(&fixtures::abc_kuroda());
    let expected = mono.enumerate(bounds.max_len).map(|ws| word_set(&ws));
    let got = word_set(&tc_enumerate(&c.tc, bounds.max_len).words);
    let same = expected.as_ref().is_ok_and(|x| *x == got);
    let canon = canonical_slt(&c.tc.control, 2);
    let quad = canon.b() == c.control_desc.b()
        && canon.i() == c.control_desc.i()
        && canon.e() == c.control_desc.e()
        && canon.f() == c.control_desc.f();
    vec![
        (validate_tc(&c.tc).is_empty(), "construction yields a valid tree-controlled grammar".to_string()),
        (same, format!("{} words up to length {} agree with the monotone source", got.len(), bounds.max_len)),
        (is_slt_k(&c.tc.control, 2).holds(), "control language is SLT_2".to_string()),
        (quad, "canonical B, I, E, F coincide with the constructed quadruple".to_string()),
    ]
}

fn controlled_edges(bounds: &HierarchyBounds) -> Vec<Edge> {
    use Relation::*;
    let mut edges: Vec<Edge> = vec![
        cited("CF", "E0L = cTC(MON_1) = cTC(REG_1^Z)", Proper),
        cited("E0L", "cTC(COMB)", Proper),
        cited("cTC(RL_1^P)", "CF", Proper),
        cited("cTC(RL_2^P)", "cTC(RL_n^P)", Inclusion),
        cited("cTC(FIN) = MAT_fin", "cTC(NIL)", Proper),
        cited("E0L", "cTC(NIL)", Proper),
        cited("cTC(NIL)", "cTC(DEF)", Inclusion),
        cited("cTC(COMB)", "cTC(DEF)", Inclusion),
        cited("cTC(COMB)", "cTC(SLT_1)", Inclusion),
        cited("cTC(COMB)", "cTC(REG_2^Z)", Inclusion),
        cited("cTC(FIN)", "cTC(MON_>=2) = ET0L", Proper),
        cited("E0L", "ET0L", Proper),
        cited("ET0L", "cTC(COMM) = MAT", Proper),
        cited("cTC(REG_2^Z)", "cTC(REG_4^Z)", Inclusion),
        cited("ET0L", "cTC(REG_4^Z)", Proper),
        cited("MAT", "CS", Proper),
        cited("cTC(DEF)", "CS", Inclusion),
        cited("cTC(SLT_1)", "CS", Inclusion),
        cited("cTC(REG_4^Z)", "CS", Inclusion),
        cited("cTC(RL_n^P)", "CS", Inclusion),
        cited("CS", "cTC(REG) = cTC(CIRC) = cTC(SUF) = cTC(ORD) = cTC(NC) = cTC(PS) = cTC(REG_>=5^Z)", Equal),
    ];

    let pipeline = slt2_pipeline(bounds);
    edges.push(checked("CS", "cTC(SLT_>=2) = cTC(SLT)", Equal, pipeline));

    let c = kuroda_to_tc(&fixtures::abc_kuroda());
    let one = control_rlg_one_var(&c);
    let one_ok = one.var_count() == 1 && one.to_dfa().and_then(|d| d.equivalent(&c.tc.control)).unwrap_or(false);
    edges.push(checked(
        "CS",
        "cTC(RL_>=1^V)",
        Equal,
        vec![(one_ok, format!("one-variable control grammar with {} rules equals the control", one.prod_count()))],
    ));

    let uf = star_of_finite_union_free(&c.control_units());
    let uf_ok = uf.count_unions() == 0
        && uf.compile(c.tc.control.alphabet()).and_then(|d| d.equivalent(&c.tc.control)).unwrap_or(false);
    edges.push(checked(
        "CS",
        "cTC(UF)",
        Equal,
        vec![(uf_ok, format!("union-free control ({} nodes, no unions) equals the control", uf.node_count()))],
    ));

    edges.push(checked("cTC(RL_1^P)", "FIN", Equal, p1_checks(bounds)));
    edges.push(checked("cTC(RL_1^P)", "cTC(RL_2^P)", Proper, p1_p2_checks()));
    edges
}

fn p1_checks(bounds: &HierarchyBounds) -> Vec<(bool, String)> {
    let mut r = rng(bounds.seed);
    let mut agree = 0;
    for _ in 0..bounds.samples {
        let (core, word) = random_core_with_word(&mut r);
        let control = singleton_control(&core, word.as_ref()).expect("word over the core symbols");
        let got = word_set(&tc_enumerate(&TcGrammar::new(core.clone(), control), bounds.max_len).words);
        let want: BTreeSet<Word> =
            rl1p_semantics(&core, word.as_ref()).into_iter().filter(|w| w.len() <= bounds.max_len).collect();
        if got == want {
            agree += 1;
        }
    }
    let t = letters(2);
    let set = word_set(&random_finite_set(&mut r, 3, 3, &t));
    let s = Symbol::new("S");
    let rules: Vec<CfgRule> = set.iter().map(|w| CfgRule::new(s, w.symbols().to_vec())).collect();
    let core = Cfg::new(vec![s], t, rules, s).expect("finite-set core");
    let control = singleton_control(&core, Some(&Word::new(vec![s]))).expect("S is a core symbol");
    let back = word_set(&tc_enumerate(&TcGrammar::new(core, control), 3).words);
    vec![
        (
            agree == bounds.samples,
            format!("{agree}/{} random cores with single-word controls match the closed form", bounds.samples),
        ),
        (back == set, format!("{}-word finite set regenerated with control {{S}}", set.len())),
    ]
}

fn control_grammar_check(name: &str, control: &Dfa, budget: SearchBudget) -> (bool, String) {
    match search_rlg(control, budget) {
        Ok(r) => match r.grammar {
            Some(g) if g.prod_count() <= 2 => (true, format!("{name} control generated by {g}")),
            Some(g) => (false, format!("{name} control needs {} rules", g.prod_count())),
            None => (false, format!("{name} control: no grammar within budget {budget}")),
        },
        Err(e) => (false, format!("{name} control: {e}")),
    }
}

fn p1_p2_checks() -> Vec<(bool, String)> {
    let g1 = fixtures::doubling();
    let g2 = fixtures::triple();
    let a = |n: usize| Word::new(vec![Symbol::new("a"); n]);
    let want1: BTreeSet<Word> = (0..=6).map(|i| a(1 << i)).collect();
    let got1 = word_set(&tc_enumerate(&g1, 64).words);
    let abc = |n: usize| {
        let mut v = vec![Symbol::new("a"); n];
        v.extend(vec![Symbol::new("b"); n]);
        v.extend(vec![Symbol::new("c"); n]);
        Word::new(v)
    };
    let want2: BTreeSet<Word> = (2..=10).map(abc).collect();
    let got2 = word_set(&tc_enumerate(&g2, 30).words);
    let (cert1, n1) = certify_all(&g1, 64);
    let (cert2, n2) = certify_all(&g2, 30);
    vec![
        (got1 == want1, format!("doubling grammar: {} words up to length 64", got1.len())),
        (got2 == want2, format!("a^n b^n c^n grammar: {} words up to length 30", got2.len())),
        (cert1 && cert2, format!("{} derivation certificates checked", n1 + n2)),
        control_grammar_check("doubling", &g1.control, SearchBudget::new(1, 2, 1)),
        control_grammar_check("a^n b^n c^n", &g2.control, SearchBudget::new(1, 2, 6)),
    ]
}

pub fn hierarchy_report(bounds: HierarchyBounds) -> HierarchyReport {
    let cases: Vec<_> =
        default_suite().into_iter().map(|(id, n)| build_witness(id, n).expect("default suite is in range")).collect();
    let witnesses = verify_all(&cases);
    HierarchyReport {
        families: subregular_edges(&bounds, &witnesses),
        controlled: controlled_edges(&bounds),
        witnesses,
    }
}
