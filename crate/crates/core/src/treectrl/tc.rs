//! Level-synchronized derivation for tree-controlled grammars.
//!
//! A configuration is the current frontier of a derivation tree, split into
//! active cells (the symbols at the deepest level) and frozen cells
//! (terminal leaves of shallower levels). The level word is the active
//! projection. One step rewrites every active nonterminal in parallel and
//! freezes every active terminal.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::regular::Dfa;
use crate::symbol::{Alphabet, Symbol, Word};
use crate::treectrl::cfg::Cfg;

/// Context-free core plus a control DFA over `N ∪ T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TcGrammar {
    pub core: Cfg,
    pub control: Dfa,
}

impl TcGrammar {
    pub fn new(core: Cfg, control: Dfa) -> TcGrammar {
        TcGrammar { core, control }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Erasing(String),
    ControlAlphabet { missing: Vec<Symbol>, extra: Vec<Symbol> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Erasing(msg) => f.write_str(msg),
            Violation::ControlAlphabet { missing, extra } => {
                let names = |v: &[Symbol]| v.iter().map(|s| s.name()).collect::<Vec<_>>().join(" ");
                write!(f, "control alphabet mismatch (missing: [{}], extra: [{}])", names(missing), names(extra))
            }
        }
    }
}

pub fn validate_tc(g: &TcGrammar) -> Vec<Violation> {
    let mut out: Vec<Violation> = g.core.erasing_violations().into_iter().map(Violation::Erasing).collect();
    let wanted = g.core.symbols();
    let have = g.control.alphabet();
    let missing: Vec<Symbol> = wanted.symbols().iter().copied().filter(|s| !have.contains(*s)).collect();
    let extra: Vec<Symbol> = have.symbols().iter().copied().filter(|s| !wanted.contains(*s)).collect();
    if !missing.is_empty() || !extra.is_empty() {
        out.push(Violation::ControlAlphabet { missing, extra });
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub symbol: Symbol,
    pub frozen: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LevelConfig {
    pub cells: Vec<Cell>,
    pub depth: usize,
}

impl LevelConfig {
    pub fn initial(start: Symbol) -> LevelConfig {
        LevelConfig { cells: vec![Cell { symbol: start, frozen: false }], depth: 0 }
    }

    /// Active projection.
    pub fn level_word(&self) -> Word {
        self.cells.iter().filter(|c| !c.frozen).map(|c| c.symbol).collect()
    }

    /// Full frontier, frozen cells included.
    pub fn sentential_form(&self) -> Word {
        self.cells.iter().map(|c| c.symbol).collect()
    }

    pub fn has_active_var(&self, core: &Cfg) -> bool {
        self.cells.iter().any(|c| !c.frozen && core.is_var(c.symbol))
    }
}

impl fmt::Display for LevelConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [level {}]", self.sentential_form(), self.level_word())
    }
}

/// One level of a derivation: for each active nonterminal cell of the
/// predecessor configuration, its position in the cell sequence and the
/// chosen body.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LevelStep {
    pub choices: Vec<(usize, Symbol, Vec<Symbol>)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DerivationTrace {
    pub levels: Vec<LevelStep>,
}

impl fmt::Display for DerivationTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, level) in self.levels.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            let parts: Vec<String> =
                level.choices.iter().map(|(p, a, body)| format!("{p}:{a}->{}", Word::from(body.as_slice()))).collect();
            f.write_str(&parts.join(","))?;
        }
        Ok(())
    }
}

fn apply(c: &LevelConfig, bodies: &[&[Symbol]], core: &Cfg) -> LevelConfig {
    let mut cells = Vec::with_capacity(c.cells.len() + bodies.len());
    let mut next = bodies.iter();
    for cell in &c.cells {
        if cell.frozen {
            cells.push(*cell);
        } else if core.is_var(cell.symbol) {
            let body = next.next().expect("one body per active nonterminal");
            cells.extend(body.iter().map(|&s| Cell { symbol: s, frozen: false }));
        } else {
            cells.push(Cell { symbol: cell.symbol, frozen: true });
        }
    }
    LevelConfig { cells, depth: c.depth + 1 }
}

/// All successors of `c`: every combination of bodies for its active
/// nonterminals.
pub fn tc_step(c: &LevelConfig, core: &Cfg) -> Result<Vec<LevelConfig>> {
    let vars: Vec<Symbol> = c.cells.iter().filter(|x| !x.frozen && core.is_var(x.symbol)).map(|x| x.symbol).collect();
    if vars.is_empty() {
        return Err(Error::InvalidArgument("configuration has no active nonterminal (it is a final level)".into()));
    }
    let mut out = Vec::new();
    let mut chosen: Vec<&[Symbol]> = Vec::with_capacity(vars.len());
    fn go<'a>(
        i: usize,
        vars: &[Symbol],
        core: &'a Cfg,
        c: &LevelConfig,
        chosen: &mut Vec<&'a [Symbol]>,
        out: &mut Vec<LevelConfig>,
    ) {
        if i == vars.len() {
            out.push(apply(c, chosen, core));
            return;
        }
        for body in core.bodies(vars[i]) {
            chosen.push(body);
            go(i + 1, vars, core, c, chosen, out);
            chosen.pop();
        }
    }
    go(0, &vars, core, c, &mut chosen, &mut out);
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TcOptions {
    pub max_len: usize,
    pub max_depth: Option<usize>,
    /// Keep one certifying trace per word.
    pub traces: bool,
}

impl TcOptions {
    pub fn new(max_len: usize) -> TcOptions {
        TcOptions { max_len, max_depth: None, traces: true }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TcStats {
    /// Distinct configurations stored.
    pub configs: usize,
    /// Configurations whose level word was control-accepted and expanded.
    pub expanded: usize,
    /// Deepest level reached.
    pub levels: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TcEnumeration {
    /// Shortlex-sorted.
    pub words: Vec<Word>,
    pub traces: BTreeMap<Word, DerivationTrace>,
    pub stats: TcStats,
}

/// Dense view of the grammar used by the enumerator.
struct Compiled {
    symbols: Vec<Symbol>,
    is_var: Vec<bool>,
    letter: Vec<Option<usize>>,
    bodies: Vec<Vec<Vec<u32>>>,
    min_len: Vec<usize>,
}

impl Compiled {
    fn new(g: &TcGrammar) -> Compiled {
        let alpha: Alphabet = g.core.symbols();
        let symbols = alpha.symbols().to_vec();
        let code = |s: Symbol| alpha.index_of(s).expect("body symbols are declared") as u32;
        let is_var: Vec<bool> = symbols.iter().map(|&s| g.core.is_var(s)).collect();
        let letter = symbols.iter().map(|&s| g.control.alphabet().index_of(s)).collect();
        let bodies: Vec<Vec<Vec<u32>>> = symbols
            .iter()
            .map(|&s| g.core.bodies(s).iter().map(|b| b.iter().map(|&x| code(x)).collect()).collect())
            .collect();
        let min_len = symbols
            .iter()
            .enumerate()
            .map(|(i, _)| if is_var[i] { bodies[i].iter().map(|b| b.len()).min().unwrap_or(usize::MAX) } else { 1 })
            .collect();
        Compiled { symbols, is_var, letter, bodies, min_len }
    }
}

// A cell is `symbol_code << 1 | frozen`.
type Cells = Vec<u32>;

struct Node {
    cells: Cells,
    depth: usize,
    parent: Option<(usize, Vec<u16>)>,
}

struct Enumerator<'a> {
    g: &'a TcGrammar,
    cc: Compiled,
    live: Vec<bool>,
    max_len: usize,
}

impl Enumerator<'_> {
    fn accepts(&self, cells: &[u32]) -> bool {
        let mut q = self.g.control.start();
        for &c in cells.iter().filter(|c| *c & 1 == 0) {
            match self.cc.letter[(c >> 1) as usize] {
                Some(a) => q = self.g.control.next(q, a),
                None => return false,
            }
        }
        self.g.control.is_final(q)
    }

    /// Successors worth keeping: the level word of a successor that still
    /// has nonterminals must be control-accepted, and the frontier must fit.
    fn successors(&self, cells: &[u32]) -> Vec<(Cells, Vec<u16>)> {
        let mut suffix_min = vec![0usize; cells.len() + 1];
        for i in (0..cells.len()).rev() {
            let c = cells[i];
            let sym = (c >> 1) as usize;
            let here = if c & 1 == 1 || !self.cc.is_var[sym] { 1 } else { self.cc.min_len[sym] };
            suffix_min[i] = suffix_min[i + 1].saturating_add(here);
        }
        let mut out = Vec::new();
        let mut cur: Cells = Vec::with_capacity(self.max_len);
        let mut choice: Vec<u16> = Vec::new();
        self.dfs(cells, 0, Some(self.g.control.start()), false, &suffix_min, &mut cur, &mut choice, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        cells: &[u32],
        i: usize,
        q: Option<usize>,
        has_var: bool,
        suffix_min: &[usize],
        cur: &mut Cells,
        choice: &mut Vec<u16>,
        out: &mut Vec<(Cells, Vec<u16>)>,
    ) {
        if cur.len() + suffix_min[i] > self.max_len {
            return;
        }
        if has_var && q.is_none_or(|q| !self.live[q]) {
            return;
        }
        if i == cells.len() {
            if !has_var || q.is_some_and(|q| self.g.control.is_final(q)) {
                out.push((cur.clone(), choice.clone()));
            }
            return;
        }
        let c = cells[i];
        let sym = (c >> 1) as usize;
        if c & 1 == 1 || !self.cc.is_var[sym] {
            cur.push((c >> 1) << 1 | 1);
            self.dfs(cells, i + 1, q, has_var, suffix_min, cur, choice, out);
            cur.pop();
            return;
        }
        for (bi, body) in self.cc.bodies[sym].iter().enumerate() {
            let mut q2 = q;
            let mut var2 = has_var;
            for &s in body {
                q2 = match (q2, self.cc.letter[s as usize]) {
                    (Some(p), Some(a)) => Some(self.g.control.next(p, a)),
                    _ => None,
                };
                var2 |= self.cc.is_var[s as usize];
            }
            let mark = cur.len();
            cur.extend(body.iter().map(|&s| s << 1));
            choice.push(bi as u16);
            self.dfs(cells, i + 1, q2, var2, suffix_min, cur, choice, out);
            choice.pop();
            cur.truncate(mark);
        }
    }
}

pub fn tc_enumerate(g: &TcGrammar, max_len: usize) -> TcEnumeration {
    tc_enumerate_with(g, TcOptions::new(max_len))
}

/// Breadth-first enumeration of `L(g) ∩ T^{≤ max_len}`.
pub fn tc_enumerate_with(g: &TcGrammar, opts: TcOptions) -> TcEnumeration {
    let cc = Compiled::new(g);
    let en = Enumerator { g, live: g.control.live(), cc, max_len: opts.max_len };
    let start_code = en.cc.symbols.iter().position(|&s| s == g.core.start()).expect("start is declared") as u32;
    let root: Cells = vec![start_code << 1];
    let mut nodes = vec![Node { cells: root.clone(), depth: 0, parent: None }];
    let mut index: HashMap<Cells, usize> = HashMap::from([(root, 0)]);
    let mut queue = VecDeque::from([0usize]);
    let mut stats = TcStats::default();
    let mut finals: BTreeMap<Word, usize> = BTreeMap::new();

    while let Some(id) = queue.pop_front() {
        let (cells, depth) = (nodes[id].cells.clone(), nodes[id].depth);
        stats.levels = stats.levels.max(depth);
        let has_var = cells.iter().any(|&c| c & 1 == 0 && en.cc.is_var[(c >> 1) as usize]);
        if !has_var {
            if cells.len() <= opts.max_len {
                let w: Word = cells.iter().map(|&c| en.cc.symbols[(c >> 1) as usize]).collect();
                finals.entry(w).or_insert(id);
            }
            continue;
        }
        if !en.accepts(&cells) || opts.max_depth.is_some_and(|m| depth >= m) {
            continue;
        }
        stats.expanded += 1;
        for (next, choice) in en.successors(&cells) {
            if index.contains_key(&next) {
                continue;
            }
            let nid = nodes.len();
            index.insert(next.clone(), nid);
            nodes.push(Node { cells: next, depth: depth + 1, parent: Some((id, choice)) });
            queue.push_back(nid);
        }
    }
    stats.configs = nodes.len();

    let mut words: Vec<Word> = finals.keys().cloned().collect();
    g.core.symbols().sort_words(&mut words);
    let mut traces = BTreeMap::new();
    if opts.traces {
        for (w, &id) in &finals {
            traces.insert(w.clone(), rebuild_trace(&nodes, id, &en.cc));
        }
    }
    TcEnumeration { words, traces, stats }
}

fn rebuild_trace(nodes: &[Node], mut id: usize, cc: &Compiled) -> DerivationTrace {
    let mut levels = Vec::new();
    while let Some((pid, choice)) = &nodes[id].parent {
        let parent = &nodes[*pid].cells;
        let mut step = Vec::new();
        let mut k = 0;
        for (pos, &c) in parent.iter().enumerate() {
            let sym = (c >> 1) as usize;
            if c & 1 == 0 && cc.is_var[sym] {
                let body = &cc.bodies[sym][choice[k] as usize];
                step.push((pos, cc.symbols[sym], body.iter().map(|&s| cc.symbols[s as usize]).collect()));
                k += 1;
            }
        }
        levels.push(LevelStep { choices: step });
        id = *pid;
    }
    levels.reverse();
    DerivationTrace { levels }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certification {
    pub ok: bool,
    pub word: Option<Word>,
    pub diagnostic: Option<String>,
}

impl Certification {
    fn fail(msg: String) -> Certification {
        Certification { ok: false, word: None, diagnostic: Some(msg) }
    }
}

/// Replays `t` from `[S]`, checking control on every non-final level.
pub fn tc_certify(g: &TcGrammar, t: &DerivationTrace) -> Certification {
    let core = &g.core;
    let mut c = LevelConfig::initial(core.start());
    for (li, level) in t.levels.iter().enumerate() {
        if !c.has_active_var(core) {
            return Certification::fail(format!("level {li}: configuration is already final"));
        }
        let word = c.level_word();
        if !g.control.accepts_lenient(&word) {
            return Certification::fail(format!("level {li}: level word `{word}` is not in the control language"));
        }
        let active: Vec<usize> =
            (0..c.cells.len()).filter(|&p| !c.cells[p].frozen && core.is_var(c.cells[p].symbol)).collect();
        if level.choices.len() != active.len() {
            return Certification::fail(format!(
                "level {li}: {} choices for {} active nonterminals",
                level.choices.len(),
                active.len()
            ));
        }
        let mut bodies: Vec<&[Symbol]> = Vec::new();
        for ((pos, var, body), &want) in level.choices.iter().zip(&active) {
            if *pos != want {
                return Certification::fail(format!(
                    "level {li}: position {pos} is not the next active nonterminal (expected {want})"
                ));
            }
            if c.cells[want].symbol != *var {
                return Certification::fail(format!(
                    "level {li}: cell {pos} holds `{}`, not `{var}`",
                    c.cells[want].symbol
                ));
            }
            if !core.bodies(*var).iter().any(|b| b == body) {
                let w = Word::from(body.as_slice());
                return Certification::fail(format!("level {li}: `{var} -> {w}` is not a rule"));
            }
            bodies.push(body);
        }
        let next = apply(&c, &bodies, core);
        let erased_root = li == 0 && next.cells.is_empty();
        if next.cells.len() < c.cells.len() && !erased_root {
            return Certification::fail(format!("level {li}: frontier shrank"));
        }
        c = next;
    }
    if c.has_active_var(core) {
        return Certification::fail("derivation ends with active nonterminals".into());
    }
    Certification { ok: true, word: Some(c.sentential_form()), diagnostic: None }
}
