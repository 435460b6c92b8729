//! Regular expressions over an explicit alphabet.
//!
//! Concrete syntax: literals are identifier tokens; juxtaposition or `.` is
//! concatenation, `|` union, postfix `*` star, parentheses group, `%empty`
//! is ∅ and `%eps` is λ (encoded as `∅*`). Whitespace is insignificant.
//!
//! An identifier run that is not itself a letter is segmented greedily
//! (longest match first) into letters of the alphabet, so `ab*a` over
//! `{a, b}` reads as `a b* a` and `a1a2` over `{a1, a2}` as `a1 a2`.

use std::fmt;

use crate::error::{Error, Result};
use crate::regular::dfa::Dfa;
use crate::regular::nfa::Nfa;
use crate::symbol::{is_name_char, Alphabet, Symbol, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Regex {
    Empty,
    Literal(Symbol),
    Concat(Box<Regex>, Box<Regex>),
    Union(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
}

impl Regex {
    pub fn epsilon() -> Regex {
        Regex::Star(Box::new(Regex::Empty))
    }

    pub fn lit(s: Symbol) -> Regex {
        Regex::Literal(s)
    }

    pub fn concat(a: Regex, b: Regex) -> Regex {
        Regex::Concat(Box::new(a), Box::new(b))
    }

    pub fn union(a: Regex, b: Regex) -> Regex {
        Regex::Union(Box::new(a), Box::new(b))
    }

    pub fn star(a: Regex) -> Regex {
        Regex::Star(Box::new(a))
    }

    /// Left-nested concatenation; λ for an empty sequence.
    pub fn concat_all<I: IntoIterator<Item = Regex>>(parts: I) -> Regex {
        parts.into_iter().reduce(Regex::concat).unwrap_or_else(Regex::epsilon)
    }

    /// Left-nested union; ∅ for an empty sequence.
    pub fn union_all<I: IntoIterator<Item = Regex>>(parts: I) -> Regex {
        parts.into_iter().reduce(Regex::union).unwrap_or(Regex::Empty)
    }

    /// The word as a concatenation of literals (λ for the empty word).
    pub fn word(w: &[Symbol]) -> Regex {
        Regex::concat_all(w.iter().map(|s| Regex::Literal(*s)))
    }

    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Regex> {
        let tokens = tokenize(text, alphabet)?;
        let mut p = Parser { tokens, pos: 0, len: text.chars().count() };
        let r = p.expr()?;
        if let Some((at, _)) = p.tokens.get(p.pos) {
            return Err(Error::Syntax { position: *at, message: "unexpected token".into() });
        }
        Ok(r)
    }

    pub fn is_union_free(&self) -> bool {
        self.count_unions() == 0
    }

    pub fn count_unions(&self) -> usize {
        match self {
            Regex::Empty | Regex::Literal(_) => 0,
            Regex::Concat(a, b) => a.count_unions() + b.count_unions(),
            Regex::Union(a, b) => 1 + a.count_unions() + b.count_unions(),
            Regex::Star(a) => a.count_unions(),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Regex::Empty | Regex::Literal(_) => 1,
            Regex::Concat(a, b) | Regex::Union(a, b) => 1 + a.node_count() + b.node_count(),
            Regex::Star(a) => 1 + a.node_count(),
        }
    }

    pub fn symbols(&self, out: &mut Vec<Symbol>) {
        match self {
            Regex::Empty => {}
            Regex::Literal(s) => {
                if !out.contains(s) {
                    out.push(*s)
                }
            }
            Regex::Concat(a, b) | Regex::Union(a, b) => {
                a.symbols(out);
                b.symbols(out);
            }
            Regex::Star(a) => a.symbols(out),
        }
    }

    /// Thompson construction.
    pub fn to_nfa(&self, alphabet: &Alphabet) -> Result<Nfa> {
        let mut nfa = Nfa::new(alphabet.clone());
        let (s, f) = self.build(&mut nfa)?;
        nfa.add_start(s);
        nfa.set_final(f, true);
        Ok(nfa)
    }

    fn build(&self, nfa: &mut Nfa) -> Result<(usize, usize)> {
        let s = nfa.add_state();
        let f = nfa.add_state();
        match self {
            Regex::Empty => {}
            Regex::Literal(sym) => {
                let a = nfa.alphabet().index_of(*sym).ok_or_else(|| Error::ForeignSymbol(sym.name().to_owned()))?;
                nfa.add_transition(s, Some(a), f);
            }
            Regex::Concat(a, b) => {
                let (s1, f1) = a.build(nfa)?;
                let (s2, f2) = b.build(nfa)?;
                nfa.add_transition(s, None, s1);
                nfa.add_transition(f1, None, s2);
                nfa.add_transition(f2, None, f);
            }
            Regex::Union(a, b) => {
                for r in [a, b] {
                    let (si, fi) = r.build(nfa)?;
                    nfa.add_transition(s, None, si);
                    nfa.add_transition(fi, None, f);
                }
            }
            Regex::Star(a) => {
                let (s1, f1) = a.build(nfa)?;
                nfa.add_transition(s, None, f);
                nfa.add_transition(s, None, s1);
                nfa.add_transition(f1, None, s1);
                nfa.add_transition(f1, None, f);
            }
        }
        Ok((s, f))
    }

    /// Minimal canonical DFA of the expression.
    pub fn compile(&self, alphabet: &Alphabet) -> Result<Dfa> {
        self.to_nfa(alphabet)?.to_min_dfa()
    }

    fn precedence(&self) -> u8 {
        match self {
            Regex::Union(..) => 0,
            Regex::Concat(..) => 1,
            Regex::Star(..) => 2,
            Regex::Empty | Regex::Literal(_) => 3,
        }
    }
}

/// Parses and compiles in one go.
pub fn regex_compile(text: &str, alphabet: &Alphabet) -> Result<Dfa> {
    Regex::parse(text, alphabet)?.compile(alphabet)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Lit(Symbol),
    Empty,
    Eps,
    Bar,
    Dot,
    Star,
    Open,
    Close,
}

fn tokenize(text: &str, alphabet: &Alphabet) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '|' => {
                out.push((i, Tok::Bar));
                i += 1
            }
            '.' => {
                out.push((i, Tok::Dot));
                i += 1
            }
            '*' => {
                out.push((i, Tok::Star));
                i += 1
            }
            '(' => {
                out.push((i, Tok::Open));
                i += 1
            }
            ')' => {
                out.push((i, Tok::Close));
                i += 1
            }
            '%' => {
                let start = i;
                i += 1;
                while i < chars.len() && is_name_char(chars[i]) {
                    i += 1;
                }
                let word: String = chars[start + 1..i].iter().collect();
                match word.as_str() {
                    "empty" => out.push((start, Tok::Empty)),
                    "eps" => out.push((start, Tok::Eps)),
                    _ => return Err(Error::Syntax { position: start, message: format!("unknown keyword `%{word}`") }),
                }
            }
            c if is_name_char(c) => {
                let start = i;
                while i < chars.len() && is_name_char(chars[i]) {
                    i += 1;
                }
                let run: String = chars[start..i].iter().collect();
                segment(&run, start, alphabet, &mut out)?;
            }
            _ => return Err(Error::Syntax { position: i, message: format!("unexpected character `{c}`") }),
        }
    }
    Ok(out)
}

// Longest-match segmentation of an identifier run into alphabet letters.
fn segment(run: &str, offset: usize, alphabet: &Alphabet, out: &mut Vec<(usize, Tok)>) -> Result<()> {
    if let Some(s) = alphabet.lookup(run) {
        out.push((offset, Tok::Lit(s)));
        return Ok(());
    }
    let chars: Vec<char> = run.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let mut found = None;
        for j in (i + 1..=chars.len()).rev() {
            let piece: String = chars[i..j].iter().collect();
            if let Some(s) = alphabet.lookup(&piece) {
                found = Some((j, s));
                break;
            }
        }
        match found {
            Some((j, s)) => {
                out.push((offset + i, Tok::Lit(s)));
                i = j;
            }
            None => return Err(Error::UnknownSymbol(run.to_owned())),
        }
    }
    Ok(())
}

struct Parser {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map(|(p, _)| *p).unwrap_or(self.len)
    }

    fn expr(&mut self) -> Result<Regex> {
        let mut r = self.term()?;
        while self.peek() == Some(&Tok::Bar) {
            self.pos += 1;
            let rhs = self.term()?;
            r = Regex::union(r, rhs);
        }
        Ok(r)
    }

    fn term(&mut self) -> Result<Regex> {
        let mut r = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Dot) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    r = Regex::concat(r, rhs);
                }
                Some(Tok::Lit(_)) | Some(Tok::Open) | Some(Tok::Empty) | Some(Tok::Eps) => {
                    let rhs = self.factor()?;
                    r = Regex::concat(r, rhs);
                }
                _ => return Ok(r),
            }
        }
    }

    fn factor(&mut self) -> Result<Regex> {
        let mut r = self.atom()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            r = Regex::star(r);
        }
        Ok(r)
    }

    fn atom(&mut self) -> Result<Regex> {
        let at = self.here();
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::Lit(s)) => {
                self.pos += 1;
                Ok(Regex::Literal(s))
            }
            Some(Tok::Empty) => {
                self.pos += 1;
                Ok(Regex::Empty)
            }
            Some(Tok::Eps) => {
                self.pos += 1;
                Ok(Regex::epsilon())
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let r = self.expr()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(Error::Syntax { position: self.here(), message: "expected `)`".into() });
                }
                self.pos += 1;
                Ok(r)
            }
            _ => Err(Error::Syntax { position: at, message: "expected a literal, `(`, `%empty` or `%eps`".into() }),
        }
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn wrap(r: &Regex, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if r.precedence() < min {
                write!(f, "({r})")
            } else {
                write!(f, "{r}")
            }
        }
        match self {
            Regex::Empty => f.write_str("%empty"),
            Regex::Literal(s) => f.write_str(s.name()),
            Regex::Star(a) => {
                wrap(a, 3, f)?;
                f.write_str("*")
            }
            Regex::Concat(a, b) => {
                wrap(a, 1, f)?;
                f.write_str(" ")?;
                wrap(b, 2, f)
            }
            Regex::Union(a, b) => {
                wrap(a, 0, f)?;
                f.write_str(" | ")?;
                wrap(b, 1, f)
            }
        }
    }
}

/// Words of a finite set as a union of concatenations.
pub fn words_regex(words: &[Word]) -> Regex {
    Regex::union_all(words.iter().map(|w| Regex::word(w)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::from_names(["a", "b"])
    }

    #[test]
    fn l1_has_two_states() {
        let d = regex_compile("a*b(a|b)*", &ab()).unwrap();
        assert_eq!(d.num_states(), 2);
        assert_eq!(d.rows(), vec![vec![0, 1], vec![1, 1]]);
        assert!(d.is_final(1) && !d.is_final(0));
    }

    #[test]
    fn empty_set_has_one_rejecting_state() {
        let d = regex_compile("%empty", &ab()).unwrap();
        assert_eq!(d.num_states(), 1);
        assert!(d.is_empty());
    }

    #[test]
    fn multiples_of_three() {
        let a = Alphabet::from_names(["a"]);
        assert_eq!(regex_compile("aaa(aaa)*", &a).unwrap().num_states(), 4);
    }

    #[test]
    fn segmentation_of_multichar_letters() {
        let v = Alphabet::from_names(["a1", "a2"]);
        let r = Regex::parse("a1a2*", &v).unwrap();
        assert_eq!(r, Regex::concat(Regex::lit(Symbol::new("a1")), Regex::star(Regex::lit(Symbol::new("a2")))));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert!(matches!(Regex::parse("a|(b", &ab()), Err(Error::Syntax { position: 4, .. })));
        assert!(matches!(Regex::parse("a**|", &ab()), Err(Error::Syntax { position: 4, .. })));
        assert!(matches!(Regex::parse("%foo", &ab()), Err(Error::Syntax { position: 0, .. })));
        assert!(matches!(Regex::parse("ac", &ab()), Err(Error::UnknownSymbol(_))));
    }

    #[test]
    fn eps_and_dot() {
        let d = regex_compile("%eps | a.b", &ab()).unwrap();
        assert_eq!(d.enumerate(3), vec![Word::empty(), Word::chars("ab")]);
    }

    #[test]
    fn print_parse_round_trip() {
        for text in ["a*b(a|b)*", "(a|b)(a b)*", "a (b a)", "%empty*", "%empty", "a** | b | (a | b)"] {
            let r = Regex::parse(text, &ab()).unwrap();
            let again = Regex::parse(&r.to_string(), &ab()).unwrap();
            assert_eq!(r, again, "{text} printed as {r}");
        }
    }
}
