//! C ABI over `tcg`.
//!
//! Handles are opaque and owned by the caller once returned; release them
//! with the matching `*_free`. Every fallible call returns a [`TcgStatus`];
//! the message of the most recent failure on the calling thread is available
//! from [`tcg_last_error`]. Strings returned through out-parameters are
//! NUL-terminated UTF-8 and must be released with [`tcg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tcg::format::Document;
use tcg::regular::{Dfa, Regex};
use tcg::subregular::is_slt_k;
use tcg::symbol::{Alphabet, Word};
use tcg::treectrl::{tc_enumerate, validate_tc, TcGrammar};
use tcg::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TcgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    Symbol = 4,
    InvalidArgument = 5,
    InvalidGrammar = 6,
    Format = 7,
    ResourceLimit = 8,
    Io = 9,
    Panic = 10,
}

/// A minimal complete DFA.
pub struct TcgDfa(Dfa);

/// A validated tree-controlled grammar.
pub struct TcgTcGrammar(TcGrammar);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(TcgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Syntax { .. } => TcgStatus::Syntax,
            Error::UnknownSymbol(_) | Error::ForeignSymbol(_) | Error::AlphabetMismatch(_) => TcgStatus::Symbol,
            Error::ResourceLimit { .. } => TcgStatus::ResourceLimit,
            Error::InvalidGrammar(_) => TcgStatus::InvalidGrammar,
            Error::InvalidArgument(_) => TcgStatus::InvalidArgument,
            Error::Format(_) => TcgStatus::Format,
            Error::Io(_) => TcgStatus::Io,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TcgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TcgStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            TcgStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(TcgStatus::NullPointer, format!("`{what}` is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure(TcgStatus::InvalidUtf8, format!("`{what}`: {e}")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(TcgStatus::NullPointer, format!("`{what}` is null")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| Failure(TcgStatus::NullPointer, format!("`{what}` is null")))
}

fn string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior NULs removed").into_raw()
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tcg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn tcg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Compiles `expr` over the whitespace-separated `alphabet`.
///
/// # Safety
/// `expr` and `alphabet` must be valid C strings; `out_dfa` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tcg_dfa_from_regex(
    expr: *const c_char,
    alphabet: *const c_char,
    out_dfa: *mut *mut TcgDfa,
) -> TcgStatus {
    guard(|| {
        let slot = out(out_dfa, "out_dfa")?;
        let alphabet = Alphabet::parse(text(alphabet, "alphabet")?)?;
        let d = Regex::parse(text(expr, "expr")?, &alphabet)?.compile(&alphabet)?;
        *slot = Box::into_raw(Box::new(TcgDfa(d)));
        Ok(())
    })
}

/// Reads any regular-language document (dfa, nfa, rlg, regex, slt).
///
/// # Safety
/// `toml` must be a valid C string; `out_dfa` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tcg_dfa_from_document(toml: *const c_char, out_dfa: *mut *mut TcgDfa) -> TcgStatus {
    guard(|| {
        let slot = out(out_dfa, "out_dfa")?;
        let d = Document::parse(text(toml, "toml")?)?.to_dfa()?;
        *slot = Box::into_raw(Box::new(TcgDfa(d.minimize())));
        Ok(())
    })
}

/// # Safety
/// `dfa` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tcg_dfa_free(dfa: *mut TcgDfa) {
    if !dfa.is_null() {
        drop(Box::from_raw(dfa));
    }
}

/// # Safety
/// `dfa` must be a live handle; `out_states` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tcg_dfa_state_complexity(dfa: *const TcgDfa, out_states: *mut usize) -> TcgStatus {
    guard(|| {
        let slot = out(out_states, "out_states")?;
        *slot = handle(dfa, "dfa")?.0.state_complexity();
        Ok(())
    })
}

/// Membership of a whitespace-separated word (single-character symbols may
/// be glued).
///
/// # Safety
/// `dfa` must be a live handle, `word` a valid C string, `out_member` writable.
#[no_mangle]
pub unsafe extern "C" fn tcg_dfa_accepts(dfa: *const TcgDfa, word: *const c_char, out_member: *mut bool) -> TcgStatus {
    guard(|| {
        let slot = out(out_member, "out_member")?;
        let d = &handle(dfa, "dfa")?.0;
        let w = text(word, "word")?;
        let w = if w.contains(char::is_whitespace) { Word::parse(w) } else { Word::chars(w) };
        *slot = d.accepts(&w)?;
        Ok(())
    })
}

/// # Safety
/// `a` and `b` must be live handles; `out_equal` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tcg_dfa_equivalent(a: *const TcgDfa, b: *const TcgDfa, out_equal: *mut bool) -> TcgStatus {
    guard(|| {
        let slot = out(out_equal, "out_equal")?;
        *slot = handle(a, "a")?.0.equivalent(&handle(b, "b")?.0)?;
        Ok(())
    })
}

/// # Safety
/// `dfa` must be a live handle; `out_member` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tcg_dfa_is_slt(dfa: *const TcgDfa, k: usize, out_member: *mut bool) -> TcgStatus {
    guard(|| {
        let slot = out(out_member, "out_member")?;
        if k == 0 {
            return Err(Failure(TcgStatus::InvalidArgument, "k must be at least 1".into()));
        }
        *slot = is_slt_k(&handle(dfa, "dfa")?.0, k).holds();
        Ok(())
    })
}

/// Serializes the automaton as a `dfa` document.
///
/// # Safety
/// `dfa` must be a live handle; `out_toml` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tcg_dfa_to_document(dfa: *const TcgDfa, out_toml: *mut *mut c_char) -> TcgStatus {
    guard(|| {
        let slot = out(out_toml, "out_toml")?;
        *slot = string(Document::Dfa(handle(dfa, "dfa")?.0.clone()).to_toml());
        Ok(())
    })
}

/// Reads and validates a `tc` document.
///
/// # Safety
/// `toml` must be a valid C string; `out_grammar` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tcg_tc_from_document(toml: *const c_char, out_grammar: *mut *mut TcgTcGrammar) -> TcgStatus {
    guard(|| {
        let slot = out(out_grammar, "out_grammar")?;
        let doc = Document::parse(text(toml, "toml")?)?;
        let Document::Tc(t) = doc else {
            return Err(Failure(TcgStatus::Format, format!("expected a `tc` document, got `{}`", doc.kind())));
        };
        let g = t.grammar()?;
        let violations = validate_tc(&g);
        if !violations.is_empty() {
            let msgs: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            return Err(Failure(TcgStatus::InvalidGrammar, msgs.join("; ")));
        }
        *slot = Box::into_raw(Box::new(TcgTcGrammar(g)));
        Ok(())
    })
}

/// # Safety
/// `grammar` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tcg_tc_free(grammar: *mut TcgTcGrammar) {
    if !grammar.is_null() {
        drop(Box::from_raw(grammar));
    }
}

/// Words of length at most `max_len` in shortlex order, one per line.
///
/// # Safety
/// `grammar` must be a live handle; `out_words` and `out_count` writable.
#[no_mangle]
pub unsafe extern "C" fn tcg_tc_enumerate(
    grammar: *const TcgTcGrammar,
    max_len: usize,
    out_words: *mut *mut c_char,
    out_count: *mut usize,
) -> TcgStatus {
    guard(|| {
        let g = &handle(grammar, "grammar")?.0;
        let words_slot = out(out_words, "out_words")?;
        let count_slot = out(out_count, "out_count")?;
        let e = tc_enumerate(g, max_len);
        let lines: Vec<String> = e.words.iter().map(|w| w.to_string()).collect();
        *count_slot = lines.len();
        *words_slot = string(lines.join("\n"));
        Ok(())
    })
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn tcg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
