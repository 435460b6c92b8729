//! Tree-controlled grammars: a context-free core whose derivation-tree
//! levels (all but the last) must spell words of a regular control language.

pub mod cfg;
pub mod tc;

pub use cfg::{Cfg, CfgRule};
pub use tc::{
    tc_certify, tc_enumerate, tc_enumerate_with, tc_step, validate_tc, Cell, Certification, DerivationTrace,
    LevelConfig, LevelStep, TcEnumeration, TcGrammar, TcOptions, TcStats, Violation,
};
