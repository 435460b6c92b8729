//! Grammar constructions: monotone grammars to Kuroda normal form, Kuroda
//! grammars to tree-controlled grammars with SLT₂ control, and the
//! alternative control representations.

pub mod construct;
pub mod grammar;
pub mod kuroda;

pub use construct::{
    control_rlg_one_var, kuroda_to_tc, one_var_star_grammar, rl1p_semantics, singleton_control,
    star_of_finite_union_free, Marker, TcConstruction,
};
pub use grammar::{KurodaGrammar, KurodaShape, MonotoneGrammar, Production, DEFAULT_FORM_CAP};
pub use kuroda::monotone_to_kuroda;
