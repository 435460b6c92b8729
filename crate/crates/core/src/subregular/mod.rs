//! SLT descriptions, the canonical-set SLT_k decider, structural family
//! deciders and exact bounded right-linear grammar search.

pub mod classify;
pub mod decide;
pub mod search;
pub mod slt;

pub use classify::{classify, Bounded, ClassificationReport, ClassifyBounds, Definite, Nilpotent};
pub use decide::{canonical_slt, is_slt_k, is_slt_upto, SltVerdict};
pub use search::{search_rlg, search_rlg_capped, SearchBudget, SearchResult, DEFAULT_NODE_CAP};
pub use slt::{slt1_to_rlg, slt_member, slt_to_dfa, SltDescription, SltMethod};
