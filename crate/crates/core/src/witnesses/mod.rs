//! Catalog of witness languages separating subregular families, with
//! machine-checked claims, and the hierarchy reports built on them.

pub mod catalog;
pub mod hierarchy;

pub use catalog::{
    build_witness, build_witness_with_limit, default_suite, verify_all, verify_witness, Claim, ClaimResult, Family,
    Method, Source, SourceCheck, WitnessCase, WitnessId, WitnessReport, DEFAULT_MAX_N,
};
pub use hierarchy::{hierarchy_report, Edge, HierarchyBounds, HierarchyReport, Relation, Status};
