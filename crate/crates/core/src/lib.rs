//! Workbench for tree-controlled grammars with subregular control
//! languages: regular-language carriers, SLT descriptions and family
//! deciders, level-synchronized TC derivation, grammar transformations and
//! an executable catalog of witness languages.

pub mod cli;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod oracle;
pub mod random;
pub mod regular;
pub mod subregular;
pub mod symbol;
pub mod transforms;
pub mod treectrl;
pub mod witnesses;

pub use error::{Error, Result};
pub use symbol::{Alphabet, Symbol, Word};
