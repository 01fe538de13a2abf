//! Parallel-treebank engine: syntax trees with discontinuous constituents,
//! predicate-argument annotation bound to tree nodes, and predicate/argument
//! alignment across a language pair.

pub mod align;
pub mod analysis;
pub mod annot;
pub mod diag;
mod error;
pub mod exec;
pub mod ftb;
pub mod paa;
pub mod report;
pub mod store;
pub mod synth;
pub mod tree;
pub mod vocab;

pub use error::{Error, Result};
pub use exec::Exec;
