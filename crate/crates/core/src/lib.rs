//! Finite p-groups given by power-commutator presentations: element
//! arithmetic, subgroup algebra, powerful and powerfully nilpotent
//! predicates, and exhaustive checkers for the structure theorems about
//! normal subgroups of powerful p-groups.

pub mod config;
pub mod corpus;
pub mod crosscheck;
pub mod error;
pub mod harness;
pub mod oracle;
pub mod pc;
pub mod powerful;
pub mod subgroup;

pub use error::{Error, Result};
pub use oracle::CayleyOracle;
pub use pc::{Element, PcPresentation, PresentationBuilder};
pub use subgroup::{QuotientResult, Subgroup};
