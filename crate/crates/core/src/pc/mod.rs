//! Power-commutator presentations and normal-form arithmetic.

mod collect;
mod element;
mod parse;
mod presentation;

pub use element::{Element, Exponents};
pub use presentation::{is_prime, PcPresentation, PresentationBuilder};
