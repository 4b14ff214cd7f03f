//! Placement delivery arrays and their three-matrix characterization.
//!
//! A [`Pda`] is validated against C1–C3; a [`TripleSystem`] is checked
//! against the E-conditions. The two are interconverted by
//! [`pda_to_triple`] and [`triple_to_pda`], and sufficient triples are
//! completed by per-block perfect matchings before orientation.

mod array;
mod convert;
mod matching;
mod matrix;
mod product;
mod triple;

pub use array::{C3Failure, Entry, Pda, PdaParams, PdaViolation, SchemeParameters};
pub use convert::{pda_to_triple, triple_to_pda};
pub use matching::{complete_matching, all_orientations, orient, perfect_matching, Orientation};
pub use matrix::BinaryMatrix;
pub use product::{direct_product, triple_product};
pub use triple::{Condition, ConditionReport, Side, TripleSystem, Witness};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PdaError {
    #[error("malformed PDA: {0}")]
    Shape(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid PDA: {0}")]
    Invalid(#[from] PdaViolation),
    #[error("condition {condition} fails: {witness}")]
    Condition { condition: Condition, witness: Witness },
    #[error("E4 multiplicity at (x{x}, z{z}): {count} symbols complete the cell")]
    Structural { x: usize, z: usize, count: usize },
    #[error("inadmissible orientation: {0}")]
    Inadmissible(String),
    #[error("matching hypothesis fails: {0}")]
    Matching(String),
}
