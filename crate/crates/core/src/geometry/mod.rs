//! Finite fields of small order and the lattice of subspaces of `F_q^k`.
//!
//! Subspaces are identified by their reduced row-echelon basis, which makes
//! equality and hashing structural. Counting uses arbitrary precision.

mod counting;
mod field;
mod subspace;

pub use counting::{gaussian_binomial, incidence_counts};
pub use field::{is_prime, prime_power, FieldSpec, MAX_PRIME_ORDER};
pub use subspace::{enumerate_subspaces, row_reduce, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("unsupported field order {0}: use a prime up to 251, or 4, 8, 9")]
    UnsupportedField(u32),
    #[error("bad reduction polynomial: {0}")]
    BadModulus(String),
    #[error("domain error: {0}")]
    Domain(String),
}
