//! Finite polylogarithms modulo `p`, `p`-adic cyclotomic units, and numerical
//! verification of the congruences that connect them.

pub mod adele_ring;
pub mod arith;
pub mod error;
pub mod etale_congruence;
pub mod exact_identities;
pub mod finite_polylogs;
pub mod indices;
pub mod padic_cyclotomic;
pub mod sweep;

pub use error::{Error, Result};
pub use indices::Index;
