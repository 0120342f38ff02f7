//! Dirac constraint analysis of polynomial degenerate Lagrangians.
//!
//! The crate is layered bottom-up: exact coefficients ([`arith`]), polynomial
//! rings with block orders ([`poly`]), Gröbner bases ([`groebner`]), linear
//! algebra over quotient rings ([`linalg`]), model ingestion ([`model`]),
//! Hamiltonian mechanics ([`mechanics`]) and the constraint algorithm itself
//! ([`analysis`]).

pub mod analysis;
pub mod arith;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod mechanics;
pub mod model;
pub mod poly;

pub use error::{Error, Result};
