//! Exact-arithmetic construction and certification of pairing-friendly
//! abelian-variety parameters over finite fields.
//!
//! The crate validates Weil numbers, computes Newton polygons and
//! Honda-Tate invariants, computes embedding and full embedding degrees,
//! and realizes four existence constructions as deterministic searches
//! that emit machine-checkable JSON certificates.

pub mod algebra;
pub mod arith;
pub mod config;
pub mod error;
pub mod forge;
pub mod pairing;
pub mod weil;

pub use algebra::{ComplexEmbeddingSet, IntPolynomial, NumberFieldElement};
pub use config::RunConfig;
pub use error::{Error, Result};
pub use weil::{HondaTateReport, NewtonPolygon, WeilNumber};
