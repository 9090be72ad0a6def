//! Exact polynomial algebra: integer polynomials, factorization over prime
//! fields, finite field extensions, number field elements and certified
//! complex embeddings.

mod complex_roots;
mod finite_field;
mod int_poly;
mod irreducible;
mod mod_poly;
mod number_field;

pub use complex_roots::{
    certified_roots, round_dyadic, sqrt_upper, ComplexBall, ComplexEmbeddingSet, ComplexRat,
};
pub use finite_field::{prime_field_order, FiniteFieldExt};
pub use int_poly::IntPolynomial;
pub use irreducible::{factor_over_z, is_irreducible_over_q};
pub use mod_poly::{factor_mod, is_irreducible_mod, roots_mod, squarefree_decomposition, ModPoly};
pub use number_field::{roots_in_field, NumberFieldElement};
