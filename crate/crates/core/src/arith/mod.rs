//! Exact integer and modular arithmetic kernel: primality, factorization,
//! multiplicative orders and cyclotomic polynomials.
//!
//! All operations are pure functions on immutable values.

mod cyclotomic;
mod factor;
mod orders;
mod primality;

pub use cyclotomic::{cyclotomic_poly, divisors, euler_phi_u64, xn_minus_1};
pub use factor::{factor, factor_with_budget, Factorization};
pub use orders::{mod_pow, multiplicative_order, multiplicative_order_with_budget, order_dividing};
pub use primality::{is_prime, is_prime_seeded, next_prime, primes_below, to_u64};
