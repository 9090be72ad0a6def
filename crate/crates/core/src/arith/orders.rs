//! Modular exponentiation and multiplicative orders.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::factor::{factor_with_budget, Factorization};
use crate::error::{Error, Result};

/// base^exp mod modulus, reduced into [0, modulus).
pub fn mod_pow(base: &BigInt, exp: &BigInt, modulus: &BigInt) -> Result<BigInt> {
    if modulus < &BigInt::from(2) {
        return Err(Error::Domain(format!("modulus must be >= 2, got {modulus}")));
    }
    if exp < &BigInt::zero() {
        return Err(Error::Domain("exponent must be nonnegative".into()));
    }
    Ok(base.mod_floor(modulus).modpow(exp, modulus))
}

/// Smallest d >= 1 with a^d = 1 mod modulus, for gcd(a, modulus) = 1.
///
/// The group order phi(modulus) is factored and then reduced prime by
/// prime; this works for any modulus since the order divides phi.
pub fn multiplicative_order(a: &BigInt, modulus: &BigInt) -> Result<BigInt> {
    multiplicative_order_with_budget(a, modulus, 1 << 25)
}

pub fn multiplicative_order_with_budget(
    a: &BigInt,
    modulus: &BigInt,
    rho_budget: u64,
) -> Result<BigInt> {
    if modulus < &BigInt::from(2) {
        return Err(Error::Domain(format!("modulus must be >= 2, got {modulus}")));
    }
    let a = a.mod_floor(modulus);
    if !a.gcd(modulus).is_one() {
        return Err(Error::Domain(format!(
            "gcd({a}, {modulus}) != 1; element not invertible"
        )));
    }
    let phi = factor_with_budget(modulus, rho_budget)?.euler_phi();
    order_dividing(&a, modulus, &phi, rho_budget)
}

/// Exact order of a mod modulus given a multiple `bound` of that order.
pub fn order_dividing(
    a: &BigInt,
    modulus: &BigInt,
    bound: &BigInt,
    rho_budget: u64,
) -> Result<BigInt> {
    debug_assert!(a.modpow(bound, modulus).is_one());
    let bound_factors: Factorization = factor_with_budget(bound, rho_budget)?;
    let mut d = bound.clone();
    for (p, _) in bound_factors.factors() {
        while d.is_multiple_of(p) {
            let candidate = &d / p;
            if a.modpow(&candidate, modulus).is_one() {
                d = candidate;
            } else {
                break;
            }
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_pow_examples() {
        // 9^2 = 81 = 40 mod 41
        assert_eq!(
            mod_pow(&BigInt::from(9), &BigInt::from(2), &BigInt::from(41)).unwrap(),
            BigInt::from(40)
        );
        // exponent-zero identity
        assert_eq!(
            mod_pow(&BigInt::from(7), &BigInt::zero(), &BigInt::from(13)).unwrap(),
            BigInt::one()
        );
        // identity exponent with reduction
        assert_eq!(
            mod_pow(&BigInt::from(5), &BigInt::one(), &BigInt::from(3)).unwrap(),
            BigInt::from(2)
        );
        assert!(mod_pow(&BigInt::from(5), &BigInt::one(), &BigInt::one()).is_err());
    }

    #[test]
    fn order_examples() {
        // 9^2 = -1 mod 41, so the order is 4
        assert_eq!(
            multiplicative_order(&BigInt::from(9), &BigInt::from(41)).unwrap(),
            BigInt::from(4)
        );
        assert_eq!(
            multiplicative_order(&BigInt::one(), &BigInt::from(97)).unwrap(),
            BigInt::one()
        );
        // powers of 2 mod 5: 2, 4, 3, 1
        assert_eq!(
            multiplicative_order(&BigInt::from(2), &BigInt::from(5)).unwrap(),
            BigInt::from(4)
        );
        assert!(multiplicative_order(&BigInt::from(10), &BigInt::from(5)).is_err());
    }

    #[test]
    fn order_minimality_brute_force() {
        for m in [7u64, 9, 25, 41, 101] {
            let modulus = BigInt::from(m);
            for a in 2..m {
                if BigInt::from(a).gcd(&modulus).is_one() {
                    let d = multiplicative_order(&BigInt::from(a), &modulus).unwrap();
                    let mut x = BigInt::one();
                    let mut first = None;
                    for e in 1..=m {
                        x = (x * a).mod_floor(&modulus);
                        if x.is_one() {
                            first = Some(e);
                            break;
                        }
                    }
                    assert_eq!(Some(super::super::primality::to_u64(&d).unwrap()), first);
                }
            }
        }
    }

    #[test]
    fn order_on_prime_power_modulus() {
        // ord(2 mod 9): 2,4,8,7,5,1 -> 6
        assert_eq!(
            multiplicative_order(&BigInt::from(2), &BigInt::from(9)).unwrap(),
            BigInt::from(6)
        );
    }
}
