//! Cyclotomic polynomials by iterated exact division of X^n - 1.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::IntPolynomial;

/// All divisors of n, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Euler phi by trial division; desk-scale arguments only.
pub fn euler_phi_u64(n: u64) -> u64 {
    assert!(n >= 1);
    let mut m = n;
    let mut phi = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi
}

/// X^n - 1.
pub fn xn_minus_1(n: u64) -> IntPolynomial {
    let mut coeffs = vec![BigInt::from(0); n as usize + 1];
    coeffs[0] = BigInt::from(-1);
    coeffs[n as usize] = BigInt::one();
    IntPolynomial::new(coeffs)
}

/// The n-th cyclotomic polynomial Phi_n(X).
pub fn cyclotomic_poly(n: u64) -> IntPolynomial {
    assert!(n >= 1, "cyclotomic index must be >= 1");
    let mut table: BTreeMap<u64, IntPolynomial> = BTreeMap::new();
    for d in divisors(n) {
        let mut q = xn_minus_1(d);
        for e in divisors(d) {
            if e == d {
                continue;
            }
            let phi_e = table.get(&e).expect("divisors visited in order");
            let (quo, rem) = q.divmod_monic(phi_e);
            debug_assert!(rem.is_zero());
            q = quo;
        }
        table.insert(d, q);
    }
    table.remove(&n).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::IntPolynomial;

    #[test]
    fn base_cases() {
        assert_eq!(cyclotomic_poly(1), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), IntPolynomial::from_i64(&[1, 1]));
        // Oracle for the spec values: divide X^8-1 by Phi_1 Phi_2 Phi_4 directly.
        let mut q = xn_minus_1(8);
        for d in [1u64, 2, 4] {
            q = q.divmod_monic(&cyclotomic_poly(d)).0;
        }
        assert_eq!(q, IntPolynomial::from_i64(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic_poly(8), q);
        assert_eq!(cyclotomic_poly(6), IntPolynomial::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), IntPolynomial::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn product_over_divisors_reconstructs_xn_minus_1() {
        for n in 1..=200u64 {
            let mut prod = IntPolynomial::one();
            for d in divisors(n) {
                prod = prod.mul(&cyclotomic_poly(d));
            }
            assert_eq!(prod, xn_minus_1(n), "n = {n}");
        }
    }

    #[test]
    fn degrees_are_euler_phi() {
        for n in 1..=60u64 {
            assert_eq!(cyclotomic_poly(n).deg() as u64, euler_phi_u64(n));
        }
    }

    #[test]
    fn phi105_has_coefficient_minus_two() {
        let p = cyclotomic_poly(105);
        assert_eq!(p.coeff(7), BigInt::from(-2));
    }
}
