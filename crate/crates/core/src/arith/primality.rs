//! Strong-probable-prime testing.
//!
//! Below 2^64 a fixed deterministic witness set decides primality exactly;
//! above that, the fixed witnesses are followed by 64 seeded random rounds
//! so results are reproducible run to run.

use num_bigint::{BigInt, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seed for the probabilistic rounds when no caller seed is supplied.
pub const DEFAULT_PRIMALITY_SEED: u64 = 0x57a6_1e5e_ed00_0001;

/// Witnesses proving primality for every n < 3.3 * 10^24 (covers u64).
const SMALL_WITNESSES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

const RANDOM_ROUNDS: usize = 64;

/// Deterministic for inputs below 2^64; seeded probabilistic above.
pub fn is_prime(n: &BigInt) -> bool {
    is_prime_seeded(n, DEFAULT_PRIMALITY_SEED)
}

pub fn is_prime_seeded(n: &BigInt, seed: u64) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    if n.is_even() {
        return *n == two;
    }
    for &p in &[3u32, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let p = BigInt::from(p);
        if n == &p {
            return true;
        }
        if n.is_multiple_of(&p) {
            return false;
        }
    }
    let n_minus_1: BigInt = n - 1;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d: BigInt = &n_minus_1 >> s;

    for &a in &SMALL_WITNESSES {
        if !strong_probable_prime(n, &BigInt::from(a), &d, s, &n_minus_1) {
            return false;
        }
    }
    if n.bits() <= 64 {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hi: BigInt = n - 2;
    for _ in 0..RANDOM_ROUNDS {
        let a = rng.gen_bigint_range(&two, &hi);
        if !strong_probable_prime(n, &a, &d, s, &n_minus_1) {
            return false;
        }
    }
    true
}

fn strong_probable_prime(n: &BigInt, a: &BigInt, d: &BigInt, s: u64, n_minus_1: &BigInt) -> bool {
    let a = a.mod_floor(n);
    if a.is_zero() {
        return true;
    }
    let mut x = a.modpow(d, n);
    if x.is_one() || x == *n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = x.modpow(&BigInt::from(2), n);
        if x == *n_minus_1 {
            return true;
        }
    }
    false
}

/// Next prime strictly greater than n (desk-scale stepping).
pub fn next_prime(n: &BigInt) -> BigInt {
    let mut c: BigInt = n + 1;
    if c <= BigInt::from(2) {
        return BigInt::from(2);
    }
    if c.is_even() {
        c += 1;
    }
    while !is_prime(&c) {
        c += 2;
    }
    c
}

/// Small primes in [2, bound) by sieve; bound kept to desk scale.
pub fn primes_below(bound: u64) -> Vec<u64> {
    if bound < 3 {
        return if bound > 2 { vec![2] } else { vec![] };
    }
    let mut sieve = vec![true; bound as usize];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2usize;
    while i * i < bound as usize {
        if sieve[i] {
            let mut j = i * i;
            while j < bound as usize {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| if b { Some(i as u64) } else { None })
        .collect()
}

/// Sign-safe u64 extraction for validated small inputs.
pub fn to_u64(n: &BigInt) -> Option<u64> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let (_, digits) = n.to_u64_digits();
    match digits.len() {
        0 => Some(0),
        1 => Some(digits[0]),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agrees_with_trial_division_below_10000() {
        let primes = primes_below(10_000);
        let mut idx = 0;
        for n in 0u64..10_000 {
            let expect = idx < primes.len() && primes[idx] == n;
            if expect {
                idx += 1;
            }
            assert_eq!(is_prime(&BigInt::from(n)), expect, "n = {n}");
        }
    }

    #[test]
    fn known_large_values() {
        assert!(is_prime(&BigInt::from(41)));
        assert!(is_prime(&BigInt::from(2_147_483_647u64))); // 2^31 - 1
        assert!(!is_prime(&BigInt::from(3_215_031_751u64))); // strong pseudoprime to 2,3,5,7
        let m89: BigInt = (BigInt::one() << 89) - 1; // Mersenne prime
        assert!(is_prime(&m89));
        let m67: BigInt = (BigInt::one() << 67) - 1; // 193707721 * 761838257287
        assert!(!is_prime(&m67));
    }

    #[test]
    fn next_prime_steps() {
        assert_eq!(next_prime(&BigInt::from(0)), BigInt::from(2));
        assert_eq!(next_prime(&BigInt::from(2)), BigInt::from(3));
        assert_eq!(next_prime(&BigInt::from(30)), BigInt::from(31));
    }
}
