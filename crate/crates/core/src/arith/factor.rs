//! Integer factorization at desk scale: trial division then Brent's cycle
//! method, with an explicit iteration budget instead of open-ended effort.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::primality::is_prime;
use crate::error::{Error, Result};

/// A verified prime factorization of a nonnegative integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    value: BigInt,
    factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    /// Assemble and check the invariants: primes strictly increasing, each
    /// passing the primality test, recomposing to the value.
    pub fn new(value: BigInt, factors: Vec<(BigInt, u32)>) -> Result<Self> {
        for window in factors.windows(2) {
            if window[0].0 >= window[1].0 {
                return Err(Error::InvalidInput(
                    "factor list not strictly increasing".into(),
                ));
            }
        }
        for (p, e) in &factors {
            if *e == 0 || !is_prime(p) {
                return Err(Error::InvalidInput(format!("bad factor entry {p}^{e}")));
            }
        }
        let f = Factorization { value, factors };
        if f.recompose() != f.value {
            return Err(Error::InvalidInput("factorization does not recompose".into()));
        }
        Ok(f)
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn factors(&self) -> &[(BigInt, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn recompose(&self) -> BigInt {
        let mut acc = BigInt::one();
        for (p, e) in &self.factors {
            acc *= p.pow(*e);
        }
        acc
    }

    /// Euler phi of the factored value.
    pub fn euler_phi(&self) -> BigInt {
        let mut acc = BigInt::one();
        for (p, e) in &self.factors {
            acc *= p.pow(e - 1) * (p - 1);
        }
        acc
    }

    /// True when the factored value is p^k for a single prime p.
    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }
}

const TRIAL_BOUND: u64 = 100_000;

/// Factor n >= 1. Fails with a budget error when a composite cofactor
/// resists the rho budget (second-largest prime factor too large).
pub fn factor(n: &BigInt) -> Result<Factorization> {
    factor_with_budget(n, 1 << 25)
}

pub fn factor_with_budget(n: &BigInt, rho_budget: u64) -> Result<Factorization> {
    if n < &BigInt::one() {
        return Err(Error::Domain(format!("factor requires n >= 1, got {n}")));
    }
    let mut remaining = n.clone();
    let mut found: Vec<BigInt> = Vec::new();

    let mut d = BigInt::from(2);
    while &d * &d <= remaining && d < BigInt::from(TRIAL_BOUND) {
        while remaining.is_multiple_of(&d) {
            remaining = &remaining / &d;
            found.push(d.clone());
        }
        d += if d == BigInt::from(2) { 1 } else { 2 };
    }

    let mut stack = vec![remaining];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            found.push(m);
            continue;
        }
        let divisor = brent_rho(&m, rho_budget)
            .ok_or_else(|| Error::FactorBudgetExceeded(m.to_string()))?;
        stack.push(&m / &divisor);
        stack.push(divisor);
    }

    found.sort();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    for p in found {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Factorization::new(n.clone(), factors)
}

/// Brent's variant of Pollard rho with deterministic parameters.
fn brent_rho(n: &BigInt, budget: u64) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    for c in 1u64..=20 {
        let c = BigInt::from(c);
        let mut y = BigInt::from(2);
        let mut r: u64 = 1;
        let mut q = BigInt::one();
        let mut g = BigInt::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut spent: u64 = 0;
        while g.is_one() && spent < budget {
            x = y.clone();
            for _ in 0..r {
                y = (&y * &y + &c).mod_floor(n);
            }
            let mut k: u64 = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let m = 128.min(r - k);
                for _ in 0..m {
                    y = (&y * &y + &c).mod_floor(n);
                    let diff = (&x - &y).abs();
                    q = (&q * &diff).mod_floor(n);
                }
                g = q.gcd(n);
                k += m;
                spent += m;
            }
            r *= 2;
        }
        if g == *n {
            // Backtrack one step at a time.
            loop {
                ys = (&ys * &ys + &c).mod_floor(n);
                let diff = (&x - &ys).abs();
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && g != *n {
            return Some(g);
        }
        if spent >= budget {
            return None;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let f = factor(&BigInt::from(82)).unwrap();
        assert_eq!(
            f.factors(),
            &[(BigInt::from(2), 1), (BigInt::from(41), 1)]
        );
        let f1 = factor(&BigInt::from(1)).unwrap();
        assert!(f1.factors().is_empty());
        assert_eq!(f1.recompose(), BigInt::one());
    }

    #[test]
    fn recomposes_over_a_range() {
        for n in 1u64..2_000 {
            let f = factor(&BigInt::from(n)).unwrap();
            assert_eq!(f.recompose(), BigInt::from(n), "n = {n}");
        }
    }

    #[test]
    fn splits_a_semiprime_beyond_trial_division() {
        // 1_000_003 * 1_000_033 are both prime and above the trial bound.
        let n = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64);
        let f = factor(&n).unwrap();
        assert_eq!(f.factors().len(), 2);
        assert_eq!(f.recompose(), n);
    }

    #[test]
    fn budget_error_on_hard_semiprime() {
        // Two 80-bit primes; rho with a tiny budget must give up.
        let p: BigInt = "1208925819614629174706189".parse().unwrap();
        let q: BigInt = "1208925819614629174706111".parse().unwrap();
        assert!(is_prime(&p) && is_prime(&q));
        let err = factor_with_budget(&(p * q), 64).unwrap_err();
        assert!(matches!(err, Error::FactorBudgetExceeded(_)));
    }

    #[test]
    fn euler_phi_matches_direct_count() {
        for n in [12u64, 41, 100, 720] {
            let f = factor(&BigInt::from(n)).unwrap();
            let direct = (1..=n).filter(|k| n.gcd(k) == 1).count();
            assert_eq!(f.euler_phi(), BigInt::from(direct));
        }
    }
}
