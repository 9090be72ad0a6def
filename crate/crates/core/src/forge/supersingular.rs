//! Supersingular construction: pi = sqrt(q) zeta_2N over q = s^2, with
//! P(1) = Phi_2N(s) supplying the certificate prime.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::certificate::{
    embedding_dto, honda_dto, int_string, Certificate, SearchTrace, SupersingularCert, WeilDto,
};
use crate::arith::{cyclotomic_poly, euler_phi_u64, factor_with_budget, is_prime};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::weil::{honda_tate, newton_polygon, validate_weil};

/// Build the scaled cyclotomic Weil polynomial s^phi(2N) Phi_2N(X/s), find
/// the least prime l | Phi_2N(s) with l coprime to 2N, and certify the
/// embedding degree N over q = s^2.
pub fn construct_supersingular(s: u64, n: u64, config: &RunConfig) -> Result<Certificate> {
    if s < 2 {
        return Err(Error::Precondition("s must be at least 2".into()));
    }
    if n < 1 {
        return Err(Error::Precondition("N must be at least 1".into()));
    }
    if s == 2 && n == 3 {
        // The proposition excludes (q, N) = (4, 3): Phi_6(2) = 3 divides 2N.
        return Err(Error::Precondition(
            "(q, N) = (4, 3) is excluded; no qualifying prime exists".into(),
        ));
    }
    let s_big = BigInt::from(s);
    // s must be a prime power so that q = s^2 is one.
    let s_factors = factor_with_budget(&s_big, config.rho_iteration_budget)?;
    if !s_factors.is_prime_power() {
        return Err(Error::Precondition(format!("s = {s} is not a prime power")));
    }
    let (p, j) = {
        let (prime, e) = &s_factors.factors()[0];
        (prime.clone(), *e)
    };
    let k = 2 * j; // q = s^2 = p^(2j)

    let two_n = 2 * n;
    let min_poly = cyclotomic_poly(two_n).scale_roots(&s_big);
    debug_assert_eq!(min_poly.deg() as u64, euler_phi_u64(two_n));
    let w = validate_weil(&min_poly, &p, k)?;

    // P(1) = Phi_2N(s) exactly; the group order is its m_pi-th power.
    let phi_at_s = cyclotomic_poly(two_n).eval(&s_big);
    let at_one = min_poly.eval(&BigInt::one());
    if at_one != phi_at_s {
        return Err(Error::VerificationFailed(format!(
            "P(1) = {at_one} differs from Phi_2N(s) = {phi_at_s}"
        )));
    }

    // Least prime divisor of Phi_2N(s) coprime to 2N; if every prime
    // divisor divides 2N (the N = 1, s + 1 = 2^j family), fall back to the
    // least divisor whose q-order is exactly N, verified directly.
    let factors = factor_with_budget(&phi_at_s, config.rho_iteration_budget)?;
    let two_n_big = BigInt::from(two_n);
    let q = p.pow(k);
    let mut primary: Vec<BigInt> = factors
        .primes()
        .filter(|l| !two_n_big.is_multiple_of(l))
        .cloned()
        .collect();
    primary.sort();
    let examined = factors.factors().len() as u64;
    let l = match primary.into_iter().next() {
        Some(l) => l,
        None => {
            let mut fallback: Vec<BigInt> = factors
                .primes()
                .filter(|l| {
                    !q.is_multiple_of(l)
                        && multiplicative_order_ok(&q, l, n, config.rho_iteration_budget)
                })
                .cloned()
                .collect();
            fallback.sort();
            fallback
                .into_iter()
                .next()
                .ok_or_else(|| Error::NoQualifyingPrime(config.l_max))?
        }
    };
    debug_assert!(is_prime(&l));

    let embedding = embedding_dto(&w, &l, config.seed, true)?;
    if embedding.embedding_degree != n.to_string() {
        return Err(Error::VerificationFailed(format!(
            "embedding degree {} differs from the target {n}",
            embedding.embedding_degree
        )));
    }

    let report = honda_tate(&w)?;
    let polygon = newton_polygon(&w);
    // dim lies in {phi(2N), phi(2N)/2}.
    let phi2n = euler_phi_u64(two_n);
    if !(report.dim == phi2n || 2 * report.dim == phi2n) {
        return Err(Error::VerificationFailed(format!(
            "dimension {} outside {{phi(2N), phi(2N)/2}}",
            report.dim
        )));
    }

    Ok(Certificate::Supersingular(SupersingularCert {
        s: s.to_string(),
        target_embedding_degree: n,
        weil: WeilDto::from_weil(&w),
        min_poly_at_one: int_string(&phi_at_s),
        honda_tate: honda_dto(&report, &polygon),
        embedding,
        search_trace: SearchTrace {
            candidates_examined: examined,
            seed: config.seed,
        },
        config: config.clone(),
    }))
}

fn multiplicative_order_ok(q: &BigInt, l: &BigInt, n: u64, budget: u64) -> bool {
    crate::arith::multiplicative_order_with_budget(q, l, budget)
        .map(|ord| ord == BigInt::from(n))
        .unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::IntPolynomial;

    #[test]
    fn reproduces_x4_plus_81() {
        let cfg = RunConfig::default();
        let cert = construct_supersingular(3, 4, &cfg).unwrap();
        let Certificate::Supersingular(c) = cert else {
            panic!()
        };
        assert_eq!(
            c.weil.min_poly,
            IntPolynomial::from_i64(&[81, 0, 0, 0, 1]).to_decimal_strings()
        );
        assert_eq!(c.min_poly_at_one, "82");
        assert_eq!(c.embedding.l, "41");
        assert_eq!(c.embedding.embedding_degree, "4");
        assert_eq!(c.embedding.group_order, "82");
        assert_eq!(c.honda_tate.dim, 2);
        assert_eq!(c.honda_tate.classification, "Supersingular");
    }

    #[test]
    fn smallest_case_s2_n1() {
        let cfg = RunConfig::default();
        let cert = construct_supersingular(2, 1, &cfg).unwrap();
        let Certificate::Supersingular(c) = cert else {
            panic!()
        };
        // P = 2 Phi_2(X/2) = X + 2, l | Phi_2(2) = 3, embedding degree 1.
        assert_eq!(c.weil.min_poly, vec!["2", "1"]);
        assert_eq!(c.embedding.l, "3");
        assert_eq!(c.embedding.embedding_degree, "1");
        // m = 2 for the real linear case: group order (1+2)^2 = 9.
        assert_eq!(c.weil.m_pi, 2);
        assert_eq!(c.embedding.group_order, "9");
    }

    #[test]
    fn fallback_when_all_divisors_divide_2n() {
        // Phi_2(3) = 4: the only prime divisor 2 divides 2N, but l = 2
        // still gives embedding degree 1 over q = 9.
        let cfg = RunConfig::default();
        let cert = construct_supersingular(3, 1, &cfg).unwrap();
        let Certificate::Supersingular(c) = cert else {
            panic!()
        };
        assert_eq!(c.embedding.l, "2");
        assert_eq!(c.embedding.embedding_degree, "1");
        assert_eq!(c.embedding.group_order, "16");
    }

    #[test]
    fn excluded_pair_rejected() {
        let cfg = RunConfig::default();
        assert!(matches!(
            construct_supersingular(2, 3, &cfg),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn non_prime_power_rejected() {
        let cfg = RunConfig::default();
        assert!(matches!(
            construct_supersingular(6, 2, &cfg),
            Err(Error::Precondition(_))
        ));
    }
}
