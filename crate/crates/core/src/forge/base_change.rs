//! Base-change separation of embedding and full embedding degree: find l
//! and a root labeling so that pi~ = pi^((l-1)/mn) has embedding degree n
//! while the l-torsion field has degree mn over the base.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::certificate::{int_string, BaseChangeCert, Certificate, SearchTrace, WeilDto};
use super::type_iv::{expand_power, mod_inverse};
use crate::algebra::roots_mod;
use crate::arith::{next_prime, order_dividing};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::pairing::{companion_matrix_mod, mat_is_identity, mat_pow};
use crate::weil::{is_absolutely_simple_by_slope, Simplicity, WeilNumber};

/// How the caller vouches for absolute simplicity of the base variety.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimplicityEvidence {
    /// The slope criterion must fire.
    Slope,
    /// The caller attests simplicity (the theorem's hypothesis).
    Attested,
}

/// Search primes l = 1 mod mn, with the base minimal polynomial split
/// completely mod l, for a labeling (r, q/r, r1) whose exponent powers
/// have orders (1, n, mn); certify embedding degree n and full embedding
/// degree mn over the symbolic extension.
pub fn construct_base_change(
    w: &WeilNumber,
    m: u64,
    n: u64,
    evidence: SimplicityEvidence,
    config: &RunConfig,
) -> Result<Certificate> {
    if w.degree() <= 2 {
        return Err(Error::Precondition(
            "base change separation needs [Q(pi):Q] > 2".into(),
        ));
    }
    if m < 1 || n < 1 {
        return Err(Error::Precondition("m and n must be positive".into()));
    }
    match evidence {
        SimplicityEvidence::Slope => {
            if is_absolutely_simple_by_slope(w) != Simplicity::Yes {
                return Err(Error::Precondition(
                    "slope criterion did not certify absolute simplicity; pass an attestation"
                        .into(),
                ));
            }
        }
        SimplicityEvidence::Attested => {}
    }

    let q = w.q();
    let disc = w.min_poly().discriminant();
    let mn = m.checked_mul(n).ok_or_else(|| Error::InvalidInput("mn overflow".into()))?;
    let mn_big = BigInt::from(mn);
    let deg = w.degree();

    let mut candidates_examined = 0u64;
    let mut l = BigInt::one();
    loop {
        l = next_prime(&l);
        if l > BigInt::from(config.l_max) {
            return Err(Error::NoQualifyingPrime(config.l_max));
        }
        let l_minus_1: BigInt = &l - 1;
        if !l_minus_1.is_multiple_of(&mn_big) {
            continue;
        }
        if q.is_multiple_of(&l) || disc.is_multiple_of(&l) {
            continue;
        }
        let roots = roots_mod(w.min_poly(), &l, config.seed);
        if roots.len() != deg {
            continue;
        }
        candidates_examined += 1;
        let exponent: BigInt = &l_minus_1 / &mn_big;

        // Root labelings in lexicographic order: r ascending, then r1.
        for r in &roots {
            let partner = (&q * mod_inverse(r, &l)?).mod_floor(&l);
            if !roots.contains(&partner) || &partner == r {
                continue;
            }
            let r_pow = r.modpow(&exponent, &l);
            if !r_pow.is_one() {
                continue;
            }
            let partner_ord = order_in_mu(&partner.modpow(&exponent, &l), &l, mn)?;
            if partner_ord != BigInt::from(n) {
                continue;
            }
            for r1 in &roots {
                if r1 == r || *r1 == partner {
                    continue;
                }
                let r1_ord = order_in_mu(&r1.modpow(&exponent, &l), &l, mn)?;
                if r1_ord != mn_big {
                    continue;
                }
                // Full embedding degree over q~: every root power lies in
                // mu_mn, r1 realizes mn, so the lcm is exactly mn; certify
                // through the companion matrix as the independent route.
                let c = companion_matrix_mod(w.min_poly(), &l);
                let c_e = mat_pow(&c, &exponent, &l);
                if !mat_is_identity(&mat_pow(&c_e, &mn_big, &l), &l) {
                    return Err(Error::VerificationFailed(
                        "companion matrix power is not mn-torsion".into(),
                    ));
                }
                for t in crate::arith::factor_with_budget(&mn_big, config.rho_iteration_budget)?
                    .primes()
                {
                    let reduced: BigInt = &mn_big / t;
                    if mat_is_identity(&mat_pow(&c_e, &reduced, &l), &l) {
                        return Err(Error::VerificationFailed(
                            "companion matrix order divides a proper divisor of mn".into(),
                        ));
                    }
                }
                // Embedding degree of the base change: ord(q^exponent).
                let q_ord = order_in_mu(&q.modpow(&exponent, &l), &l, mn)?;
                if q_ord != BigInt::from(n) {
                    continue;
                }

                let expanded = expand_power(w, &exponent, config);
                return Ok(Certificate::Basechange(BaseChangeCert {
                    base: WeilDto::from_weil(w),
                    m,
                    n,
                    l: int_string(&l),
                    exponent: int_string(&exponent),
                    simplicity: match evidence {
                        SimplicityEvidence::Slope => "slope".to_string(),
                        SimplicityEvidence::Attested => "attested".to_string(),
                    },
                    roots_mod_l: roots.iter().map(int_string).collect(),
                    designated_root: int_string(r),
                    conjugate_root: int_string(&partner),
                    independent_root: int_string(r1),
                    embedding_degree: n,
                    full_embedding_degree: mn,
                    expanded,
                    search_trace: SearchTrace {
                        candidates_examined,
                        seed: config.seed,
                    },
                    config: config.clone(),
                }));
            }
        }
    }
}

/// Order of an element of mu_mn inside F_l^*; 0 signals "not mn-torsion".
pub fn order_in_mu(x: &BigInt, l: &BigInt, mn: u64) -> Result<BigInt> {
    if !x.modpow(&BigInt::from(mn), l).is_one() {
        return Ok(BigInt::from(0));
    }
    order_dividing(x, l, &BigInt::from(mn), 1 << 22)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::IntPolynomial;
    use crate::weil::validate_weil;

    /// First ordinary quartic Weil number over F_3 in scan order.
    fn quartic_over_3() -> WeilNumber {
        let p = BigInt::from(3);
        for a in -3i64..=3 {
            for b in -6i64..=6 {
                let cand = IntPolynomial::from_i64(&[9, 3 * a, b, a, 1]);
                if let Ok(w) = validate_weil(&cand, &p, 1) {
                    if crate::weil::newton_polygon(&w).is_ordinary() && w.degree() == 4 {
                        return w;
                    }
                }
            }
        }
        panic!("no ordinary quartic over F_3 found");
    }

    #[test]
    fn separates_embedding_and_full_degree() {
        let w = quartic_over_3();
        let cfg = RunConfig::default();
        let cert =
            construct_base_change(&w, 2, 2, SimplicityEvidence::Attested, &cfg).unwrap();
        let Certificate::Basechange(c) = &cert else {
            panic!()
        };
        assert_eq!(c.embedding_degree, 2);
        assert_eq!(c.full_embedding_degree, 4);
        let l = super::super::certificate::int_from_string(&c.l).unwrap();
        assert!(l < BigInt::from(100_000u64));
        // l = 1 mod 4 and the exponent is (l-1)/4.
        let e = super::super::certificate::int_from_string(&c.exponent).unwrap();
        assert_eq!(e * 4, l - 1);
    }

    #[test]
    fn m1_collapses_the_separation() {
        let w = quartic_over_3();
        let cfg = RunConfig::default();
        let cert =
            construct_base_change(&w, 1, 2, SimplicityEvidence::Attested, &cfg).unwrap();
        let Certificate::Basechange(c) = &cert else {
            panic!()
        };
        assert_eq!(c.embedding_degree, 2);
        assert_eq!(c.full_embedding_degree, 2);
    }

    #[test]
    fn quadratic_base_rejected() {
        let w = validate_weil(&IntPolynomial::from_i64(&[5, -2, 1]), &BigInt::from(5), 1).unwrap();
        let cfg = RunConfig::default();
        assert!(matches!(
            construct_base_change(&w, 2, 2, SimplicityEvidence::Attested, &cfg),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn slope_evidence_rejected_for_ordinary() {
        let w = quartic_over_3();
        let cfg = RunConfig::default();
        assert!(matches!(
            construct_base_change(&w, 2, 2, SimplicityEvidence::Slope, &cfg),
            Err(Error::Precondition(_))
        ));
    }
}
