//! Type IV(1,d) families: pi~ = pi^(d-1) pi-bar from an ordinary elliptic
//! Weil integer, and base changes of those with prescribed embedding
//! degree.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::certificate::{
    embedding_dto, honda_dto, int_string, Certificate, SearchTrace, TypeIvCert,
    TypeIvEmbedCert, WeilDto,
};
use crate::algebra::{roots_mod, IntPolynomial, NumberFieldElement};
use crate::arith::{next_prime, to_u64};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::pairing::group_order;
use crate::weil::{honda_tate, newton_polygon, validate_weil, Classification};

/// Exact pi^(d-1) * conj(pi) in Q[x]/(X^2 - aX + p), as a field element.
pub fn type_iv_frobenius(p: &BigInt, a: &BigInt, d: u32) -> (IntPolynomial, NumberFieldElement) {
    let elliptic = IntPolynomial::new(vec![p.clone(), -a.clone(), BigInt::one()]);
    let pi = NumberFieldElement::generator(&elliptic);
    let conj = NumberFieldElement::new(
        elliptic.clone(),
        IntPolynomial::new(vec![a.clone(), -BigInt::one()]),
        BigInt::one(),
    );
    let tilde = pi
        .pow((d - 1) as u64, 1 << 24)
        .expect("desk-scale exponent")
        .mul(&conj);
    (elliptic, tilde)
}

/// Construct an abelian variety of type IV(1,d) over F_(p^d) from the
/// ordinary elliptic Weil integer with trace a over F_p.
pub fn construct_typeiv(p: &BigInt, a: &BigInt, d: u32, config: &RunConfig) -> Result<Certificate> {
    if d < 3 {
        return Err(Error::Precondition("d must be at least 3".into()));
    }
    if (a * a) >= (p * 4) {
        return Err(Error::Precondition("need a^2 < 4p".into()));
    }
    if a.gcd(p) != BigInt::one() {
        return Err(Error::Precondition(
            "need gcd(a, p) = 1 (ordinary elliptic trace)".into(),
        ));
    }
    let (elliptic, tilde) = type_iv_frobenius(p, a, d);
    // Sanity: the base really is an ordinary elliptic Weil integer.
    let base = validate_weil(&elliptic, p, 1)?;
    debug_assert_eq!(base.dim(), 1);

    let min_poly = tilde.minimal_polynomial()?;
    if min_poly.deg() != 2 {
        return Err(Error::VerificationFailed(
            "pi^(d-1) pi-bar collapsed to a rational number".into(),
        ));
    }
    let w = validate_weil(&min_poly, p, d)?;
    let report = honda_tate(&w)?;
    if report.classification != Classification::TypeIv(d) {
        return Err(Error::VerificationFailed(format!(
            "expected TypeIV(1,{d}), got {}",
            report.classification.label()
        )));
    }
    debug_assert_eq!(report.dim, d as u64);
    // Newton polygon must be d x (1/d), d x ((d-1)/d); invariants match.
    let polygon = newton_polygon(&w);
    let lo = BigRational::new(BigInt::one(), BigInt::from(d));
    let hi = BigRational::one() - lo.clone();
    if polygon.multiplicity_of(&lo) != d as u64 || polygon.multiplicity_of(&hi) != d as u64 {
        return Err(Error::VerificationFailed(
            "Newton polygon is not d x (1/d), d x ((d-1)/d)".into(),
        ));
    }

    Ok(Certificate::Typeiv(TypeIvCert {
        p: int_string(p),
        trace_a: int_string(a),
        d,
        elliptic_min_poly: elliptic.to_decimal_strings(),
        weil: WeilDto::from_weil(&w),
        honda_tate: honda_dto(&report, &polygon),
        group_order: int_string(&group_order(&w)),
        search_trace: SearchTrace {
            candidates_examined: 1,
            seed: config.seed,
        },
        config: config.clone(),
    }))
}

/// Scan primes l = 1 mod N with the quadratic Type IV minimal polynomial
/// split mod l, accepting the first root labeling with
/// ord(r^((l-1)/N)) = 1 and ord((q/r)^((l-1)/N)) = N; emit
/// pi_0 = pi^((l-1)/N) symbolically, expanded when the bit bound allows.
pub fn construct_typeiv_embedding(
    cert: &TypeIvCert,
    n: u64,
    config: &RunConfig,
) -> Result<Certificate> {
    if n < 1 {
        return Err(Error::Precondition("N must be at least 1".into()));
    }
    let base = cert.weil.to_weil()?;
    let q = base.q();
    let disc = base.min_poly().discriminant();
    let mut candidates_examined = 0u64;

    let mut l = BigInt::one();
    loop {
        l = next_prime(&l);
        if l > BigInt::from(config.l_max) {
            return Err(Error::NoQualifyingPrime(config.l_max));
        }
        let l_minus_1: BigInt = &l - 1;
        if !l_minus_1.is_multiple_of(&BigInt::from(n)) {
            continue;
        }
        if q.is_multiple_of(&l) || disc.is_multiple_of(&l) {
            continue;
        }
        let roots = roots_mod(base.min_poly(), &l, config.seed);
        if roots.len() != 2 {
            continue;
        }
        candidates_examined += 1;
        let exponent: BigInt = &l_minus_1 / BigInt::from(n);
        for r in &roots {
            let partner = (&q * mod_inverse(r, &l)?).mod_floor(&l);
            if !roots.contains(&partner) || &partner == r {
                continue;
            }
            let r_pow = r.modpow(&exponent, &l);
            let partner_pow = partner.modpow(&exponent, &l);
            if !r_pow.is_one() {
                continue;
            }
            let ord = element_order_mod(&partner_pow, &l, n)?;
            if ord != BigInt::from(n) {
                continue;
            }
            // Accepted: pi_0 = pi^exponent over q_0 = q^exponent.
            let expanded = expand_power(&base, &exponent, config);
            let expanded_embedding = match &expanded {
                Some(dto) => {
                    let w0 = dto.to_weil()?;
                    embedding_dto(&w0, &l, config.seed, should_full(&w0, &l)).ok()
                }
                None => None,
            };
            return Ok(Certificate::TypeivEmbed(TypeIvEmbedCert {
                base: cert.weil.clone(),
                target_embedding_degree: n,
                l: int_string(&l),
                exponent: int_string(&exponent),
                designated_root: int_string(r),
                conjugate_root: int_string(&partner),
                expanded,
                expanded_embedding,
                search_trace: SearchTrace {
                    candidates_examined,
                    seed: config.seed,
                },
                config: config.clone(),
            }));
        }
    }
}

fn should_full(w: &crate::weil::WeilNumber, l: &BigInt) -> bool {
    use num_integer::Integer;
    !w.min_poly().discriminant().is_multiple_of(l)
}

/// Expand pi^e to an explicit Weil number when coefficients stay within
/// the configured bit bound.
pub fn expand_power(
    base: &crate::weil::WeilNumber,
    exponent: &BigInt,
    config: &RunConfig,
) -> Option<WeilDto> {
    let e = to_u64(exponent)?;
    // Cheap size estimate before computing: coefficients reach about
    // e * k * log2(p) bits.
    let est = e
        .checked_mul(base.k() as u64)?
        .checked_mul(base.p().bits())?;
    if est > config.expansion_bit_bound {
        return None;
    }
    let power = base.generator().pow(e, config.expansion_bit_bound).ok()?;
    let min_poly = power.minimal_polynomial().ok()?;
    let k = base.k().checked_mul(u32::try_from(e).ok()?)?;
    let w = validate_weil(&min_poly, base.p(), k).ok()?;
    Some(WeilDto::from_weil(&w))
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Result<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return Err(Error::Domain(format!("{a} not invertible mod {m}")));
    }
    Ok(e.x.mod_floor(m))
}

/// Exact order of x mod l given that x^n = 1.
fn element_order_mod(x: &BigInt, l: &BigInt, n: u64) -> Result<BigInt> {
    if !x.modpow(&BigInt::from(n), l).is_one() {
        // Not an n-th root of unity; report a non-divisor order.
        return Ok(BigInt::zero());
    }
    crate::arith::order_dividing(x, l, &BigInt::from(n), 1 << 22)
}
