//! Group orders, l-divisibility, embedding degree and full embedding
//! degree (torsion-field degree), plus the Koblitz equality check.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{factor_mod, prime_field_order, FiniteFieldExt, ModPoly};
use crate::arith::{factor_with_budget, multiplicative_order_with_budget};
use crate::error::{Error, Result};
use crate::weil::WeilNumber;

/// |B(F_q)| = P(1)^(m_pi).
pub fn group_order(w: &WeilNumber) -> BigInt {
    let value = w.min_poly().eval(&BigInt::one());
    let order = value.pow(w.m_pi() as u32);
    debug_assert!(order.is_positive(), "group order must be positive");
    order
}

/// l | |B(F_q)|, together with the witness root 1 of P mod l when present.
pub fn divides_order(w: &WeilNumber, l: &BigInt) -> Result<(bool, Option<BigInt>)> {
    if w.q().is_multiple_of(l) {
        return Err(Error::Precondition("l must not divide q".into()));
    }
    let divides = group_order(w).is_multiple_of(l);
    // pi = 1 in some prime over l exactly when 1 is a root of P mod l.
    let witness = if w.min_poly().eval(&BigInt::one()).is_multiple_of(l) {
        Some(BigInt::one())
    } else {
        None
    };
    debug_assert_eq!(divides, witness.is_some());
    Ok((divides, witness))
}

/// Embedding degree: the multiplicative order of q mod l.
pub fn embedding_degree(w: &WeilNumber, l: &BigInt) -> Result<BigInt> {
    embedding_degree_with_budget(w, l, 1 << 25)
}

pub fn embedding_degree_with_budget(
    w: &WeilNumber,
    l: &BigInt,
    rho_budget: u64,
) -> Result<BigInt> {
    let (divides, _) = divides_order(w, l)?;
    if !divides {
        return Err(Error::Precondition(format!(
            "l = {l} does not divide the group order"
        )));
    }
    multiplicative_order_with_budget(&w.q(), l, rho_budget)
}

/// Full embedding degree [F_q(B[l]) : F_q] by two routes that must agree:
/// (a) lcm over irreducible factors h of P mod l of the order of the class
/// of X in F_l[x]/(h); (b) the companion matrix of P mod l is certified to
/// have exactly that order.
pub fn full_embedding_degree(w: &WeilNumber, l: &BigInt) -> Result<BigInt> {
    full_embedding_degree_with(w, l, 0, 1 << 25)
}

pub fn full_embedding_degree_with(
    w: &WeilNumber,
    l: &BigInt,
    seed: u64,
    rho_budget: u64,
) -> Result<BigInt> {
    if w.q().is_multiple_of(l) {
        return Err(Error::Precondition("l must not divide q".into()));
    }
    if w.min_poly().discriminant().is_multiple_of(l) {
        return Err(Error::RamifiedPrimeUnsupported);
    }

    // Route (a): orders of pi's residues at the primes over l.
    let mut degree = BigInt::one();
    for (h, mult) in factor_mod(w.min_poly(), l, seed) {
        debug_assert_eq!(mult, 1, "l does not divide the discriminant");
        let ord = if h.deg() == 1 {
            let root = (-h.coeff(0)).mod_floor(l);
            prime_field_order(&root, l, rho_budget)?
        } else {
            let field = FiniteFieldExt::new(l.clone(), h)?;
            field.element_order(&ModPoly::x(l), rho_budget)?
        };
        degree = degree.lcm(&ord);
    }

    // Route (b): companion-matrix order certification.
    let c = companion_matrix_mod(w.min_poly(), l);
    if !mat_is_identity(&mat_pow(&c, &degree, l), l) {
        return Err(Error::VerificationFailed(
            "companion matrix order does not divide the factor-order lcm".into(),
        ));
    }
    for (t, _) in factor_with_budget(&degree, rho_budget)?.factors() {
        let reduced: BigInt = &degree / t;
        if mat_is_identity(&mat_pow(&c, &reduced, l), l) {
            return Err(Error::VerificationFailed(
                "companion matrix order is a proper divisor of the factor-order lcm".into(),
            ));
        }
    }
    Ok(degree)
}

/// Koblitz's theorem instance check for elliptic Weil numbers: the full
/// embedding degree must equal the embedding degree. A false return is a
/// test failure, not an expected outcome.
pub fn koblitz_check(w: &WeilNumber, l: &BigInt) -> Result<bool> {
    if w.degree() != 2 || w.dim() != 1 {
        return Err(Error::Precondition(
            "koblitz_check requires an elliptic Weil number".into(),
        ));
    }
    let q = w.q();
    if q.is_multiple_of(l) {
        return Err(Error::Precondition("l must not divide q".into()));
    }
    let q_minus_1: BigInt = &q - 1;
    if q_minus_1.is_multiple_of(l) {
        return Err(Error::Precondition("l must not divide q - 1".into()));
    }
    if w.min_poly().discriminant().is_multiple_of(l) {
        return Err(Error::Precondition("l must not divide the discriminant".into()));
    }
    if !group_order(w).is_multiple_of(l) {
        return Err(Error::Precondition("l must divide the group order".into()));
    }
    let embed = embedding_degree(w, l)?;
    let full = full_embedding_degree(w, l)?;
    Ok(embed == full)
}

/// Companion matrix of a monic polynomial, reduced mod l; row-major.
pub fn companion_matrix_mod(p: &crate::algebra::IntPolynomial, l: &BigInt) -> Vec<Vec<BigInt>> {
    let n = p.deg();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for i in 1..n {
        m[i][i - 1] = BigInt::one();
    }
    for i in 0..n {
        m[i][n - 1] = (-p.coeff(i)).mod_floor(l);
    }
    m
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], l: &BigInt) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] = (&out[i][j] + &a[i][k] * &b[k][j]).mod_floor(l);
            }
        }
    }
    out
}

pub fn mat_pow(a: &[Vec<BigInt>], e: &BigInt, l: &BigInt) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut result = vec![vec![BigInt::zero(); n]; n];
    for (i, row) in result.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    let mut base = a.to_vec();
    let mut e = e.clone();
    while e.is_positive() {
        if e.is_odd() {
            result = mat_mul(&result, &base, l);
        }
        e >>= 1;
        if e.is_positive() {
            base = mat_mul(&base, &base, l);
        }
    }
    result
}

pub fn mat_is_identity(a: &[Vec<BigInt>], l: &BigInt) -> bool {
    let n = a.len();
    for i in 0..n {
        for j in 0..n {
            let want = if i == j { BigInt::one() } else { BigInt::zero() };
            if a[i][j].mod_floor(l) != want {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::IntPolynomial;
    use crate::weil::validate_weil;

    fn ip(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn w(c: &[i64], p: i64, k: u32) -> WeilNumber {
        validate_weil(&ip(c), &BigInt::from(p), k).unwrap()
    }

    #[test]
    fn group_orders() {
        assert_eq!(group_order(&w(&[5, -2, 1], 5, 1)), BigInt::from(4));
        assert_eq!(group_order(&w(&[81, 0, 0, 0, 1], 3, 2)), BigInt::from(82));
        // X - 3 over q=9 has m = 2: (1-3)^2 = 4.
        assert_eq!(group_order(&w(&[-3, 1], 3, 2)), BigInt::from(4));
    }

    #[test]
    fn divisibility_with_witness() {
        // X^2 - 3X + 7 over q=7: P(1) = 5; roots mod 5 are {1, 2}.
        let wn = w(&[7, -3, 1], 7, 1);
        let (div, witness) = divides_order(&wn, &BigInt::from(5)).unwrap();
        assert!(div);
        assert_eq!(witness, Some(BigInt::one()));
        let (div3, wit3) = divides_order(&w(&[5, -2, 1], 5, 1), &BigInt::from(3)).unwrap();
        assert!(!div3 && wit3.is_none());
    }

    #[test]
    fn embedding_degrees() {
        // q=9, l=41: 9^2 = -1 mod 41.
        let ss = w(&[81, 0, 0, 0, 1], 3, 2);
        assert_eq!(
            embedding_degree(&ss, &BigInt::from(41)).unwrap(),
            BigInt::from(4)
        );
        // q=7, l=5: 7 = 2 mod 5, order 4.
        let e = w(&[7, -3, 1], 7, 1);
        assert_eq!(
            embedding_degree(&e, &BigInt::from(5)).unwrap(),
            BigInt::from(4)
        );
    }

    #[test]
    fn full_embedding_degree_routes_agree() {
        let e = w(&[7, -3, 1], 7, 1);
        // Factors of X^2-3X+7 mod 5 are X-1 and X-2: orders 1 and 4.
        assert_eq!(
            full_embedding_degree(&e, &BigInt::from(5)).unwrap(),
            BigInt::from(4)
        );
    }

    #[test]
    fn ramified_l_rejected() {
        let e = w(&[5, -2, 1], 5, 1); // disc = -16
        assert_eq!(
            full_embedding_degree(&e, &BigInt::from(2)).unwrap_err(),
            Error::RamifiedPrimeUnsupported
        );
    }

    #[test]
    fn koblitz_holds_and_guards() {
        let e = w(&[7, -3, 1], 7, 1);
        assert!(koblitz_check(&e, &BigInt::from(5)).unwrap());
        // l = 2 divides q - 1 = 4 for the trace-2 curve over F_5.
        let e2 = w(&[5, -2, 1], 5, 1);
        assert!(matches!(
            koblitz_check(&e2, &BigInt::from(2)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn matrix_order_brute_force_oracle() {
        // Small-l instances: the companion matrix order computed by brute
        // force equals the reported full embedding degree.
        for (coeffs, p, k, l) in [
            (vec![7i64, -3, 1], 7i64, 1u32, 5i64),
            (vec![11, -4, 1], 11, 1, 2),
            (vec![13, -5, 1], 13, 1, 3),
        ] {
            let wn = w(&coeffs, p, k);
            let lb = BigInt::from(l);
            if wn.min_poly().discriminant().is_multiple_of(&lb) {
                continue;
            }
            let reported = full_embedding_degree(&wn, &lb).unwrap();
            let c = companion_matrix_mod(wn.min_poly(), &lb);
            let mut acc = c.clone();
            let mut d = 1u64;
            while !mat_is_identity(&acc, &lb) {
                acc = mat_mul(&acc, &c, &lb);
                d += 1;
                assert!(d < 10_000);
            }
            assert_eq!(BigInt::from(d), reported, "poly {coeffs:?} l={l}");
        }
    }
}
