//! Weil-number validation, Newton polygons, Honda-Tate reports,
//! classification, twist detection and supersingular structure.

mod honda;
mod newton;

pub use honda::{
    absolutely_simple_by_slope, classify, local_data, match_cyclotomic_scaling,
    simplicity_verdict, Classification, LocalData, Simplicity,
};
pub use newton::{valuation, NewtonPolygon};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::{certified_roots, is_irreducible_over_q, IntPolynomial, NumberFieldElement};
use crate::arith::{euler_phi_u64, is_prime};
use crate::error::{Error, Result};

/// A validated Weil q-integer: monic irreducible minimal polynomial whose
/// roots all have squared modulus q = p^k, together with the computed
/// division-algebra index m_pi.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilNumber {
    min_poly: IntPolynomial,
    p: BigInt,
    k: u32,
    m_pi: u32,
}

impl WeilNumber {
    pub fn min_poly(&self) -> &IntPolynomial {
        &self.min_poly
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> BigInt {
        self.p.pow(self.k)
    }

    pub fn m_pi(&self) -> u32 {
        self.m_pi
    }

    pub fn degree(&self) -> usize {
        self.min_poly.deg()
    }

    /// dim B = [Q(pi):Q] * m_pi / 2.
    pub fn dim(&self) -> u64 {
        (self.degree() as u64 * self.m_pi as u64) / 2
    }

    /// The generator pi as a number field element of Q[x]/(min_poly).
    pub fn generator(&self) -> NumberFieldElement {
        NumberFieldElement::generator(&self.min_poly)
    }

    /// Characteristic polynomial of Frobenius: min_poly^(m_pi).
    pub fn char_poly(&self) -> IntPolynomial {
        let mut acc = IntPolynomial::one();
        for _ in 0..self.m_pi {
            acc = acc.mul(&self.min_poly);
        }
        acc
    }
}

const VALIDATE_PRECISION: u32 = 128;

/// Validate P as the minimal polynomial of a Weil q-integer for q = p^k.
pub fn validate_weil(p_poly: &IntPolynomial, p: &BigInt, k: u32) -> Result<WeilNumber> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    let n = p_poly
        .degree()
        .ok_or_else(|| Error::InvalidInput("zero polynomial".into()))?;
    if n == 0 || !p_poly.is_monic() {
        return Err(Error::InvalidInput(
            "minimal polynomial must be monic of positive degree".into(),
        ));
    }
    if !is_irreducible_over_q(p_poly)? {
        return Err(Error::NotIrreducible);
    }
    let q = p.pow(k);

    check_functional_equation(p_poly, &q, k)?;
    check_root_moduli(p_poly, &q)?;

    let data = local_data(p_poly, p, k)?;
    Ok(WeilNumber {
        min_poly: p_poly.clone(),
        p: p.clone(),
        k,
        m_pi: data.m_pi,
    })
}

/// Exact q-symmetry: a_j = a_(2g-j) q^(g-j) for even degree; the real
/// families X -+ sqrt(q) and X^2 - q are the only odd-degree or
/// asymmetric survivors.
fn check_functional_equation(p_poly: &IntPolynomial, q: &BigInt, k: u32) -> Result<()> {
    let n = p_poly.deg();
    if n % 2 == 1 {
        if n == 1 && k % 2 == 0 {
            let s = p_poly.coeff(0).abs();
            if &s * &s == *q {
                return Ok(());
            }
        }
        return Err(Error::FailsQSymmetry);
    }
    // X^2 - q is Weil despite failing the symmetric identity.
    if n == 2 && p_poly.coeff(1).is_zero() && p_poly.coeff(0) == -q.clone() {
        return Ok(());
    }
    let g = n / 2;
    for j in 0..g {
        let expected = p_poly.coeff(n - j) * q.pow((g - j) as u32);
        if p_poly.coeff(j) != expected {
            return Err(Error::FailsQSymmetry);
        }
    }
    Ok(())
}

/// Certified check that every root lies on |z| = sqrt(q), via the real
/// element beta = pi + q/pi: all conjugates of beta must be real in
/// [-2 sqrt(q), 2 sqrt(q)].
fn check_root_moduli(p_poly: &IntPolynomial, q: &BigInt) -> Result<()> {
    let n = p_poly.deg();
    if n == 1 {
        return Ok(()); // functional equation already pinned pi = +/- sqrt(q)
    }
    let gen = NumberFieldElement::generator(p_poly);
    let inv = gen
        .inverse()
        .map_err(|_| Error::RootOffCircle)?;
    let beta = gen.add(&inv.mul_rational(&BigRational::from_integer(q.clone())));
    let mut h = beta.minimal_polynomial().map_err(|_| Error::RootOffCircle)?;

    // Deflate exact boundary roots +/- 2 sqrt(q).
    let four_q: BigInt = q * 4;
    if let Some(s2) = exact_sqrt(&four_q) {
        for root in [s2.clone(), -s2] {
            let lin = IntPolynomial::new(vec![-root, BigInt::one()]);
            while let Some(qt) = h.exact_div(&lin) {
                h = qt;
            }
        }
    } else {
        let quad = IntPolynomial::new(vec![-four_q.clone(), BigInt::zero(), BigInt::one()]);
        while let Some(qt) = h.exact_div(&quad) {
            h = qt;
        }
    }
    if h.deg() == 0 {
        return Ok(());
    }

    let bound = BigRational::from_integer(four_q);
    let mut precision = VALIDATE_PRECISION;
    for _ in 0..16 {
        let set = certified_roots(&h, precision)?;
        let mut undecided = false;
        for (i, ball) in set.balls().iter().enumerate() {
            if set.conjugate_of(i) != i {
                return Err(Error::RootOffCircle);
            }
            let lo = ball.mid.re.abs() - &ball.rad;
            let hi = ball.mid.re.abs() + &ball.rad;
            if &hi * &hi < bound {
                continue; // certainly inside
            }
            if &lo * &lo > bound {
                return Err(Error::RootOffCircle);
            }
            undecided = true;
        }
        if !undecided {
            return Ok(());
        }
        precision *= 2;
    }
    Err(Error::PrecisionExhausted(16))
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Char-poly Newton polygon: min-poly hull slopes, multiplicities scaled
/// by m_pi; symmetric with integral breakpoints for every valid input.
pub fn newton_polygon(w: &WeilNumber) -> NewtonPolygon {
    NewtonPolygon::of_min_poly(&w.min_poly, &w.p, w.k).scale_multiplicities(w.m_pi as u64)
}

/// Full Honda-Tate report.
#[derive(Clone, Debug)]
pub struct HondaTateReport {
    pub dim: u64,
    pub center_degree: usize,
    pub index: u32,
    pub hasse_invariants: Vec<(String, BigRational)>,
    pub invariants_exact: bool,
    pub classification: Classification,
    pub absolutely_simple: Simplicity,
}

pub fn honda_tate(w: &WeilNumber) -> Result<HondaTateReport> {
    let data = local_data(&w.min_poly, &w.p, w.k)?;
    debug_assert_eq!(data.m_pi, w.m_pi);
    let polygon = newton_polygon(w);
    let dim = w.dim();
    let classification = classify(&polygon, w.degree(), data.m_pi);
    Ok(HondaTateReport {
        dim,
        center_degree: w.degree(),
        index: data.m_pi,
        hasse_invariants: data.invariants,
        invariants_exact: data.place_detail,
        classification,
        absolutely_simple: simplicity_verdict(&polygon, dim),
    })
}

/// Sufficient slope criterion for absolute simplicity on the variety.
pub fn is_absolutely_simple_by_slope(w: &WeilNumber) -> Simplicity {
    let polygon = newton_polygon(w);
    absolutely_simple_by_slope(&polygon, w.dim())
}

/// All Newton slopes equal 1/2.
pub fn supersingular_test(w: &WeilNumber) -> bool {
    newton_polygon(w).is_supersingular()
}

/// Root-of-unity cross-check: pi/sqrt(q) is a root of unity, i.e. the
/// minimal polynomial matches a scaled cyclotomic (square q) or some power
/// pi^M is rational (any q), with phi(M) <= 2 deg.
pub fn supersingular_root_of_unity_check(w: &WeilNumber) -> bool {
    let deg = w.degree() as u64;
    if w.k % 2 == 0 {
        let s = w.p.pow(w.k / 2);
        return match_cyclotomic_scaling(&w.min_poly, &s).is_some();
    }
    rational_power_order(w, 2 * deg).is_some()
}

/// Smallest M with phi(M) <= bound and pi^M rational, together with the
/// rational value.
fn rational_power_order(w: &WeilNumber, phi_bound: u64) -> Option<(u64, BigInt)> {
    let gen = w.generator();
    let m_max = 4 * phi_bound * phi_bound + 4;
    for m in 1..=m_max {
        if euler_phi_u64(m) > phi_bound {
            continue;
        }
        if let Ok(pw) = gen.pow(m, 1 << 22) {
            if let Some(r) = pw.as_rational() {
                if r.is_integer() {
                    return Some((m, r.to_integer()));
                }
            }
        }
    }
    None
}

/// Verify dim B lies in {phi(N), phi(N)/2} for a detected root-of-unity
/// order N of pi/sqrt(q); the real families over non-square q carry the
/// extra real-place index and land at 2 phi(N) instead.
pub fn supersingular_dimension_check(w: &WeilNumber) -> Result<(bool, u64)> {
    if !supersingular_test(w) {
        return Err(Error::Precondition(
            "supersingular_dimension_check requires a supersingular input".into(),
        ));
    }
    let dim = w.dim();
    let mut candidates: Vec<u64> = Vec::new();
    if w.k % 2 == 0 {
        let s = w.p.pow(w.k / 2);
        if let Some(n) = match_cyclotomic_scaling(&w.min_poly, &s) {
            candidates.push(n);
        }
    } else if let Some((m, _)) = rational_power_order(w, 2 * w.degree() as u64) {
        candidates.push(m);
        candidates.push(2 * m);
    }
    let real_family = w.degree() <= 2 && {
        // X - s or X^2 - q
        w.degree() == 1 || (w.min_poly.coeff(1).is_zero() && w.min_poly.coeff(0).is_negative())
    };
    for &n in &candidates {
        let phi = euler_phi_u64(n);
        if dim == phi || 2 * dim == phi || (real_family && dim == 2 * phi) {
            return Ok((true, n));
        }
    }
    Ok((false, candidates.first().copied().unwrap_or(0)))
}

/// Outcome of the twist scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistResult {
    /// Least N with pi_1^N conjugate to pi_2^N.
    TwistAt(u64),
    /// No witness with phi(N) at most the stated bound.
    NotTwistsWithinBound(u64),
}

/// Decide whether two Weil numbers over the same q are twists: scan orders
/// M with phi(M) <= 2 deg1 deg2 and compare minimal polynomials of the
/// M-th powers.
pub fn twist_test(w1: &WeilNumber, w2: &WeilNumber) -> Result<TwistResult> {
    if w1.p != w2.p || w1.k != w2.k {
        return Err(Error::Precondition("twist_test requires equal q".into()));
    }
    let phi_bound = 2 * (w1.degree() as u64) * (w2.degree() as u64);
    let m_max = 4 * phi_bound * phi_bound + 4;
    let g1 = w1.generator();
    let g2 = w2.generator();
    for m in 1..=m_max {
        if euler_phi_u64(m) > phi_bound {
            continue;
        }
        let p1 = g1.pow(m, 1 << 22)?.minimal_polynomial()?;
        let p2 = g2.pow(m, 1 << 22)?.minimal_polynomial()?;
        if p1 == p2 {
            return Ok(TwistResult::TwistAt(m));
        }
    }
    Ok(TwistResult::NotTwistsWithinBound(phi_bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn validates_ordinary_elliptic() {
        let w = validate_weil(&ip(&[5, -2, 1]), &BigInt::from(5), 1).unwrap();
        assert_eq!(w.m_pi(), 1);
        assert_eq!(w.dim(), 1);
        let report = honda_tate(&w).unwrap();
        assert_eq!(report.classification, Classification::Ordinary);
    }

    #[test]
    fn validates_type_iv_cube() {
        let w = validate_weil(&ip(&[125, -10, 1]), &BigInt::from(5), 3).unwrap();
        assert_eq!(w.m_pi(), 3);
        assert_eq!(w.dim(), 3);
        let report = honda_tate(&w).unwrap();
        assert_eq!(report.classification, Classification::TypeIv(3));
        let invs: Vec<BigRational> = report
            .hasse_invariants
            .iter()
            .map(|(_, v)| v.clone())
            .collect();
        assert!(invs.contains(&rat(1, 3)) && invs.contains(&rat(2, 3)));
        let np = newton_polygon(&w);
        assert_eq!(np.slopes(), &[(rat(1, 3), 3), (rat(2, 3), 3)]);
    }

    #[test]
    fn trace_three_elliptic_is_valid() {
        // Roots (3 +/- i sqrt(11))/2 have squared modulus 5: a genuine
        // ordinary Weil 5-integer.
        let w = validate_weil(&ip(&[5, -3, 1]), &BigInt::from(5), 1).unwrap();
        assert_eq!(w.dim(), 1);
    }

    #[test]
    fn real_quadratic_off_circle_rejected() {
        // X^2 - 8X + 5 passes q-symmetry (constant term 5) but its real
        // roots 4 +/- sqrt(11) are off the circle.
        let err = validate_weil(&ip(&[5, -8, 1]), &BigInt::from(5), 1).unwrap_err();
        assert_eq!(err, Error::RootOffCircle);
    }

    #[test]
    fn symmetry_failures_rejected() {
        assert_eq!(
            validate_weil(&ip(&[7, -3, 1]), &BigInt::from(5), 1).unwrap_err(),
            Error::FailsQSymmetry
        );
        assert_eq!(
            validate_weil(&ip(&[-9, 0, 1]), &BigInt::from(3), 2).unwrap_err(),
            Error::NotIrreducible
        );
    }

    #[test]
    fn real_families_validate() {
        // X - 3 over q = 9: m = 2, dim 1, group-order relevant case.
        let w = validate_weil(&ip(&[-3, 1]), &BigInt::from(3), 2).unwrap();
        assert_eq!(w.m_pi(), 2);
        assert_eq!(w.dim(), 1);
        assert!(supersingular_test(&w));
        // X^2 - 5 over q = 5: supersingular surface.
        let w2 = validate_weil(&ip(&[-5, 0, 1]), &BigInt::from(5), 1).unwrap();
        assert_eq!(w2.m_pi(), 2);
        assert_eq!(w2.dim(), 2);
        assert!(supersingular_test(&w2));
    }

    #[test]
    fn supersingular_structure() {
        let w = validate_weil(&ip(&[9, 0, 1]), &BigInt::from(3), 2).unwrap();
        assert!(supersingular_test(&w));
        assert!(supersingular_root_of_unity_check(&w));
        assert_eq!(w.dim(), 1);
        let (ok, n) = supersingular_dimension_check(&w).unwrap();
        assert!(ok);
        assert_eq!(n, 4); // pi = 3 zeta_4

        let w4 = validate_weil(&ip(&[81, 0, 0, 0, 1]), &BigInt::from(3), 2).unwrap();
        assert_eq!(w4.dim(), 2);
        let (ok4, n4) = supersingular_dimension_check(&w4).unwrap();
        assert!(ok4);
        assert_eq!(n4, 8);
        assert_eq!(euler_phi_u64(n4) / 2, w4.dim());

        let wr = validate_weil(&ip(&[-3, 1]), &BigInt::from(3), 2).unwrap();
        let (okr, _) = supersingular_dimension_check(&wr).unwrap();
        assert!(okr);

        // Real family over non-square q: dim 2 = 2 phi(N).
        let ws = validate_weil(&ip(&[-5, 0, 1]), &BigInt::from(5), 1).unwrap();
        let (oks, _) = supersingular_dimension_check(&ws).unwrap();
        assert!(oks);

        let word = validate_weil(&ip(&[5, -2, 1]), &BigInt::from(5), 1).unwrap();
        assert!(!supersingular_test(&word));
        assert!(supersingular_dimension_check(&word).is_err());
    }

    #[test]
    fn twist_examples() {
        // 3i and -3 over q=9 are twists at N=4: (3i)^4 = 81 = (-3)^4.
        let w1 = validate_weil(&ip(&[9, 0, 1]), &BigInt::from(3), 2).unwrap();
        let w2 = validate_weil(&ip(&[3, 1]), &BigInt::from(3), 2).unwrap();
        assert_eq!(twist_test(&w1, &w2).unwrap(), TwistResult::TwistAt(4));
        assert_eq!(twist_test(&w1, &w1).unwrap(), TwistResult::TwistAt(1));

        // Ordinary base-changed to q=25 vs supersingular at q=25: slopes
        // differ, no power can agree.
        let word = validate_weil(&ip(&[25, -6, 1]), &BigInt::from(5), 2).unwrap();
        let wss = validate_weil(&ip(&[25, 0, 1]), &BigInt::from(5), 2).unwrap();
        match twist_test(&word, &wss).unwrap() {
            TwistResult::NotTwistsWithinBound(b) => assert_eq!(b, 8),
            other => panic!("expected no twist, got {other:?}"),
        }
    }

    #[test]
    fn absolute_simplicity_by_slopes() {
        let w = validate_weil(&ip(&[125, -10, 1]), &BigInt::from(5), 3).unwrap();
        assert_eq!(is_absolutely_simple_by_slope(&w), Simplicity::Yes);
        let e = validate_weil(&ip(&[5, -2, 1]), &BigInt::from(5), 1).unwrap();
        assert_eq!(is_absolutely_simple_by_slope(&e), Simplicity::Unknown);
        let ss = validate_weil(&ip(&[81, 0, 0, 0, 1]), &BigInt::from(3), 2).unwrap();
        assert_eq!(is_absolutely_simple_by_slope(&ss), Simplicity::Unknown);
        assert_eq!(honda_tate(&ss).unwrap().absolutely_simple, Simplicity::No);
    }

    #[test]
    fn ordinary_quartic_over_q3() {
        // Search the first q-symmetric ordinary quartic over q=3 and check
        // the report; this is the base-change acceptance ingredient.
        let p = BigInt::from(3);
        let mut found = None;
        'outer: for a in -3i64..=3 {
            for b in -6i64..=6 {
                let cand = ip(&[9, 3 * a, b, a, 1]);
                if let Ok(w) = validate_weil(&cand, &p, 1) {
                    let rep = honda_tate(&w).unwrap();
                    if rep.classification == Classification::Ordinary && w.degree() == 4 {
                        found = Some(w);
                        break 'outer;
                    }
                }
            }
        }
        let w = found.expect("an ordinary quartic Weil number over F_3 exists");
        assert_eq!(w.dim(), 2);
        assert_eq!(w.m_pi(), 1);
    }
}
