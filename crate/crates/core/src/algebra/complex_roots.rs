//! Certified complex root isolation.
//!
//! Roots are first approximated by Durand-Kerner iteration in hardware
//! floats, then polished by Newton steps in exact rational arithmetic.
//! Each approximation m gets the rigorous inclusion radius
//! n * |P(m)/P'(m)| (the nearest root of a degree-n polynomial lies within
//! that distance), so pairwise-disjoint disks certify exactly one root per
//! disk. Precision doubles until disjointness and conjugation pairing hold.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::int_poly::IntPolynomial;
use crate::error::{Error, Result};

/// Exact complex rational.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComplexRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl ComplexRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        ComplexRat { re, im }
    }

    pub fn zero() -> Self {
        ComplexRat::new(BigRational::zero(), BigRational::zero())
    }

    pub fn from_int(n: &BigInt) -> Self {
        ComplexRat::new(BigRational::from_integer(n.clone()), BigRational::zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexRat::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Self) -> Self {
        ComplexRat::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &Self) -> Self {
        ComplexRat::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn conj(&self) -> Self {
        ComplexRat::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm2(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn div(&self, o: &Self) -> Self {
        let d = o.norm2();
        assert!(!d.is_zero(), "complex division by zero");
        let num = self.mul(&o.conj());
        ComplexRat::new(num.re / d.clone(), num.im / d)
    }

    /// Round both parts to denominator 2^prec; the result moves by at most
    /// 2^-prec in each coordinate.
    pub fn round_dyadic(&self, prec: u32) -> Self {
        ComplexRat::new(round_dyadic(&self.re, prec), round_dyadic(&self.im, prec))
    }

    pub fn to_f64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

/// Nearest rational with denominator 2^prec.
pub fn round_dyadic(q: &BigRational, prec: u32) -> BigRational {
    let scale = BigInt::one() << prec;
    let scaled = q * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.round().to_integer(), scale)
}

/// Rational upper bound on sqrt(q) for q >= 0:
/// sqrt(a/b) = sqrt(ab)/b <= (isqrt(ab) + 1)/b.
pub fn sqrt_upper(q: &BigRational) -> BigRational {
    assert!(!q.is_negative());
    if q.is_zero() {
        return BigRational::zero();
    }
    let prod = q.numer() * q.denom();
    BigRational::new(prod.sqrt() + 1, q.denom().clone())
}

/// Closed disk in the complex plane with exact rational center and radius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBall {
    pub mid: ComplexRat,
    pub rad: BigRational,
}

impl ComplexBall {
    pub fn new(mid: ComplexRat, rad: BigRational) -> Self {
        debug_assert!(!rad.is_negative());
        ComplexBall { mid, rad }
    }

    pub fn exact(mid: ComplexRat) -> Self {
        ComplexBall::new(mid, BigRational::zero())
    }

    pub fn conj(&self) -> Self {
        ComplexBall::new(self.mid.conj(), self.rad.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexBall::new(self.mid.add(&o.mid), &self.rad + &o.rad)
    }

    pub fn sub(&self, o: &Self) -> Self {
        ComplexBall::new(self.mid.sub(&o.mid), &self.rad + &o.rad)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let m1 = sqrt_upper(&self.mid.norm2());
        let m2 = sqrt_upper(&o.mid.norm2());
        let rad = m1 * &o.rad + m2 * &self.rad + &self.rad * &o.rad;
        ComplexBall::new(self.mid.mul(&o.mid), rad)
    }

    pub fn mul_scalar(&self, s: &BigRational) -> Self {
        ComplexBall::new(
            ComplexRat::new(&self.mid.re * s, &self.mid.im * s),
            &self.rad * s.abs(),
        )
    }

    /// True when the two closed disks cannot intersect.
    pub fn disjoint_from(&self, o: &Self) -> bool {
        let d2 = self.mid.sub(&o.mid).norm2();
        let r = &self.rad + &o.rad;
        d2 > &r * &r
    }

    /// True when the disks certainly overlap is impossible to assert from
    /// midpoint distance alone; here: the disks touch or intersect.
    pub fn meets(&self, o: &Self) -> bool {
        !self.disjoint_from(o)
    }

    /// Ball evaluation of an integer polynomial by Horner's rule.
    pub fn eval_int_poly(&self, p: &IntPolynomial) -> ComplexBall {
        let mut acc = ComplexBall::exact(ComplexRat::zero());
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&ComplexBall::exact(ComplexRat::from_int(c)));
        }
        acc
    }

    /// True when 0 cannot lie in the ball.
    pub fn excludes_zero(&self) -> bool {
        self.mid.norm2() > &self.rad * &self.rad
    }
}

/// Certified, pairwise-disjoint root disks of a squarefree polynomial with
/// the complex-conjugation involution on indices.
#[derive(Clone, Debug)]
pub struct ComplexEmbeddingSet {
    field_poly: IntPolynomial,
    balls: Vec<ComplexBall>,
    pairing: Vec<usize>,
    precision_bits: u32,
}

impl ComplexEmbeddingSet {
    pub fn field_poly(&self) -> &IntPolynomial {
        &self.field_poly
    }

    pub fn balls(&self) -> &[ComplexBall] {
        &self.balls
    }

    pub fn degree(&self) -> usize {
        self.balls.len()
    }

    /// Index of the complex conjugate of root i.
    pub fn conjugate_of(&self, i: usize) -> usize {
        self.pairing[i]
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    /// Indices whose disk meets the real axis (self-paired roots).
    pub fn real_root_indices(&self) -> Vec<usize> {
        (0..self.balls.len())
            .filter(|&i| self.pairing[i] == i)
            .collect()
    }

    pub fn is_totally_imaginary(&self) -> bool {
        self.real_root_indices().is_empty()
    }

    /// Re-isolate at a higher precision target, preserving the index
    /// order of this set so stored indices stay valid.
    pub fn refined(&self, precision_bits: u32) -> Result<Self> {
        let target = precision_bits.max(self.precision_bits.saturating_mul(2));
        let new = certified_roots(&self.field_poly, target)?;
        // Each refined disk contains its root, which lies in exactly one
        // of our (pairwise disjoint) disks; remap to that position.
        let mut position = vec![usize::MAX; new.balls.len()];
        for (old_i, old_b) in self.balls.iter().enumerate() {
            let mut hits = new
                .balls
                .iter()
                .enumerate()
                .filter(|(_, nb)| !nb.disjoint_from(old_b))
                .map(|(j, _)| j);
            let j = hits
                .next()
                .ok_or(Error::PrecisionExhausted(MAX_DOUBLINGS))?;
            if hits.next().is_some() {
                return Err(Error::PrecisionExhausted(MAX_DOUBLINGS));
            }
            position[old_i] = j;
        }
        let balls: Vec<ComplexBall> = position.iter().map(|&j| new.balls[j].clone()).collect();
        let mut inverse = vec![usize::MAX; position.len()];
        for (old_i, &j) in position.iter().enumerate() {
            inverse[j] = old_i;
        }
        let pairing: Vec<usize> = position
            .iter()
            .map(|&j| inverse[new.pairing[j]])
            .collect();
        debug_assert_eq!(pairing, self.pairing);
        Ok(ComplexEmbeddingSet {
            field_poly: self.field_poly.clone(),
            balls,
            pairing,
            precision_bits: target,
        })
    }
}

const MAX_DOUBLINGS: u32 = 8;

/// Isolate all complex roots of a squarefree integer polynomial.
pub fn certified_roots(p: &IntPolynomial, precision_bits: u32) -> Result<ComplexEmbeddingSet> {
    let n = p.degree().ok_or_else(|| {
        Error::Domain("cannot isolate roots of the zero polynomial".into())
    })?;
    if !p.is_squarefree() {
        return Err(Error::Domain("polynomial is not squarefree".into()));
    }
    if n == 0 {
        return Ok(ComplexEmbeddingSet {
            field_poly: p.clone(),
            balls: vec![],
            pairing: vec![],
            precision_bits,
        });
    }

    let deriv = p.derivative();
    let seeds = durand_kerner(p);
    let mut mids: Vec<ComplexRat> = seeds
        .iter()
        .map(|z| {
            ComplexRat::new(
                BigRational::from_float(z.re).unwrap_or_else(BigRational::zero),
                BigRational::from_float(z.im).unwrap_or_else(BigRational::zero),
            )
        })
        .collect();

    let mut target = precision_bits.max(16);
    for doubling in 0..=MAX_DOUBLINGS {
        let work_prec = 2 * target + 32;
        // Newton-polish each midpoint at the working precision.
        for m in mids.iter_mut() {
            for _ in 0..64 {
                let pv = eval_at(p, m);
                let dv = eval_at(&deriv, m);
                if dv.norm2().is_zero() {
                    break;
                }
                let step = pv.div(&dv);
                let next = m.sub(&step).round_dyadic(work_prec);
                let moved = next.sub(m).norm2();
                *m = next;
                if radius_bound_sq_small(&moved, target) {
                    break;
                }
            }
        }
        let balls: Vec<ComplexBall> = mids
            .iter()
            .map(|m| {
                let pv = eval_at(p, m);
                let dv = eval_at(&deriv, m);
                let rad = if dv.norm2().is_zero() {
                    BigRational::one()
                } else {
                    sqrt_upper(&(pv.norm2() / dv.norm2())) * BigRational::from_integer(n.into())
                };
                ComplexBall::new(m.clone(), rad)
            })
            .collect();

        let tol = BigRational::new(BigInt::one(), BigInt::one() << target);
        let tight = balls.iter().all(|b| b.rad <= tol);
        let disjoint = tight && pairwise_disjoint(&balls);
        if disjoint {
            if let Some(pairing) = conjugation_pairing(&balls) {
                let (balls, pairing) = sort_canonically(balls, pairing);
                return Ok(ComplexEmbeddingSet {
                    field_poly: p.clone(),
                    balls,
                    pairing,
                    precision_bits,
                });
            }
        }
        if doubling == MAX_DOUBLINGS {
            break;
        }
        target *= 2;
    }
    Err(Error::PrecisionExhausted(MAX_DOUBLINGS))
}

fn radius_bound_sq_small(moved_sq: &BigRational, target: u32) -> bool {
    let tol = BigRational::new(BigInt::one(), BigInt::one() << (2 * target));
    moved_sq < &tol
}

fn eval_at(p: &IntPolynomial, z: &ComplexRat) -> ComplexRat {
    let mut acc = ComplexRat::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(z).add(&ComplexRat::from_int(c));
    }
    acc
}

fn pairwise_disjoint(balls: &[ComplexBall]) -> bool {
    for i in 0..balls.len() {
        for j in i + 1..balls.len() {
            if !balls[i].disjoint_from(&balls[j]) {
                return false;
            }
        }
    }
    true
}

/// Unique conjugation involution, or None when any assignment is ambiguous.
fn conjugation_pairing(balls: &[ComplexBall]) -> Option<Vec<usize>> {
    let n = balls.len();
    let mut pairing = vec![usize::MAX; n];
    for i in 0..n {
        let target = balls[i].conj();
        let mut candidates = (0..n).filter(|&j| target.meets(&balls[j]));
        let j = candidates.next()?;
        if candidates.next().is_some() {
            return None;
        }
        pairing[i] = j;
    }
    // Must be an involution.
    for i in 0..n {
        if pairing[pairing[i]] != i {
            return None;
        }
    }
    Some(pairing)
}

/// Sort disks by (re, im) midpoint and remap the pairing accordingly.
fn sort_canonically(
    balls: Vec<ComplexBall>,
    pairing: Vec<usize>,
) -> (Vec<ComplexBall>, Vec<usize>) {
    let n = balls.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        balls[a]
            .mid
            .re
            .cmp(&balls[b].mid.re)
            .then_with(|| balls[a].mid.im.cmp(&balls[b].mid.im))
    });
    let mut inverse = vec![0usize; n];
    for (new_idx, &old_idx) in order.iter().enumerate() {
        inverse[old_idx] = new_idx;
    }
    let sorted_balls: Vec<ComplexBall> = order.iter().map(|&i| balls[i].clone()).collect();
    let sorted_pairing: Vec<usize> = order.iter().map(|&i| inverse[pairing[i]]).collect();
    (sorted_balls, sorted_pairing)
}

/// Float Durand-Kerner sweep for initial approximations. Coefficients are
/// scaled by a power of two so magnitudes stay in f64 range.
fn durand_kerner(p: &IntPolynomial) -> Vec<Complex64> {
    let n = p.deg();
    let lead = BigRational::from_integer(p.leading());
    // Cauchy-style scaling exponent: roots of the scaled polynomial are O(1).
    let mut t: i64 = 0;
    for i in 0..n {
        let c = BigRational::from_integer(p.coeff(i)) / lead.clone();
        if c.is_zero() {
            continue;
        }
        let bits = c.numer().bits() as i64 - c.denom().bits() as i64;
        let need = (bits + (n - i) as i64 - 1) / (n - i) as i64;
        t = t.max(need);
    }
    let t = t.max(0) as u32;
    // q_i = a_i / (a_n * 2^(t*(n-i))) gives the polynomial with roots y = x / 2^t.
    let coeffs: Vec<Complex64> = (0..=n)
        .map(|i| {
            let c = BigRational::from_integer(p.coeff(i))
                / (lead.clone() * BigRational::from_integer(BigInt::one() << (t * (n - i) as u32)));
            Complex64::new(c.to_f64().unwrap_or(0.0), 0.0)
        })
        .collect();

    let mut roots: Vec<Complex64> = (0..n)
        .map(|k| Complex64::new(0.4, 0.9).powu(k as u32 + 1))
        .collect();
    for _ in 0..600 {
        let mut max_step = 0.0f64;
        for k in 0..n {
            let mut denom = Complex64::new(coeffs[n].re, coeffs[n].im);
            for j in 0..n {
                if j != k {
                    denom *= roots[k] - roots[j];
                }
            }
            if denom.norm() < 1e-300 {
                roots[k] += Complex64::new(1e-3, 2e-3);
                continue;
            }
            let val = horner(&coeffs, roots[k]);
            let step = val / denom;
            roots[k] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-13 {
            break;
        }
    }
    let scale = (2.0f64).powi(t as i32);
    roots.iter().map(|z| z * scale).collect()
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
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
    fn isolates_plus_minus_i() {
        let set = certified_roots(&ip(&[1, 0, 1]), 64).unwrap();
        assert_eq!(set.degree(), 2);
        assert_eq!(set.pairing(), &[1, 0]);
        assert!(set.is_totally_imaginary());
        // Sorted by (re, im): -i first.
        assert!(set.balls()[0].mid.im < BigRational::zero());
        assert!(set.balls()[1].mid.im > BigRational::zero());
        for b in set.balls() {
            assert!((b.mid.norm2() - BigRational::one()).abs() < rat(1, 1 << 30));
        }
    }

    #[test]
    fn quadratic_formula_oracle() {
        // X^2 - 2X + 5 has roots 1 +/- 2i.
        let set = certified_roots(&ip(&[5, -2, 1]), 128).unwrap();
        let tol = rat(1, 1i64 << 62);
        for b in set.balls() {
            assert!((b.mid.re.clone() - rat(1, 1)).abs() < tol);
            assert!((b.mid.im.abs() - rat(2, 1)).abs() < tol);
            assert!(b.rad < rat(1, 1i64 << 62), "radius not below 2^-prec/2");
        }
    }

    #[test]
    fn eighth_roots_of_unity() {
        // X^4 + 1: primitive 8th roots of unity, e^(i pi (2k+1)/4).
        let set = certified_roots(&ip(&[1, 0, 0, 0, 1]), 96).unwrap();
        assert_eq!(set.degree(), 4);
        let half = rat(1, 2);
        for b in set.balls() {
            assert!((b.mid.re.clone() * b.mid.re.clone() - half.clone()).abs() < rat(1, 1 << 30));
            assert!((b.mid.im.clone() * b.mid.im.clone() - half.clone()).abs() < rat(1, 1 << 30));
        }
        // Pairing is an involution without fixed points.
        for i in 0..4 {
            let j = set.conjugate_of(i);
            assert_ne!(i, j);
            assert_eq!(set.conjugate_of(j), i);
        }
    }

    #[test]
    fn sum_of_roots_matches_trace() {
        // Sum of roots = -a_(n-1)/a_n within the certified radii.
        for coeffs in [vec![5i64, -2, 1], vec![1, 0, 0, 0, 1], vec![-7, 3, -4, 1]] {
            let p = ip(&coeffs);
            let set = certified_roots(&p, 80).unwrap();
            let mut sum = ComplexRat::zero();
            let mut err = BigRational::zero();
            for b in set.balls() {
                sum = sum.add(&b.mid);
                err += &b.rad;
            }
            let n = p.deg();
            let expect = -BigRational::from_integer(p.coeff(n - 1))
                / BigRational::from_integer(p.leading());
            assert!((sum.re - expect).abs() <= err);
            assert!(sum.im.abs() <= err);
        }
    }

    #[test]
    fn real_roots_self_pair() {
        // (X^2 - 2)(X^2 + 1) = X^4 - X^2 - 2
        let p = ip(&[-2, 0, -1, 0, 1]);
        let set = certified_roots(&p, 64).unwrap();
        assert_eq!(set.real_root_indices().len(), 2);
    }

    #[test]
    fn rejects_non_squarefree() {
        let p = ip(&[1, 2, 1]);
        assert!(matches!(certified_roots(&p, 64), Err(Error::Domain(_))));
    }

    #[test]
    fn large_coefficients_survive_scaling() {
        // X^2 - 10^30 X + 1: one huge root, one tiny.
        let big: BigInt = BigInt::from(10).pow(30);
        let p = IntPolynomial::new(vec![BigInt::one(), -big, BigInt::one()]);
        let set = certified_roots(&p, 64).unwrap();
        assert_eq!(set.degree(), 2);
        assert_eq!(set.real_root_indices().len(), 2);
    }
}
