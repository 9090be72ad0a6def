//! Number field elements in a monogenic presentation Q[x]/(F), with exact
//! arithmetic, minimal polynomials by linear algebra, and root-finding of
//! integer polynomials inside the field by Hensel lifting at a completely
//! split prime followed by rational reconstruction and exact verification.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::int_poly::IntPolynomial;
use super::mod_poly::roots_mod;
use crate::arith::next_prime;
use crate::error::{Error, Result};

/// An element num(theta)/den of Q[x]/(field_poly), stored with integral
/// numerator, positive denominator, and gcd(content(num), den) = 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NumberFieldElement {
    field_poly: IntPolynomial,
    num: IntPolynomial,
    den: BigInt,
}

impl NumberFieldElement {
    pub fn new(field_poly: IntPolynomial, num: IntPolynomial, den: BigInt) -> Self {
        assert!(field_poly.is_monic(), "field polynomial must be monic");
        assert!(!den.is_zero(), "denominator must be nonzero");
        let (_, mut num) = {
            let r = num.divmod_monic(&field_poly);
            (r.0, r.1)
        };
        let mut den = den;
        if den.is_negative() {
            den = -den;
            num = num.neg();
        }
        let g = num.content().gcd(&den);
        if g > BigInt::one() {
            num = IntPolynomial::new(num.coeffs().iter().map(|c| c / &g).collect());
            den /= &g;
        }
        NumberFieldElement {
            field_poly,
            num,
            den,
        }
    }

    pub fn zero(field_poly: &IntPolynomial) -> Self {
        NumberFieldElement::new(field_poly.clone(), IntPolynomial::zero(), BigInt::one())
    }

    pub fn one(field_poly: &IntPolynomial) -> Self {
        NumberFieldElement::new(field_poly.clone(), IntPolynomial::one(), BigInt::one())
    }

    /// The class of x, i.e. the distinguished generator.
    pub fn generator(field_poly: &IntPolynomial) -> Self {
        NumberFieldElement::new(field_poly.clone(), IntPolynomial::x(), BigInt::one())
    }

    pub fn from_integer(field_poly: &IntPolynomial, n: BigInt) -> Self {
        NumberFieldElement::new(field_poly.clone(), IntPolynomial::constant(n), BigInt::one())
    }

    pub fn field_poly(&self) -> &IntPolynomial {
        &self.field_poly
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn field_degree(&self) -> usize {
        self.field_poly.deg()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// Rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.is_zero() {
            return Some(BigRational::zero());
        }
        if self.num.deg() == 0 {
            return Some(BigRational::new(self.num.coeff(0), self.den.clone()));
        }
        None
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.field_poly, o.field_poly);
        let num = self
            .num
            .mul_scalar(&o.den)
            .add(&o.num.mul_scalar(&self.den));
        NumberFieldElement::new(self.field_poly.clone(), num, &self.den * &o.den)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        NumberFieldElement::new(self.field_poly.clone(), self.num.neg(), self.den.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.field_poly, o.field_poly);
        NumberFieldElement::new(
            self.field_poly.clone(),
            self.num.mul(&o.num),
            &self.den * &o.den,
        )
    }

    pub fn mul_rational(&self, q: &BigRational) -> Self {
        NumberFieldElement::new(
            self.field_poly.clone(),
            self.num.mul_scalar(q.numer()),
            &self.den * q.denom(),
        )
    }

    /// Multiplicative inverse by the extended Euclidean algorithm in Q[x].
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        let to_rat = |p: &IntPolynomial| -> Vec<BigRational> {
            (0..=p.deg())
                .map(|i| BigRational::from_integer(p.coeff(i)))
                .collect()
        };
        let mut r0 = to_rat(&self.field_poly);
        let mut r1 = to_rat(&self.num);
        let mut t0: Vec<BigRational> = vec![];
        let mut t1 = vec![BigRational::one()];
        while !rat_is_zero(&r1) {
            let (q, r) = rat_divmod(&r0, &r1);
            let t2 = rat_sub(&t0, &rat_mul(&q, &t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t2;
        }
        // r0 = gcd is a nonzero constant since field_poly is irreducible.
        if rat_deg(&r0) != Some(0) {
            return Err(Error::Domain(
                "element not invertible; field polynomial reducible?".into(),
            ));
        }
        let c = r0[0].clone();
        let inv_coeffs: Vec<BigRational> = t0.iter().map(|t| t / c.clone()).collect();
        // Scale by our denominator: (num/den)^-1 = den * num^-1.
        let mut lcm = BigInt::one();
        for q in &inv_coeffs {
            lcm = lcm.lcm(q.denom());
        }
        let num = IntPolynomial::new(
            inv_coeffs
                .iter()
                .map(|q| (q * BigRational::from_integer(lcm.clone())).to_integer())
                .collect(),
        )
        .mul_scalar(&self.den);
        Ok(NumberFieldElement::new(self.field_poly.clone(), num, lcm))
    }

    /// e^k by square-and-multiply, aborting when intermediate numerator
    /// coefficients exceed the given bit bound.
    pub fn pow(&self, k: u64, bit_bound: u64) -> Result<Self> {
        let mut result = NumberFieldElement::one(&self.field_poly);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
                result.check_size(bit_bound)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
                base.check_size(bit_bound)?;
            }
        }
        Ok(result)
    }

    fn check_size(&self, bit_bound: u64) -> Result<()> {
        if self.num.max_coeff_bits() > bit_bound || self.den.bits() > bit_bound {
            return Err(Error::ExpansionTooLarge(bit_bound));
        }
        Ok(())
    }

    /// Substitute this element into an integer polynomial (Horner).
    pub fn eval_int_poly(&self, p: &IntPolynomial) -> Self {
        let mut acc = NumberFieldElement::zero(&self.field_poly);
        for c in p.coeffs().iter().rev() {
            acc = acc
                .mul(self)
                .add(&NumberFieldElement::from_integer(&self.field_poly, c.clone()));
        }
        acc
    }

    /// Apply the automorphism that sends the generator to `self` to the
    /// element e = g(theta)/d, i.e. compute g(self)/d.
    pub fn apply_as_automorphism(&self, e: &NumberFieldElement) -> NumberFieldElement {
        debug_assert_eq!(self.field_poly, e.field_poly);
        let g_at = self.eval_int_poly(&e.num);
        NumberFieldElement::new(
            self.field_poly.clone(),
            g_at.num.clone(),
            &g_at.den * &e.den,
        )
    }

    /// Coordinates in the power basis as exact rationals.
    pub fn coordinates(&self) -> Vec<BigRational> {
        let n = self.field_poly.deg();
        (0..n)
            .map(|i| BigRational::new(self.num.coeff(i), self.den.clone()))
            .collect()
    }

    /// Monic minimal polynomial over Q by exact linear algebra on powers.
    /// Errors when the element is not an algebraic integer.
    pub fn minimal_polynomial(&self) -> Result<IntPolynomial> {
        let n = self.field_poly.deg();
        // Echelon rows: (vector, combination over original powers).
        let mut rows: Vec<(Vec<BigRational>, Vec<BigRational>)> = Vec::new();
        let mut power = NumberFieldElement::one(&self.field_poly);
        for k in 0..=n {
            let mut v = power.coordinates();
            let mut combo = vec![BigRational::zero(); k + 1];
            combo[k] = BigRational::one();
            for (rv, rc) in &rows {
                let pivot = rv.iter().position(|c| !c.is_zero()).unwrap();
                if !v[pivot].is_zero() {
                    let factor = v[pivot].clone() / rv[pivot].clone();
                    for i in 0..n {
                        let delta = factor.clone() * rv[i].clone();
                        v[i] -= delta;
                    }
                    for (i, c) in rc.iter().enumerate() {
                        let delta = factor.clone() * c.clone();
                        combo[i] -= delta;
                    }
                }
            }
            if v.iter().all(|c| c.is_zero()) {
                // combo gives sum combo_j e^j = 0 with combo_k = 1.
                let mut lcm = BigInt::one();
                for c in &combo {
                    lcm = lcm.lcm(c.denom());
                }
                if !lcm.is_one() {
                    return Err(Error::Domain(
                        "element is not an algebraic integer; minimal polynomial not integral"
                            .into(),
                    ));
                }
                return Ok(IntPolynomial::new(
                    combo.iter().map(|c| c.to_integer()).collect(),
                ));
            }
            rows.push((v, combo));
            power = power.mul(self);
        }
        unreachable!("an element of a degree-n field has degree at most n")
    }

    /// Field norm N(e) = prod of conjugate values, as an exact rational.
    pub fn norm(&self) -> BigRational {
        let n = self.field_poly.deg() as u32;
        if self.num.is_zero() {
            return BigRational::zero();
        }
        let res = self.field_poly.resultant(&self.num);
        BigRational::new(res, self.den.pow(n))
    }
}

fn rat_deg(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn rat_is_zero(p: &[BigRational]) -> bool {
    rat_deg(p).is_none()
}

fn rat_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect()
}

fn rat_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if rat_is_zero(a) || rat_is_zero(b) {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x.clone() * y.clone();
        }
    }
    out
}

fn rat_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = rat_deg(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut rem = a.to_vec();
    let da = match rat_deg(&rem) {
        Some(d) if d >= db => d,
        _ => return (vec![], rem),
    };
    let mut quo = vec![BigRational::zero(); da - db + 1];
    for i in (db..=da).rev() {
        let c = rem[i].clone() / lead.clone();
        if c.is_zero() {
            continue;
        }
        quo[i - db] = c.clone();
        for j in 0..=db {
            let delta = c.clone() * b[j].clone();
            rem[i - db + j] -= delta;
        }
    }
    while rem.last().map_or(false, |c| c.is_zero()) {
        rem.pop();
    }
    (quo, rem)
}

/// All roots of f inside Q[x]/(field_poly), found by lifting the roots at a
/// completely split prime and verifying candidates exactly.
///
/// field_poly must be monic irreducible. The search prime is chosen with a
/// completely split reduction, which exists for a positive density of
/// primes; the scan is capped at a desk-scale bound.
pub fn roots_in_field(
    f: &IntPolynomial,
    field_poly: &IntPolynomial,
    seed: u64,
) -> Result<Vec<NumberFieldElement>> {
    let n = field_poly.deg();
    assert!(field_poly.is_monic() && n >= 1);
    let f_sf = f.squarefree_part();
    if f_sf.deg() == 0 {
        return Ok(vec![]);
    }
    let disc_field = field_poly.discriminant();
    let disc_f = f_sf.discriminant();
    let lead_f = f_sf.leading();

    // Completely split prime not dividing the relevant discriminants.
    let mut p0 = BigInt::from(2);
    let mut found = None;
    for _ in 0..100_000 {
        p0 = next_prime(&p0);
        if (disc_field.clone() % &p0).is_zero()
            || (disc_f.clone() % &p0).is_zero()
            || (lead_f.clone() % &p0).is_zero()
        {
            continue;
        }
        let roots = roots_mod(field_poly, &p0, seed);
        if roots.len() == n {
            found = Some(roots);
            break;
        }
    }
    let theta_roots =
        found.ok_or_else(|| Error::SearchBudgetExhausted("no completely split prime found".into()))?;

    // Coefficient bound for true roots expressed in the power basis, from
    // coarse root bounds and the discriminant lower bound on |F'(theta)|.
    let root_bound = |p: &IntPolynomial| -> BigRational {
        let lead = BigRational::from_integer(p.leading()).abs();
        let mut m = BigRational::zero();
        for i in 0..p.deg() {
            let c = BigRational::from_integer(p.coeff(i)).abs() / lead.clone();
            if c > m {
                m = c;
            }
        }
        m + BigRational::one()
    };
    let r_l = root_bound(field_poly).max(BigRational::one());
    let r_f = root_bound(&f_sf).max(BigRational::one());
    let two = BigRational::from_integer(BigInt::from(2));
    let u = pow_rat(&(two.clone() * r_l.clone()), n.saturating_sub(1) as u32);
    let disc_abs = BigRational::from_integer(disc_field.abs());
    let c_bound = BigRational::from_integer(BigInt::from(n as u64))
        * r_f
        * pow_rat(&two, n.saturating_sub(1) as u32)
        * pow_rat(&r_l, n.saturating_sub(1) as u32)
        * pow_rat(&u, n.saturating_sub(1) as u32)
        / disc_abs;
    let den_bound = disc_field.abs();
    // Headroom of 2^20 keeps the balanced-lift filter's slack rigorous.
    let need = (c_bound * BigRational::from_integer(&den_bound << 20))
        .ceil()
        .to_integer();
    let mut modulus = p0.clone();
    while modulus <= need {
        modulus = &modulus * &modulus;
    }

    // Hensel-lift the split roots of the field polynomial and of f.
    let theta_lifts: Vec<BigInt> = theta_roots
        .iter()
        .map(|r| hensel_lift_root(field_poly, r, &p0, &modulus))
        .collect();
    let f_roots_p0 = roots_mod(&f_sf, &p0, seed);
    if f_roots_p0.is_empty() {
        return Ok(vec![]);
    }
    let f_lifts: Vec<BigInt> = f_roots_p0
        .iter()
        .map(|r| hensel_lift_root(&f_sf, r, &p0, &modulus))
        .collect();

    // Lagrange basis over Z/modulus for the lifted theta values.
    let mut lagrange: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut numer = vec![BigInt::one()]; // polynomial, constant first
        let mut denom = BigInt::one();
        for (j, t) in theta_lifts.iter().enumerate() {
            if j == i {
                continue;
            }
            numer = poly_mul_mod(&numer, &[(-t).mod_floor(&modulus), BigInt::one()], &modulus);
            denom = (denom * (&theta_lifts[i] - t)).mod_floor(&modulus);
        }
        let dinv = mod_inverse(&denom, &modulus)?;
        lagrange.push(
            numer
                .into_iter()
                .map(|c| (c * &dinv).mod_floor(&modulus))
                .collect(),
        );
    }

    // Enumerate value assignments; reconstruct and verify exactly.
    let s = f_lifts.len();
    let mut out: Vec<NumberFieldElement> = Vec::new();
    let mut assignment = vec![0usize; n];
    let half = &modulus / 2;
    loop {
        // Candidate coefficients sum_i w_i * Lagrange_i mod modulus.
        let mut coeffs = vec![BigInt::zero(); n];
        for (i, &a) in assignment.iter().enumerate() {
            let w = &f_lifts[a];
            for (k, lag) in lagrange[i].iter().enumerate() {
                coeffs[k] = (&coeffs[k] + w * lag).mod_floor(&modulus);
            }
        }
        // Balanced lift of den_bound * c_j must stay small for a true root.
        let mut ok = true;
        let mut scaled = Vec::with_capacity(n);
        for c in &coeffs {
            let v = (c * &den_bound).mod_floor(&modulus);
            let lifted = if v > half { v - &modulus } else { v };
            if lifted.bits() + 8 >= modulus.bits() {
                ok = false;
                break;
            }
            scaled.push(lifted);
        }
        if ok {
            let candidate = NumberFieldElement::new(
                field_poly.clone(),
                IntPolynomial::new(scaled),
                den_bound.clone(),
            );
            if candidate.eval_int_poly(&f_sf).is_zero() && !out.contains(&candidate) {
                out.push(candidate);
            }
        }
        // Advance the mixed-radix counter.
        let mut pos = 0;
        loop {
            if pos == n {
                break;
            }
            assignment[pos] += 1;
            if assignment[pos] < s {
                break;
            }
            assignment[pos] = 0;
            pos += 1;
        }
        if pos == n {
            break;
        }
    }
    out.sort_by(|a, b| {
        a.numerator()
            .coeffs()
            .cmp(b.numerator().coeffs())
            .then_with(|| a.denominator().cmp(b.denominator()))
    });
    Ok(out)
}

fn pow_rat(q: &BigRational, e: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= q.clone();
    }
    acc
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Result<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return Err(Error::Domain(format!("{a} not invertible mod {m}")));
    }
    Ok(e.x.mod_floor(m))
}

fn poly_mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (&out[i + j] + x * y).mod_floor(m);
        }
    }
    out
}

/// Newton-lift a simple root r of p mod p0 to the given p0-power modulus.
fn hensel_lift_root(p: &IntPolynomial, r: &BigInt, p0: &BigInt, modulus: &BigInt) -> BigInt {
    let deriv = p.derivative();
    let mut cur = r.clone();
    let mut m = p0.clone();
    while m < *modulus {
        m = (&m * &m).min(modulus.clone());
        let val = p.eval(&cur).mod_floor(&m);
        let dv = deriv.eval(&cur).mod_floor(&m);
        let inv = mod_inverse(&dv, &m).expect("simple root stays simple under lifting");
        cur = (&cur - val * inv).mod_floor(&m);
    }
    debug_assert!(p.eval(&cur).mod_floor(modulus).is_zero());
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    const SEED: u64 = 11;

    fn gaussian() -> IntPolynomial {
        IntPolynomial::from_i64(&[1, 0, 1])
    }

    #[test]
    fn gaussian_arithmetic() {
        let f = gaussian();
        let i = NumberFieldElement::generator(&f);
        // (1+2i)^2 = -3+4i
        let e = NumberFieldElement::new(f.clone(), IntPolynomial::from_i64(&[1, 2]), BigInt::one());
        let sq = e.pow(2, 1 << 16).unwrap();
        assert_eq!(
            sq,
            NumberFieldElement::new(f.clone(), IntPolynomial::from_i64(&[-3, 4]), BigInt::one())
        );
        // i^4 = 1
        assert_eq!(i.pow(4, 1 << 16).unwrap(), NumberFieldElement::one(&f));
        // pi^1 = pi
        assert_eq!(e.pow(1, 1 << 16).unwrap(), e);
        // inverse: (1+2i)(1+2i)^-1 = 1
        let inv = e.inverse().unwrap();
        assert_eq!(e.mul(&inv), NumberFieldElement::one(&f));
    }

    #[test]
    fn minimal_polynomials() {
        let f = gaussian();
        let i = NumberFieldElement::generator(&f);
        assert_eq!(i.minimal_polynomial().unwrap(), gaussian());
        // 5 + 10i has minimal polynomial X^2 - 10X + 125
        let e = NumberFieldElement::new(f.clone(), IntPolynomial::from_i64(&[5, 10]), BigInt::one());
        assert_eq!(
            e.minimal_polynomial().unwrap(),
            IntPolynomial::from_i64(&[125, -10, 1])
        );
        let three = NumberFieldElement::from_integer(&f, BigInt::from(3));
        assert_eq!(
            three.minimal_polynomial().unwrap(),
            IntPolynomial::from_i64(&[-3, 1])
        );
        // Minimal polynomial evaluated at the element is exactly zero.
        let m = e.minimal_polynomial().unwrap();
        assert!(e.eval_int_poly(&m).is_zero());
    }

    #[test]
    fn non_integral_minimal_poly_rejected() {
        let f = gaussian();
        let e = NumberFieldElement::new(f, IntPolynomial::from_i64(&[1]), BigInt::from(2));
        assert!(e.minimal_polynomial().is_err());
    }

    #[test]
    fn norm_matches_product_of_conjugates() {
        let f = gaussian();
        // norm(a+bi) = a^2+b^2
        let e = NumberFieldElement::new(f, IntPolynomial::from_i64(&[2, 1]), BigInt::one());
        assert_eq!(e.norm(), BigRational::from_integer(BigInt::from(5)));
    }

    #[test]
    fn expansion_guard_fires() {
        let f = IntPolynomial::from_i64(&[-2, 0, 0, 0, 1]); // x^4 - 2
        let big = NumberFieldElement::new(
            f,
            IntPolynomial::from_i64(&[1_000_000_007, 998_244_353, 7, 9]),
            BigInt::one(),
        );
        assert!(matches!(
            big.pow(1 << 20, 256),
            Err(Error::ExpansionTooLarge(_))
        ));
    }

    #[test]
    fn roots_in_gaussian_field() {
        let f = gaussian();
        // x^2+1 has both roots in Q(i): +/- i.
        let roots = roots_in_field(&gaussian(), &f, SEED).unwrap();
        assert_eq!(roots.len(), 2);
        let gen = NumberFieldElement::generator(&f);
        assert!(roots.contains(&gen) && roots.contains(&gen.neg()));
        // x^2 - 2 has no root in Q(i).
        let none = roots_in_field(&IntPolynomial::from_i64(&[-2, 0, 1]), &f, SEED).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn cyclotomic_field_is_galois() {
        // Phi_5: all four roots of the field polynomial lie in the field.
        let f = IntPolynomial::from_i64(&[1, 1, 1, 1, 1]);
        let roots = roots_in_field(&f, &f, SEED).unwrap();
        assert_eq!(roots.len(), 4);
        // They are exactly zeta^1..zeta^4.
        let zeta = NumberFieldElement::generator(&f);
        for k in 1..=4u64 {
            assert!(roots.contains(&zeta.pow(k, 1 << 16).unwrap()));
        }
    }

    #[test]
    fn non_galois_quartic_has_two_roots_in_itself() {
        // x^4 - 2 is not Galois: only +/- 2^(1/4) of its roots live in the field.
        let f = IntPolynomial::from_i64(&[-2, 0, 0, 0, 1]);
        let roots = roots_in_field(&f, &f, SEED).unwrap();
        assert_eq!(roots.len(), 2);
    }
}
