//! Polynomial arithmetic and factorization over prime fields F_l.
//!
//! Factorization runs squarefree decomposition, then distinct-degree, then
//! Cantor-Zassenhaus equal-degree splitting. The random step draws from a
//! caller-supplied seed so factorizations are reproducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::int_poly::IntPolynomial;

/// Dense polynomial over F_l, coefficients reduced into [0, l).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModPoly {
    modulus: BigInt,
    coeffs: Vec<BigInt>,
}

impl ModPoly {
    pub fn new(modulus: BigInt, coeffs: Vec<BigInt>) -> Self {
        assert!(modulus >= BigInt::from(2));
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().map(|c| c.mod_floor(&modulus)).collect();
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        ModPoly { modulus, coeffs }
    }

    pub fn from_int_poly(p: &IntPolynomial, modulus: &BigInt) -> Self {
        ModPoly::new(modulus.clone(), p.coeffs().to_vec())
    }

    pub fn zero(modulus: &BigInt) -> Self {
        ModPoly {
            modulus: modulus.clone(),
            coeffs: vec![],
        }
    }

    pub fn constant(modulus: &BigInt, c: BigInt) -> Self {
        ModPoly::new(modulus.clone(), vec![c])
    }

    pub fn one(modulus: &BigInt) -> Self {
        ModPoly::constant(modulus, BigInt::one())
    }

    pub fn x(modulus: &BigInt) -> Self {
        ModPoly::new(modulus.clone(), vec![BigInt::zero(), BigInt::one()])
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = (acc * x + c).mod_floor(&self.modulus);
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        ModPoly::new(self.modulus.clone(), coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        ModPoly::new(self.modulus.clone(), coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return ModPoly::zero(&self.modulus);
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ModPoly::new(self.modulus.clone(), out)
    }

    pub fn mul_scalar(&self, s: &BigInt) -> Self {
        ModPoly::new(self.modulus.clone(), self.coeffs.iter().map(|c| c * s).collect())
    }

    fn inv_scalar(&self, s: &BigInt) -> BigInt {
        let e = s.extended_gcd(&self.modulus);
        debug_assert!(e.gcd.is_one(), "scalar not invertible mod l");
        e.x.mod_floor(&self.modulus)
    }

    pub fn make_monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.inv_scalar(&self.leading());
        self.mul_scalar(&inv)
    }

    /// Division with remainder; the divisor's leading term must be a unit.
    pub fn divmod(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let d = divisor.deg();
        if self.degree().map_or(true, |n| n < d) {
            return (ModPoly::zero(&self.modulus), self.clone());
        }
        let lead_inv = self.inv_scalar(&divisor.leading());
        let mut rem = self.coeffs.clone();
        let n = rem.len() - 1;
        let mut quo = vec![BigInt::zero(); n - d + 1];
        for i in (d..=n).rev() {
            let c = (std::mem::replace(&mut rem[i], BigInt::zero()) * &lead_inv)
                .mod_floor(&self.modulus);
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().take(d).enumerate() {
                rem[i - d + j] = (&rem[i - d + j] - &c * b).mod_floor(&self.modulus);
            }
            quo[i - d] = c;
        }
        (
            ModPoly::new(self.modulus.clone(), quo),
            ModPoly::new(self.modulus.clone(), rem),
        )
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.divmod(divisor).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// self^exp mod reducer.
    pub fn pow_mod(&self, exp: &BigInt, reducer: &Self) -> Self {
        assert!(exp >= &BigInt::zero());
        let mut result = ModPoly::one(&self.modulus);
        let mut base = self.rem(reducer);
        let mut e = exp.clone();
        let two = BigInt::from(2);
        while e > BigInt::zero() {
            if e.is_odd() {
                result = result.mul(&base).rem(reducer);
            }
            base = base.mul(&base).rem(reducer);
            e = &e / &two;
        }
        result
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return ModPoly::zero(&self.modulus);
        }
        ModPoly::new(
            self.modulus.clone(),
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i + 1))
                .collect(),
        )
    }

    /// Lift back to integer coefficients in [0, l).
    pub fn to_int_poly(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.clone())
    }

    /// Symmetric lift: coefficients in (-l/2, l/2].
    pub fn to_int_poly_symmetric(&self) -> IntPolynomial {
        let half = &self.modulus / 2;
        IntPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| {
                    if c > &half {
                        c - &self.modulus
                    } else {
                        c.clone()
                    }
                })
                .collect(),
        )
    }
}

/// p-th root of a polynomial with zero derivative over the prime field F_p:
/// every exponent is a multiple of p and Frobenius fixes F_p.
fn pth_root(f: &ModPoly) -> ModPoly {
    let p = super::super::arith::to_u64(f.modulus()).expect("desk-scale modulus") as usize;
    let mut out = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate() {
        if i % p == 0 {
            out.push(c.clone());
        } else {
            debug_assert!(c.is_zero());
        }
    }
    ModPoly::new(f.modulus().clone(), out)
}

/// Squarefree decomposition over F_p; returns monic pairwise-coprime parts
/// with their multiplicities.
pub fn squarefree_decomposition(f: &ModPoly) -> Vec<(ModPoly, u32)> {
    let f = f.make_monic();
    if f.deg() == 0 {
        return vec![];
    }
    let mut out: Vec<(ModPoly, u32)> = Vec::new();
    let deriv = f.derivative();
    if deriv.is_zero() {
        let p = super::super::arith::to_u64(f.modulus()).expect("desk-scale modulus") as u32;
        for (g, m) in squarefree_decomposition(&pth_root(&f)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&deriv);
    let mut w = f.divmod(&c).0;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.divmod(&y).0;
        if fac.deg() >= 1 {
            out.push((fac.make_monic(), i));
        }
        w = y;
        c = c.divmod(&w).0;
        i += 1;
    }
    if c.deg() >= 1 {
        let p = super::super::arith::to_u64(f.modulus()).expect("desk-scale modulus") as u32;
        for (g, m) in squarefree_decomposition(&pth_root(&c)) {
            out.push((g, m * p));
        }
    }
    out.sort_by(|a, b| cmp_poly(&a.0, &b.0));
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// (product of all irreducible factors of degree d, d) pairs.
fn distinct_degree(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    let l = f.modulus().clone();
    let mut out = Vec::new();
    let mut f = f.make_monic();
    let x = ModPoly::x(&l);
    let mut h = x.clone();
    let mut d = 0usize;
    while f.deg() >= 1 {
        d += 1;
        if f.deg() < 2 * d {
            out.push((f.clone(), f.deg()));
            break;
        }
        h = h.pow_mod(&l, &f);
        let g = f.gcd(&h.sub(&x));
        if g.deg() >= 1 {
            out.push((g.clone(), d));
            f = f.divmod(&g).0;
            h = h.rem(&f);
        }
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting of a monic squarefree product
/// of irreducibles all of degree d.
fn equal_degree(f: &ModPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
    if f.deg() == d {
        return vec![f.make_monic()];
    }
    let l = f.modulus().clone();
    let n = f.deg();
    loop {
        let coeffs: Vec<BigInt> = (0..n)
            .map(|_| {
                let limbs = ((l.bits() + 63) / 64).max(1) as usize;
                let raw: Vec<u64> = (0..limbs).map(|_| rng.gen()).collect();
                BigInt::from_slice(num_bigint::Sign::Plus, &to_u32_slice(&raw)).mod_floor(&l)
            })
            .collect();
        let a = ModPoly::new(l.clone(), coeffs);
        if a.degree().is_none() {
            continue;
        }
        let g = f.gcd(&a);
        if g.deg() >= 1 && g.deg() < f.deg() {
            let rest = f.divmod(&g).0;
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&rest, d, rng));
            out.sort_by(cmp_poly_ref);
            return out;
        }
        let split = if l == BigInt::from(2) {
            // Trace map over F_2.
            let mut t = a.rem(f);
            let mut cur = a.rem(f);
            for _ in 1..d {
                cur = cur.mul(&cur).rem(f);
                t = t.add(&cur);
            }
            f.gcd(&t)
        } else {
            let e = (l.pow(d as u32) - BigInt::one()) / BigInt::from(2);
            let b = a.pow_mod(&e, f);
            f.gcd(&b.sub(&ModPoly::one(&l)))
        };
        if split.deg() >= 1 && split.deg() < f.deg() {
            let rest = f.divmod(&split).0;
            let mut out = equal_degree(&split, d, rng);
            out.extend(equal_degree(&rest, d, rng));
            out.sort_by(cmp_poly_ref);
            return out;
        }
    }
}

fn to_u32_slice(raw: &[u64]) -> Vec<u32> {
    let mut out = Vec::with_capacity(raw.len() * 2);
    for r in raw {
        out.push(*r as u32);
        out.push((*r >> 32) as u32);
    }
    out
}

fn cmp_poly(a: &ModPoly, b: &ModPoly) -> std::cmp::Ordering {
    a.deg()
        .cmp(&b.deg())
        .then_with(|| a.coeffs().cmp(b.coeffs()))
}

#[allow(clippy::ptr_arg)]
fn cmp_poly_ref(a: &ModPoly, b: &ModPoly) -> std::cmp::Ordering {
    cmp_poly(a, b)
}

/// Full factorization of P mod l into monic irreducibles with
/// multiplicities, sorted (degree, then coefficients) for determinism.
pub fn factor_mod(p: &IntPolynomial, l: &BigInt, seed: u64) -> Vec<(ModPoly, u32)> {
    let f = ModPoly::from_int_poly(p, l);
    assert!(!f.is_zero(), "factor_mod requires P nonzero mod l");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(ModPoly, u32)> = Vec::new();
    for (part, mult) in squarefree_decomposition(&f) {
        for (prod, d) in distinct_degree(&part) {
            for irr in equal_degree(&prod, d, &mut rng) {
                out.push((irr, mult));
            }
        }
    }
    out.sort_by(|a, b| cmp_poly(&a.0, &b.0));
    out
}

/// All roots of P mod l in [0, l), ascending.
pub fn roots_mod(p: &IntPolynomial, l: &BigInt, seed: u64) -> Vec<BigInt> {
    let f = ModPoly::from_int_poly(p, l);
    assert!(
        !f.leading().is_zero(),
        "leading coefficient must be a unit mod l"
    );
    // gcd with X^l - X isolates the distinct linear factors.
    let x = ModPoly::x(l);
    let xl = x.pow_mod(l, &f);
    let lin = f.gcd(&xl.sub(&x));
    if lin.deg() == 0 {
        return vec![];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut roots: Vec<BigInt> = equal_degree(&lin, 1, &mut rng)
        .into_iter()
        .map(|fac| (-fac.coeff(0)).mod_floor(l))
        .collect();
    roots.sort();
    roots
}

/// Irreducibility over F_l via distinct-degree structure.
pub fn is_irreducible_mod(p: &IntPolynomial, l: &BigInt) -> bool {
    let f = ModPoly::from_int_poly(p, l).make_monic();
    let n = f.deg();
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = ModPoly::x(l);
    // x^(l^n) = x mod f, and gcd(x^(l^(n/t)) - x, f) = 1 for prime t | n.
    let mut h = x.clone();
    let mut powers = Vec::with_capacity(n);
    for _ in 0..n {
        h = h.pow_mod(l, &f);
        powers.push(h.clone());
    }
    if powers[n - 1] != x.rem(&f) {
        return false;
    }
    let mut t = 2;
    let mut m = n;
    while m > 1 {
        while m % t != 0 {
            t += 1;
        }
        let g = f.gcd(&powers[n / t - 1].sub(&x));
        if g.deg() != 0 {
            return false;
        }
        while m % t == 0 {
            m /= t;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    const SEED: u64 = 7;

    fn ip(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn factor_x4_plus_1_mod_3() {
        // Oracle: brute force over the 9 monic quadratics mod 3 finds
        // (X^2+X+2)(X^2+2X+2) as the only split.
        let l = BigInt::from(3);
        let factors = factor_mod(&ip(&[1, 0, 0, 0, 1]), &l, SEED);
        assert_eq!(factors.len(), 2);
        let expected_a = ModPoly::new(l.clone(), vec![2.into(), 1.into(), 1.into()]);
        let expected_b = ModPoly::new(l.clone(), vec![2.into(), 2.into(), 1.into()]);
        let got: Vec<&ModPoly> = factors.iter().map(|(f, _)| f).collect();
        assert!(got.contains(&&expected_a) && got.contains(&&expected_b));
        assert!(factors.iter().all(|(_, m)| *m == 1));
    }

    #[test]
    fn factor_recomposes() {
        let l = BigInt::from(5);
        let p = ip(&[5, -2, 1]); // X^2 - 2X + 5 = X(X-2) mod 5
        let factors = factor_mod(&p, &l, SEED);
        let mut prod = ModPoly::one(&l);
        for (f, m) in &factors {
            for _ in 0..*m {
                prod = prod.mul(f);
            }
        }
        assert_eq!(prod, ModPoly::from_int_poly(&p, &l).make_monic());
        let roots = roots_mod(&p, &l, SEED);
        assert_eq!(roots, vec![BigInt::zero(), BigInt::from(2)]);
    }

    #[test]
    fn linear_already_irreducible() {
        let l = BigInt::from(7);
        let factors = factor_mod(&ip(&[-1, 1]), &l, SEED);
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].0, ModPoly::new(l, vec![6.into(), 1.into()]));
    }

    #[test]
    fn roots_match_brute_force() {
        for (coeffs, l) in [
            (vec![7i64, -3, 1], 5u64),
            (vec![1, 0, 1], 3),
            (vec![125, -10, 1], 29),
        ] {
            let p = ip(&coeffs);
            let lb = BigInt::from(l);
            let got = roots_mod(&p, &lb, SEED);
            let brute: Vec<BigInt> = (0..l)
                .map(BigInt::from)
                .filter(|r| p.eval(r).mod_floor(&lb).is_zero())
                .collect();
            assert_eq!(got, brute, "poly {coeffs:?} mod {l}");
        }
    }

    #[test]
    fn repeated_factors_get_multiplicity() {
        let l = BigInt::from(5);
        // (X+1)^2 (X+2)
        let p = ip(&[1, 1]).mul(&ip(&[1, 1])).mul(&ip(&[2, 1]));
        let factors = factor_mod(&p, &l, SEED);
        let mults: Vec<u32> = factors.iter().map(|(_, m)| *m).collect();
        assert_eq!(factors.len(), 2);
        assert!(mults.contains(&2) && mults.contains(&1));
    }

    #[test]
    fn pth_power_decomposition() {
        let l = BigInt::from(3);
        // (X+1)^3 = X^3 + 1 mod 3
        let p = ip(&[1, 0, 0, 1]);
        let factors = factor_mod(&p, &l, SEED);
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].1, 3);
        assert_eq!(factors[0].0, ModPoly::new(l, vec![1.into(), 1.into()]));
    }

    #[test]
    fn irreducibility_mod_l() {
        let l = BigInt::from(3);
        assert!(is_irreducible_mod(&ip(&[1, 0, 1]), &l)); // X^2+1 mod 3
        assert!(!is_irreducible_mod(&ip(&[1, 0, 0, 0, 1]), &l)); // X^4+1 splits
        assert!(is_irreducible_mod(&ip(&[2, 1]), &l));
        // X^2 + X + 1 = Phi_3 is irreducible mod 2
        assert!(is_irreducible_mod(&ip(&[1, 1, 1]), &BigInt::from(2)));
    }

    #[test]
    fn char2_equal_degree_split() {
        let l = BigInt::from(2);
        // (X^2+X+1)(X^3+X+1) mod 2: distinct degrees, plus a linear times it
        let p = ip(&[1, 1, 1]).mul(&ip(&[1, 1, 0, 1])).mul(&ip(&[1, 1]));
        let factors = factor_mod(&p, &l, SEED);
        assert_eq!(factors.len(), 3);
        let degs: Vec<usize> = factors.iter().map(|(f, _)| f.deg()).collect();
        assert_eq!(degs, vec![1, 2, 3]);
    }
}
