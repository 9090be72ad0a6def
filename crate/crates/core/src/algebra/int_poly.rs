//! Dense univariate polynomials with exact integer coefficients.
//!
//! Coefficients are stored constant term first; the invariant is that the
//! last entry is nonzero unless the polynomial is zero (empty vector).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact integer-coefficient polynomial, constant term first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Build from constant-first coefficients, trimming leading zeros.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPolynomial::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPolynomial::new(vec![c])
    }

    /// The monomial X.
    pub fn x() -> Self {
        IntPolynomial::new(vec![BigInt::zero(), BigInt::one()])
    }

    /// c * X^k.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPolynomial::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree treating zero as degree 0; convenient for validated inputs.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of X^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn neg(&self) -> Self {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        IntPolynomial::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        IntPolynomial::new(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
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
        IntPolynomial::new(out)
    }

    pub fn mul_scalar(&self, s: &BigInt) -> Self {
        IntPolynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return IntPolynomial::zero();
        }
        IntPolynomial::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i + 1))
                .collect(),
        )
    }

    /// Division with remainder by a monic divisor, exact over Z.
    pub fn divmod_monic(&self, divisor: &Self) -> (Self, Self) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let d = divisor.deg();
        if self.degree().map_or(true, |n| n < d) {
            return (IntPolynomial::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let n = rem.len() - 1;
        let mut quo = vec![BigInt::zero(); n - d + 1];
        for i in (d..=n).rev() {
            let c = std::mem::replace(&mut rem[i], BigInt::zero());
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().take(d).enumerate() {
                rem[i - d + j] -= &c * b;
            }
            quo[i - d] = c;
        }
        (IntPolynomial::new(quo), IntPolynomial::new(rem))
    }

    /// Exact division over Z; None when the division leaves a remainder
    /// or a non-integral quotient coefficient.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPolynomial::zero());
        }
        let d = divisor.deg();
        let n = self.deg();
        if n < d {
            return None;
        }
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigInt::zero(); n - d + 1];
        for i in (d..=n).rev() {
            let c = std::mem::replace(&mut rem[i], BigInt::zero());
            if c.is_zero() {
                continue;
            }
            let (q, r) = c.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (j, b) in divisor.coeffs.iter().take(d).enumerate() {
                rem[i - d + j] -= &q * b;
            }
            quo[i - d] = q;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(IntPolynomial::new(quo))
        } else {
            None
        }
    }

    /// Content: gcd of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        IntPolynomial::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Polynomial gcd over Z via a primitive pseudo-remainder sequence.
    /// The result is primitive with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.primitive_part()
    }

    /// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b over Z.
    fn pseudo_rem(&self, b: &Self) -> Self {
        let db = b.deg();
        let mut r = self.clone();
        let lead = b.leading();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let c = r.leading();
            let shift = dr - db;
            r = r.mul_scalar(&lead).sub(&b.mul(&IntPolynomial::monomial(c, shift)));
        }
        r
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if self.deg() == 0 {
            return true;
        }
        self.gcd(&self.derivative()).deg() == 0
    }

    /// P / gcd(P, P'), primitive.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.deg() == 0 {
            return self.primitive_part();
        }
        // Gauss: the quotient of P by its primitive gcd is integral.
        self.exact_div(&g)
            .expect("gcd divides exactly")
            .primitive_part()
    }

    /// Resultant of self and other over Z (Sylvester matrix, Bareiss).
    pub fn resultant(&self, other: &Self) -> BigInt {
        let (m, n) = match (self.degree(), other.degree()) {
            (Some(m), Some(n)) => (m, n),
            _ => return BigInt::zero(),
        };
        if m == 0 {
            return self.leading().pow(n as u32);
        }
        if n == 0 {
            return other.leading().pow(m as u32);
        }
        let size = m + n;
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for row in 0..n {
            for (i, c) in self.coeffs.iter().rev().enumerate() {
                mat[row][row + i] = c.clone();
            }
        }
        for row in 0..m {
            for (i, c) in other.coeffs.iter().rev().enumerate() {
                mat[n + row][row + i] = c.clone();
            }
        }
        bareiss_determinant(mat)
    }

    /// Discriminant: (-1)^(n(n-1)/2) * Res(P, P') / lc(P).
    pub fn discriminant(&self) -> BigInt {
        let n = match self.degree() {
            Some(n) if n >= 1 => n,
            _ => return BigInt::zero(),
        };
        if n == 1 {
            return BigInt::one();
        }
        let res = self.resultant(&self.derivative());
        let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
        let (q, r) = (BigInt::from(sign) * res).div_rem(&self.leading());
        debug_assert!(r.is_zero());
        q
    }

    /// s^deg * P(X/s): integer polynomial whose roots are s times ours.
    pub fn scale_roots(&self, s: &BigInt) -> Self {
        let n = match self.degree() {
            Some(n) => n,
            None => return IntPolynomial::zero(),
        };
        let mut out = Vec::with_capacity(n + 1);
        let mut pw = BigInt::one();
        for i in (0..=n).rev() {
            out.push((self.coeff(i).clone(), pw.clone()));
            pw *= s;
        }
        // out holds (a_i, s^(n-i)) from i=n down; rebuild constant-first.
        let mut coeffs = vec![BigInt::zero(); n + 1];
        for (idx, (a, sp)) in out.into_iter().enumerate() {
            let i = n - idx;
            coeffs[i] = a * sp;
        }
        IntPolynomial::new(coeffs)
    }

    /// Parse a comma-separated constant-first decimal list, e.g. "125,-10,1".
    pub fn parse(text: &str) -> Result<Self> {
        let mut coeffs = Vec::new();
        for part in text.split(',') {
            let t = part.trim();
            let c: BigInt = t
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad coefficient {t:?}")))?;
            coeffs.push(c);
        }
        Ok(IntPolynomial::new(coeffs))
    }

    /// Constant-first decimal strings, the wire format for polynomials.
    pub fn to_decimal_strings(&self) -> Vec<String> {
        if self.is_zero() {
            return vec!["0".to_string()];
        }
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_decimal_strings(parts: &[String]) -> Result<Self> {
        let mut coeffs = Vec::new();
        for t in parts {
            let c: BigInt = t
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad coefficient {t:?}")))?;
            coeffs.push(c);
        }
        Ok(IntPolynomial::new(coeffs))
    }

    /// Largest coefficient magnitude in bits; guard input for expansions.
    pub fn max_coeff_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }
}

/// Fraction-free Gaussian elimination; exact determinant over Z.
fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero());
                m[i][j] = q;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                1 => {
                    if mag.is_one() {
                        write!(f, "X")?;
                    } else {
                        write!(f, "{mag}X")?;
                    }
                }
                _ => {
                    if mag.is_one() {
                        write!(f, "X^{i}")?;
                    } else {
                        write!(f, "{mag}X^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn arithmetic_basics() {
        let a = p(&[1, 2, 1]); // (X+1)^2
        let b = p(&[1, 1]);
        assert_eq!(b.mul(&b), a);
        assert_eq!(a.sub(&a), IntPolynomial::zero());
        assert_eq!(a.eval(&BigInt::from(3)), BigInt::from(16));
    }

    #[test]
    fn divmod_and_exact_div() {
        let a = p(&[-1, 0, 0, 0, 0, 0, 0, 0, 1]); // X^8 - 1
        let b = p(&[-1, 1]); // X - 1
        let (q, r) = a.divmod_monic(&b);
        assert!(r.is_zero());
        assert_eq!(q.mul(&b), a);
        assert_eq!(a.exact_div(&b).unwrap(), q);
        assert!(a.exact_div(&p(&[1, 1, 1])).is_none());
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = p(&[1, 1]).mul(&p(&[1, 1])).mul(&p(&[2, 1]));
        let g = a.gcd(&a.derivative());
        assert_eq!(g, p(&[1, 1]));
        assert!(!a.is_squarefree());
        assert_eq!(a.squarefree_part(), p(&[1, 1]).mul(&p(&[2, 1])));
        assert!(p(&[5, -2, 1]).is_squarefree());
    }

    #[test]
    fn resultant_and_discriminant() {
        // disc(X^2 + bX + c) = b^2 - 4c
        let q = p(&[5, -2, 1]);
        assert_eq!(q.discriminant(), BigInt::from(4 - 20));
        // disc(X^3 + pX + q) = -4p^3 - 27q^2
        let c = p(&[2, 1, 0, 1]);
        assert_eq!(c.discriminant(), BigInt::from(-4 - 27 * 4));
    }

    #[test]
    fn scale_roots_matches_substitution() {
        // P = X^2 + 1, s = 3: 3^2 * P(X/3) = X^2 + 9
        let q = p(&[1, 0, 1]).scale_roots(&BigInt::from(3));
        assert_eq!(q, p(&[9, 0, 1]));
    }

    #[test]
    fn parse_and_strings() {
        let q = IntPolynomial::parse("125,-10,1").unwrap();
        assert_eq!(q, p(&[125, -10, 1]));
        assert_eq!(q.to_decimal_strings(), vec!["125", "-10", "1"]);
        assert_eq!(
            IntPolynomial::from_decimal_strings(&q.to_decimal_strings()).unwrap(),
            q
        );
    }
}
