//! Newton polygons of Weil polynomials: lower convex hulls of coefficient
//! valuations, with slopes normalized so that v(q) = 1.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::IntPolynomial;

/// Multiset of rational slopes in [0, 1] with multiplicities, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    slopes: Vec<(BigRational, u64)>,
}

impl NewtonPolygon {
    pub fn new(mut slopes: Vec<(BigRational, u64)>) -> Self {
        slopes.retain(|(_, m)| *m > 0);
        slopes.sort_by(|a, b| a.0.cmp(&b.0));
        // Merge equal slopes.
        let mut merged: Vec<(BigRational, u64)> = Vec::new();
        for (s, m) in slopes {
            match merged.last_mut() {
                Some((prev, pm)) if *prev == s => *pm += m,
                _ => merged.push((s, m)),
            }
        }
        NewtonPolygon { slopes: merged }
    }

    /// Polygon of the minimal polynomial itself: the lower hull of
    /// (i, v_p(a_(deg-i))), slopes divided by v_p(q) = k.
    pub fn of_min_poly(min_poly: &IntPolynomial, p: &BigInt, k: u32) -> Self {
        let n = min_poly.deg();
        let mut points: Vec<(BigInt, BigInt)> = Vec::new();
        for i in 0..=n {
            let coeff = min_poly.coeff(n - i);
            if coeff.is_zero() {
                continue;
            }
            points.push((BigInt::from(i), BigInt::from(valuation(&coeff, p))));
        }
        let hull = lower_hull(&points);
        let mut slopes = Vec::new();
        for w in hull.windows(2) {
            let run = &w[1].0 - &w[0].0;
            let rise = &w[1].1 - &w[0].1;
            let slope = BigRational::new(rise, run.clone() * BigInt::from(k));
            let mult = run
                .to_u64_digits()
                .1
                .first()
                .copied()
                .unwrap_or(0);
            slopes.push((slope, mult));
        }
        NewtonPolygon::new(slopes)
    }

    /// Char-poly polygon: the min-poly polygon with every multiplicity
    /// scaled by the division-algebra index.
    pub fn scale_multiplicities(&self, m_pi: u64) -> Self {
        NewtonPolygon::new(
            self.slopes
                .iter()
                .map(|(s, m)| (s.clone(), m * m_pi))
                .collect(),
        )
    }

    pub fn slopes(&self) -> &[(BigRational, u64)] {
        &self.slopes
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.slopes.iter().map(|(_, m)| m).sum()
    }

    pub fn multiplicity_of(&self, slope: &BigRational) -> u64 {
        self.slopes
            .iter()
            .find(|(s, _)| s == slope)
            .map(|(_, m)| *m)
            .unwrap_or(0)
    }

    /// Slopes lambda and 1 - lambda carry equal multiplicity.
    pub fn is_symmetric(&self) -> bool {
        self.slopes.iter().all(|(s, m)| {
            let mirror = BigRational::one() - s;
            self.multiplicity_of(&mirror) == *m
        })
    }

    /// Every slope times its multiplicity is an integer.
    pub fn has_integral_breakpoints(&self) -> bool {
        self.slopes
            .iter()
            .all(|(s, m)| (s * BigRational::from_integer(BigInt::from(*m))).is_integer())
    }

    pub fn is_admissible(&self) -> bool {
        self.is_symmetric()
            && self.has_integral_breakpoints()
            && self
                .slopes
                .iter()
                .all(|(s, _)| !s.is_negative() && s <= &BigRational::one())
    }

    pub fn is_ordinary(&self) -> bool {
        let half = self.total_multiplicity() / 2;
        self.multiplicity_of(&BigRational::zero()) == half
            && self.multiplicity_of(&BigRational::one()) == half
            && self.slopes.len() == 2
    }

    pub fn is_supersingular(&self) -> bool {
        self.slopes.len() == 1 && self.slopes[0].0 == BigRational::new(1.into(), 2.into())
    }

    /// Least common denominator of the slopes.
    pub fn slope_lcd(&self) -> BigInt {
        let mut l = BigInt::one();
        for (s, _) in &self.slopes {
            l = l.lcm(s.denom());
        }
        l
    }
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigInt) -> u64 {
    assert!(!n.is_zero());
    let mut v = 0u64;
    let mut m = n.abs();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// Lower convex hull of points sorted by x (strictly increasing x).
fn lower_hull(points: &[(BigInt, BigInt)]) -> Vec<(BigInt, BigInt)> {
    let mut hull: Vec<(BigInt, BigInt)> = Vec::new();
    for pt in points {
        while hull.len() >= 2 {
            let a = &hull[hull.len() - 2];
            let b = &hull[hull.len() - 1];
            // Keep b only if it lies strictly below segment a->pt:
            // cross product (b-a) x (pt-a) < 0 means b above, pop it.
            let cross = (&b.0 - &a.0) * (&pt.1 - &a.1) - (&pt.0 - &a.0) * (&b.1 - &a.1);
            if cross <= BigInt::zero() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt.clone());
    }
    hull
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ip(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn ordinary_elliptic_slopes() {
        // X^2 - 2X + 5 at q=5: v_5 of (5,-2,1) from the top: (0,0),(1,0),(2,1);
        // hull slopes 0 and 1.
        let np = NewtonPolygon::of_min_poly(&ip(&[5, -2, 1]), &BigInt::from(5), 1);
        assert_eq!(np.slopes(), &[(rat(0, 1), 1), (rat(1, 1), 1)]);
        assert!(np.is_ordinary() && np.is_admissible());
    }

    #[test]
    fn type_iv_slopes() {
        // X^2 - 10X + 125 at q = 5^3: slopes 1/3 and 2/3.
        let np = NewtonPolygon::of_min_poly(&ip(&[125, -10, 1]), &BigInt::from(5), 3);
        assert_eq!(np.slopes(), &[(rat(1, 3), 1), (rat(2, 3), 1)]);
        assert!(np.is_symmetric());
        // Per-copy breakpoints are not integral; the tripled polygon is.
        assert!(!np.has_integral_breakpoints());
        let scaled = np.scale_multiplicities(3);
        assert!(scaled.is_admissible());
        assert_eq!(scaled.total_multiplicity(), 6);
        assert_eq!(scaled.slope_lcd(), BigInt::from(3));
    }

    #[test]
    fn supersingular_slopes() {
        // X^2 + 9 at q = 9: v_3 of (9, -, 1): points (0,0),(2,2); slope 1 over k=2.
        let np = NewtonPolygon::of_min_poly(&ip(&[9, 0, 1]), &BigInt::from(3), 2);
        assert_eq!(np.slopes(), &[(rat(1, 2), 2)]);
        assert!(np.is_supersingular() && np.is_admissible());
    }

    #[test]
    fn hull_skips_high_middle_points()  {
        // X^4 + 25X^2 + 81 at p=3 (synthetic): middle coefficient valuation
        // is 0 at X^2 since v_3(25)=0 -> hull picks it up.
        let np = NewtonPolygon::of_min_poly(&ip(&[81, 0, 25, 0, 1]), &BigInt::from(3), 2);
        assert_eq!(np.slopes(), &[(rat(0, 1), 2), (rat(1, 1), 2)]);
    }

    #[test]
    fn valuation_basics() {
        assert_eq!(valuation(&BigInt::from(125), &BigInt::from(5)), 3);
        assert_eq!(valuation(&BigInt::from(-50), &BigInt::from(5)), 2);
        assert_eq!(valuation(&BigInt::from(7), &BigInt::from(5)), 0);
    }
}
