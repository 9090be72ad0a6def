//! Finite field extensions F_{l^k} presented as F_l[t]/(h) for a monic
//! irreducible h, with multiplicative-order computation.

use num_bigint::BigInt;
use num_traits::One;

use super::mod_poly::{is_irreducible_mod, ModPoly};
use crate::arith::{factor_with_budget, order_dividing};
use crate::error::{Error, Result};

/// F_l[t]/(defining_poly); elements are residues modulo the defining poly.
#[derive(Clone, Debug)]
pub struct FiniteFieldExt {
    characteristic: BigInt,
    defining: ModPoly,
}

impl FiniteFieldExt {
    /// Check irreducibility of the defining polynomial and build the field.
    pub fn new(characteristic: BigInt, defining: ModPoly) -> Result<Self> {
        if defining.modulus() != &characteristic {
            return Err(Error::InvalidInput(
                "defining polynomial has a different modulus".into(),
            ));
        }
        let int_form = defining.to_int_poly();
        if !is_irreducible_mod(&int_form, &characteristic) {
            return Err(Error::InvalidInput(format!(
                "defining polynomial {} is reducible mod {}",
                int_form, characteristic
            )));
        }
        Ok(FiniteFieldExt {
            characteristic,
            defining: defining.make_monic(),
        })
    }

    pub fn characteristic(&self) -> &BigInt {
        &self.characteristic
    }

    pub fn extension_degree(&self) -> usize {
        self.defining.deg()
    }

    pub fn defining_poly(&self) -> &ModPoly {
        &self.defining
    }

    /// |F_{l^k}^*| = l^k - 1.
    pub fn unit_group_order(&self) -> BigInt {
        self.characteristic.pow(self.extension_degree() as u32) - BigInt::one()
    }

    pub fn reduce(&self, x: &ModPoly) -> ModPoly {
        x.rem(&self.defining)
    }

    /// The residue class of t.
    pub fn generator(&self) -> ModPoly {
        self.reduce(&ModPoly::x(&self.characteristic))
    }

    pub fn pow(&self, x: &ModPoly, e: &BigInt) -> ModPoly {
        x.pow_mod(e, &self.defining)
    }

    /// Multiplicative order of a nonzero element, via factorization of
    /// l^k - 1 and descent through its prime divisors.
    pub fn element_order(&self, x: &ModPoly, rho_budget: u64) -> Result<BigInt> {
        let x = self.reduce(x);
        if x.is_zero() {
            return Err(Error::Domain("order of zero is undefined".into()));
        }
        let group = self.unit_group_order();
        let factors = factor_with_budget(&group, rho_budget).map_err(|e| match e {
            Error::FactorBudgetExceeded(n) => Error::FactorBudgetExceeded(format!(
                "{n} (group order of F_{{{}^{}}}; retry with a smaller instance)",
                self.characteristic,
                self.extension_degree()
            )),
            other => other,
        })?;
        // Descend exactly as for integers, but with polynomial powers.
        use num_integer::Integer;
        let mut d = group.clone();
        debug_assert!(self.pow(&x, &d).is_one());
        for (p, _) in factors.factors() {
            while d.is_multiple_of(p) {
                let candidate = &d / p;
                if self.pow(&x, &candidate).is_one() {
                    d = candidate;
                } else {
                    break;
                }
            }
        }
        Ok(d)
    }
}

/// Order of an integer a inside F_l embedded in the prime field; kept here
/// so callers can treat F_l and F_{l^k} uniformly.
pub fn prime_field_order(a: &BigInt, l: &BigInt, rho_budget: u64) -> Result<BigInt> {
    use num_integer::Integer;
    let a = a.mod_floor(l);
    if a.is_one() {
        return Ok(BigInt::one());
    }
    if a == BigInt::from(0) {
        return Err(Error::Domain("order of zero is undefined".into()));
    }
    let group = l - BigInt::one();
    order_dividing(&a, l, &group, rho_budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::IntPolynomial;

    const BUDGET: u64 = 1 << 22;

    #[test]
    fn f9_generator_has_order_4() {
        // F_9 = F_3[t]/(t^2+1); t^2 = -1 so t has order 4.
        let l = BigInt::from(3);
        let h = ModPoly::from_int_poly(&IntPolynomial::from_i64(&[1, 0, 1]), &l);
        let f9 = FiniteFieldExt::new(l, h).unwrap();
        let t = f9.generator();
        assert_eq!(f9.element_order(&t, BUDGET).unwrap(), BigInt::from(4));
        let one = ModPoly::one(f9.characteristic());
        assert_eq!(f9.element_order(&one, BUDGET).unwrap(), BigInt::one());
    }

    #[test]
    fn prime_field_matches_arith_order() {
        assert_eq!(
            prime_field_order(&BigInt::from(2), &BigInt::from(5), BUDGET).unwrap(),
            BigInt::from(4)
        );
        assert_eq!(
            prime_field_order(&BigInt::from(9), &BigInt::from(41), BUDGET).unwrap(),
            BigInt::from(4)
        );
    }

    #[test]
    fn order_of_x_divides_group_order() {
        use num_integer::Integer;
        // t in F_{5^3} via the irreducible t^3 + t + 1 mod 5.
        let l = BigInt::from(5);
        let h = ModPoly::from_int_poly(&IntPolynomial::from_i64(&[1, 1, 0, 1]), &l);
        let f = FiniteFieldExt::new(l, h).unwrap();
        let ord = f.element_order(&f.generator(), BUDGET).unwrap();
        assert!(f.unit_group_order().is_multiple_of(&ord));
        assert!(f.pow(&f.generator(), &ord).is_one());
    }

    #[test]
    fn rejects_reducible_defining_poly() {
        let l = BigInt::from(3);
        let h = ModPoly::from_int_poly(&IntPolynomial::from_i64(&[2, 0, 1]), &l); // t^2+2=(t+1)(t+2)
        assert!(FiniteFieldExt::new(l, h).is_err());
    }
}
