//! Unreduced quotients of Laurent polynomials.

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::rational::{self, Rational};

/// `num / den` with `den != 0`. Pairs are not canonical: equality is decided by
/// cross-multiplication and no gcd is ever taken.
#[derive(Debug, Clone)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.nvars() != den.nvars() {
            return Err(Error::ArityMismatch(num.nvars(), den.nvars()));
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let n = p.nvars();
        RationalFunction { num: p, den: LaurentPoly::one(n) }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    /// Sum; reuses the denominator when both sides share it.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.den == other.den {
            return Self::new(self.num.try_add(&other.num)?, self.den.clone());
        }
        let num = self.num.try_mul(&other.den)?.try_add(&other.num.try_mul(&self.den)?)?;
        Self::new(num, self.den.try_mul(&other.den)?)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Self::new(self.num.try_mul(&other.num)?, self.den.try_mul(&other.den)?)
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Result<Self> {
        Self::new(self.num.try_mul(p)?, self.den.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn substitute_signed(&self, images: &[(usize, i32)]) -> Self {
        RationalFunction {
            num: self.num.substitute_signed(images),
            den: self.den.substitute_signed(images),
        }
    }

    /// Equality as rational functions: `a/b == c/d` iff `a*d == c*b`.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        Ok(self.num.try_mul(&other.den)? == other.num.try_mul(&self.den)?)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        let d = self.den.evaluate(point)?;
        rational::checked_div(&self.num.evaluate(point)?, &d)
    }

    /// Resolves the quotient exactly, failing with `NonDivisible` otherwise.
    pub fn into_poly(self) -> Result<LaurentPoly> {
        self.num.divide_exact(&self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    fn arb_poly(n: usize) -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((prop::collection::vec(-3i32..=3, n), -5i64..=5), 1..=5).prop_map(
            move |ts| LaurentPoly::from_terms(n, ts.into_iter().map(|(e, c)| (e, int(c)))).unwrap(),
        )
    }

    #[test]
    fn zero_denominator_rejected() {
        let p = LaurentPoly::one(1);
        assert!(RationalFunction::new(p, LaurentPoly::zero(1)).is_err());
    }

    #[test]
    fn resolves_exact_quotient() {
        let x = LaurentPoly::var_pow(1, 0, 1);
        let one = LaurentPoly::one(1);
        let num = &(&x * &x) - &one;
        let f = RationalFunction::new(num, &x - &one).unwrap();
        assert_eq!(f.clone().into_poly().unwrap(), &x + &one);
        let g = RationalFunction::from_poly(&x + &one);
        assert!(f.equals(&g).unwrap());
    }

    proptest! {
        #[test]
        fn cross_multiplication_agrees_with_evaluation(
            a in arb_poly(2), b in arb_poly(2), k in arb_poly(2),
            pts in prop::collection::vec((1i64..=7, 1i64..=7, 1i64..=7, 1i64..=7), 5)
        ) {
            prop_assume!(!b.is_zero() && !k.is_zero());
            // a/b and (a*k)/(b*k) are equal as rational functions
            let f = RationalFunction::new(a.clone(), b.clone()).unwrap();
            let g = RationalFunction::new(&a * &k, &b * &k).unwrap();
            let eq = f.equals(&g).unwrap();
            prop_assert!(eq);
            for (p1, q1, p2, q2) in pts {
                let pt = [rat(p1, q1 + 7), rat(-p2, q2 + 11)];
                let (Ok(x), Ok(y)) = (f.evaluate(&pt), g.evaluate(&pt)) else { continue };
                prop_assert_eq!(x, y);
            }
        }
    }
}
