use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Poly, Rational};
use crate::error::{Error, Result};

/// A univariate rational function `num(t) / den(t)` over the rationals.
///
/// Construction always cancels the polynomial gcd and makes the denominator
/// monic, so the order of a pole or zero at `t = 0` can be read directly
/// from the stored polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction1V {
    num: Poly,
    den: Poly,
}

impl RationalFunction1V {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominatorPolynomial);
        }
        if num.is_zero() {
            return Ok(RationalFunction1V { num, den: Poly::one() });
        }
        let g = Poly::gcd(&num, &den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lc = den.leading().unwrap().recip();
        Ok(RationalFunction1V { num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction1V { num: p, den: Poly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    /// True when the function has no pole at `t = 0`.
    pub fn is_regular_at_zero(&self) -> bool {
        !self.den.coeff(0).is_zero()
    }

    /// Exact value at `t0`.
    pub fn eval(&self, t0: &Rational) -> Result<Rational> {
        let d = self.den.eval(t0);
        if d.is_zero() {
            return Err(Error::PoleAtPoint(t0.clone()));
        }
        Ok(self.num.eval(t0) / d)
    }

    pub fn eval_at_zero(&self) -> Result<Rational> {
        let d = self.den.coeff(0);
        if d.is_zero() {
            return Err(Error::PoleAtPoint(Rational::zero()));
        }
        Ok(self.num.coeff(0) / d)
    }

    /// `f'(0) / 2`, the single-variable form of the derivative operator at the
    /// critical hyperplane.
    pub fn half_derivative_at_zero(&self) -> Result<Rational> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::PoleAtPoint(Rational::zero()));
        }
        let d1 = self.den.coeff(1);
        let n0 = self.num.coeff(0);
        let n1 = self.num.coeff(1);
        let deriv = (n1 * &d0 - n0 * d1) / (&d0 * &d0);
        Ok(deriv / Rational::from(2))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction1V { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        Self::new(&self.num * p, self.den.clone()).expect("denominator unchanged")
    }
}

/// Exact value `f(t0)`.
pub fn rf_eval(f: &RationalFunction1V, t0: &Rational) -> Result<Rational> {
    f.eval(t0)
}

/// `f'(0) / 2` for `f` without a pole at the origin.
pub fn rf_derivative_at_zero(f: &RationalFunction1V) -> Result<Rational> {
    f.half_derivative_at_zero()
}

impl Add<&RationalFunction1V> for &RationalFunction1V {
    type Output = RationalFunction1V;
    fn add(self, rhs: &RationalFunction1V) -> RationalFunction1V {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction1V::new(num, &self.den * &rhs.den).expect("nonzero product")
    }
}

impl Sub<&RationalFunction1V> for &RationalFunction1V {
    type Output = RationalFunction1V;
    fn sub(self, rhs: &RationalFunction1V) -> RationalFunction1V {
        self + &(-rhs)
    }
}

impl Mul<&RationalFunction1V> for &RationalFunction1V {
    type Output = RationalFunction1V;
    fn mul(self, rhs: &RationalFunction1V) -> RationalFunction1V {
        RationalFunction1V::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero product")
    }
}

impl Neg for &RationalFunction1V {
    type Output = RationalFunction1V;
    fn neg(self) -> RationalFunction1V {
        RationalFunction1V { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Debug for RationalFunction1V {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}
