use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use rug::Rational;

use super::Dual;

/// Exact coefficient field used by the symbolic pipeline.
///
/// Every value splits into a rational real part plus a nilpotent part. For
/// [`Rational`] the nilpotent part is zero; for `Dual<Rational>` it is the
/// `ε` component. Frequencies of exponential polynomials are always real
/// parts, so nilpotent perturbations of a frequency surface as polynomial
/// factors in `t`.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: Rational) -> Self;
    fn is_zero(&self) -> bool;
    /// Inverse; requires a nonzero real part.
    fn inv(&self) -> Self;
    fn real_part(&self) -> Rational;

    fn nilpotent_part(&self) -> Self {
        self.clone() - Self::from_rational(self.real_part())
    }

    fn from_i64(v: i64) -> Self {
        Self::from_rational(Rational::from(v))
    }

    fn scale(&self, r: &Rational) -> Self {
        self.clone() * Self::from_rational(r.clone())
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::new()
    }

    fn one() -> Self {
        Rational::from(1)
    }

    fn from_rational(r: Rational) -> Self {
        r
    }

    fn is_zero(&self) -> bool {
        self.cmp0() == std::cmp::Ordering::Equal
    }

    fn inv(&self) -> Self {
        assert!(!Scalar::is_zero(self), "inverse of zero");
        self.clone().recip()
    }

    fn real_part(&self) -> Rational {
        self.clone()
    }

    fn nilpotent_part(&self) -> Self {
        Rational::new()
    }

    fn scale(&self, r: &Rational) -> Self {
        Rational::from(self * r)
    }
}

impl Scalar for Dual<Rational> {
    fn zero() -> Self {
        Dual::new(Rational::new(), Rational::new())
    }

    fn one() -> Self {
        Dual::new(Rational::from(1), Rational::new())
    }

    fn from_rational(r: Rational) -> Self {
        Dual::new(r, Rational::new())
    }

    fn is_zero(&self) -> bool {
        Scalar::is_zero(&self.re) && Scalar::is_zero(&self.eps)
    }

    fn inv(&self) -> Self {
        let r = self.re.inv();
        let eps = -Rational::from(&self.eps * &r) * &r;
        Dual::new(r, eps)
    }

    fn real_part(&self) -> Rational {
        self.re.clone()
    }

    fn nilpotent_part(&self) -> Self {
        Dual::new(Rational::new(), self.eps.clone())
    }

    fn scale(&self, r: &Rational) -> Self {
        Dual::new(Rational::from(&self.re * r), Rational::from(&self.eps * r))
    }
}
