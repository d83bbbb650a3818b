//! Arbitrary-precision reals (MPFR) and the numeric scalar trait.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::{Float, Rational};

use super::Dual;

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 256;

/// High-precision real. Binary operations round to the larger of the two
/// operand precisions.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct Real(Float);

impl Real {
    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        Real(Float::with_val(prec, r))
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Real(Float::with_val(prec, v))
    }

    pub fn from_f64(v: f64, prec: u32) -> Self {
        Real(Float::with_val(prec, v))
    }

    pub fn from_float(f: Float) -> Self {
        Real(f)
    }

    pub fn zero(prec: u32) -> Self {
        Real(Float::new(prec))
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    pub fn with_prec(mut self, prec: u32) -> Self {
        self.0.set_prec(prec);
        self
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    pub fn exp(&self) -> Self {
        Real(self.0.clone().exp())
    }

    pub fn abs(&self) -> Self {
        Real(self.0.clone().abs())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_sign_negative(&self) -> bool {
        self.0.is_sign_negative() && !self.0.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    /// Multiply by `2^k` exactly.
    pub fn mul_pow2(&self, k: i32) -> Self {
        let mut f = self.0.clone();
        f <<= k;
        Real(f)
    }

    /// Binary exponent `e` with `2^(e-1) <= |x| < 2^e`; `None` for zero.
    pub fn exponent(&self) -> Option<i32> {
        self.0.get_exp()
    }

    pub fn max(self, other: Real) -> Real {
        if other > self {
            other
        } else {
            self
        }
    }

    /// `|self − other| / |other|`, or the plain difference when `other` is zero.
    pub fn relative_error(&self, other: &Real) -> Real {
        let diff = (self - other).abs();
        if other.is_zero() {
            diff
        } else {
            diff / other.abs()
        }
    }

    /// Decimal rendering with a digit count derived from the precision.
    pub fn to_decimal(&self) -> String {
        let digits = (self.prec() as f64 * std::f64::consts::LOG10_2).ceil() as usize;
        self.0.to_string_radix(10, Some(digits.max(1)))
    }

    /// Exact hexadecimal rendering of the binary value.
    pub fn to_hex(&self) -> String {
        self.0.to_string_radix(16, None)
    }

    pub fn parse(s: &str, prec: u32) -> Option<Self> {
        Float::parse(s).ok().map(|p| Real(Float::with_val(prec, p)))
    }

    pub fn cmp_abs(&self, other: &Real) -> Ordering {
        self.0.cmp_abs(&other.0).unwrap_or(Ordering::Equal)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal())
    }
}

macro_rules! real_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a> $trait<&'a Real> for &'a Real {
            type Output = Real;
            fn $method(self, rhs: &'a Real) -> Real {
                let prec = self.prec().max(rhs.prec());
                Real(Float::with_val(prec, &self.0 $op &rhs.0))
            }
        }

        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }

        impl<'a> $trait<&'a Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &'a Real) -> Real {
                (&self).$method(rhs)
            }
        }
    };
}

real_binop!(Add, add, +);
real_binop!(Sub, sub, -);
real_binop!(Mul, mul, *);
real_binop!(Div, div, /);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0.clone())
    }
}

/// Scalar type of the numeric pipeline: plain reals, or dual reals when a
/// directional derivative is carried along.
pub trait Numeric:
    Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_real(r: Real) -> Self;
    fn value(&self) -> &Real;
    fn exp(&self) -> Self;
    fn mul_pow2(&self, k: i32) -> Self;

    fn scale(&self, r: &Real) -> Self {
        self.clone() * Self::from_real(r.clone())
    }
}

impl Numeric for Real {
    fn from_real(r: Real) -> Self {
        r
    }

    fn value(&self) -> &Real {
        self
    }

    fn exp(&self) -> Self {
        Real::exp(self)
    }

    fn mul_pow2(&self, k: i32) -> Self {
        Real::mul_pow2(self, k)
    }

    fn scale(&self, r: &Real) -> Self {
        self * r
    }
}

impl Numeric for Dual<Real> {
    fn from_real(r: Real) -> Self {
        let prec = r.prec();
        Dual::new(r, Real::zero(prec))
    }

    fn value(&self) -> &Real {
        &self.re
    }

    fn exp(&self) -> Self {
        let e = self.re.exp();
        let eps = &e * &self.eps;
        Dual::new(e, eps)
    }

    fn mul_pow2(&self, k: i32) -> Self {
        Dual::new(self.re.mul_pow2(k), self.eps.mul_pow2(k))
    }

    fn scale(&self, r: &Real) -> Self {
        Dual::new(&self.re * r, &self.eps * r)
    }
}
