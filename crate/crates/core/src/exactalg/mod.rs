//! Exact arithmetic kernel: Laurent and exponential polynomials over exact
//! scalars, dual numbers, and high-precision evaluation.

mod dual;
mod exppoly;
mod grammar;
mod laurent;
mod real;
mod scalar;

pub use dual::Dual;
pub use exppoly::ExpPoly;
pub use laurent::LaurentPoly;
pub(crate) use laurent::rational_pow;
pub use real::{Numeric, Real, DEFAULT_PRECISION};
pub use rug::{Integer, Rational};
pub use scalar::Scalar;

/// Convenience constructor for `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}
