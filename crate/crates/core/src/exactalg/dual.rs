//! Dual numbers `a + b·ε` with `ε² = 0`.
//!
//! The same generic type carries exact directional derivatives (over
//! [`Rational`](rug::Rational)) and numeric ones (over [`Real`](super::Real)).

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Dual<T> {
    pub re: T,
    pub eps: T,
}

impl<T> Dual<T> {
    pub fn new(re: T, eps: T) -> Self {
        Dual { re, eps }
    }
}

impl<T> Add for Dual<T>
where
    T: Add<Output = T>,
{
    type Output = Dual<T>;

    fn add(self, rhs: Dual<T>) -> Dual<T> {
        Dual::new(self.re + rhs.re, self.eps + rhs.eps)
    }
}

impl<T> Sub for Dual<T>
where
    T: Sub<Output = T>,
{
    type Output = Dual<T>;

    fn sub(self, rhs: Dual<T>) -> Dual<T> {
        Dual::new(self.re - rhs.re, self.eps - rhs.eps)
    }
}

impl<T> Mul for Dual<T>
where
    T: Clone + Add<Output = T> + Mul<Output = T>,
{
    type Output = Dual<T>;

    fn mul(self, rhs: Dual<T>) -> Dual<T> {
        let eps = self.re.clone() * rhs.eps + self.eps * rhs.re.clone();
        Dual::new(self.re * rhs.re, eps)
    }
}

impl<T> Neg for Dual<T>
where
    T: Neg<Output = T>,
{
    type Output = Dual<T>;

    fn neg(self) -> Dual<T> {
        Dual::new(-self.re, -self.eps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn product_rule() {
        let a = Dual::new(q(2, 1), q(3, 1));
        let b = Dual::new(q(5, 1), q(-1, 2));
        // (2 + 3e)(5 - e/2) = 10 + (15 - 1)e
        assert_eq!(a * b, Dual::new(q(10, 1), q(14, 1)));
    }

    #[test]
    fn additive_ops() {
        let a = Dual::new(q(1, 3), q(1, 1));
        let b = Dual::new(q(2, 3), q(-2, 1));
        assert_eq!(a.clone() + b.clone(), Dual::new(q(1, 1), q(-1, 1)));
        assert_eq!(a.clone() - b, Dual::new(q(-1, 3), q(3, 1)));
        assert_eq!(-a, Dual::new(q(-1, 3), q(-1, 1)));
    }
}
