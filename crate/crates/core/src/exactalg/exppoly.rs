use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Integer, Rational};

use super::laurent::{forward_owned, rational_pow};
use super::{Dual, LaurentPoly, Real, Scalar};
use crate::error::{Error, Result};

/// Exponential polynomial `t ↦ Σ_μ c_μ(t)·e^{μt}` with rational frequencies
/// and Laurent polynomial coefficients.
///
/// Stored canonically: no zero coefficients, frequencies distinct. Two
/// values are equal as functions iff they are structurally equal.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpPoly<C = Rational> {
    terms: BTreeMap<Rational, LaurentPoly<C>>,
}

impl<C: Scalar> Default for ExpPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Scalar> ExpPoly<C> {
    pub fn zero() -> Self {
        ExpPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn constant(c: C) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    pub fn from_laurent(p: LaurentPoly<C>) -> Self {
        Self::term(Rational::new(), p)
    }

    /// The single term `c(t)·e^{μt}`.
    pub fn term(frequency: Rational, coeff: LaurentPoly<C>) -> Self {
        let mut out = Self::zero();
        out.add_term(frequency, coeff);
        out
    }

    /// `e^{a·t}` for a scalar `a`; the nilpotent part of `a` is expanded as
    /// a (finite) power series in `t`.
    pub fn exp_linear(a: &C) -> Self {
        let nil = a.nilpotent_part();
        let mut series = LaurentPoly::one();
        let mut power = C::one();
        let mut factorial = Integer::from(1);
        let mut k = 0;
        loop {
            k += 1;
            power = power * nil.clone();
            if power.is_zero() {
                break;
            }
            factorial *= k;
            let coeff = power.scale(&Rational::from((Integer::from(1), factorial.clone())));
            series.add_term(k, coeff);
        }
        Self::term(a.real_part(), series)
    }

    pub fn add_term(&mut self, frequency: Rational, coeff: LaurentPoly<C>) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&frequency) {
            Some(old) => {
                let sum = &old + &coeff;
                if !sum.is_zero() {
                    self.terms.insert(frequency, sum);
                }
            }
            None => {
                self.terms.insert(frequency, coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of distinct frequencies.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending frequency order.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &LaurentPoly<C>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, frequency: &Rational) -> LaurentPoly<C> {
        self.terms.get(frequency).cloned().unwrap_or_default()
    }

    pub fn frequencies(&self) -> Vec<Rational> {
        self.terms.keys().cloned().collect()
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.values().filter_map(|c| c.min_exponent()).min()
    }

    pub fn mul_laurent(&self, p: &LaurentPoly<C>) -> Self {
        let mut out = Self::zero();
        for (mu, c) in self.terms.iter() {
            out.add_term(mu.clone(), c * p);
        }
        out
    }

    pub fn mul_scalar(&self, c: &C) -> Self {
        let mut out = Self::zero();
        for (mu, p) in self.terms.iter() {
            out.add_term(mu.clone(), p.mul_scalar(c));
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = Self::zero();
        for (mu, p) in self.terms.iter() {
            out.add_term(mu.clone(), p.scale(r));
        }
        out
    }

    /// Multiply by `t^k`.
    pub fn shift_t(&self, k: i32) -> Self {
        ExpPoly {
            terms: self
                .terms
                .iter()
                .map(|(mu, p)| (mu.clone(), p.shift(k)))
                .collect(),
        }
    }

    /// Multiply by `e^{νt}`.
    pub fn shift_frequency(&self, nu: &Rational) -> Self {
        ExpPoly {
            terms: self
                .terms
                .iter()
                .map(|(mu, p)| (Rational::from(mu + nu), p.clone()))
                .collect(),
        }
    }

    /// `d/dt`, term-wise `c e^{μt} ↦ (c' + μc) e^{μt}`.
    pub fn t_derivative(&self) -> Self {
        let mut out = Self::zero();
        for (mu, p) in self.terms.iter() {
            out.add_term(mu.clone(), &p.derivative() + &p.scale(mu));
        }
        out
    }

    /// `t·d/dt`.
    pub fn euler_derivative(&self) -> Self {
        self.t_derivative().shift_t(1)
    }

    /// The function `t ↦ p(c·t)`.
    pub fn rescale_variable(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (mu, p) in self.terms.iter() {
            out.add_term(Rational::from(mu * c), p.rescale_variable(c));
        }
        out
    }

    pub fn map<D: Scalar, F: Fn(&C) -> D>(&self, f: F) -> ExpPoly<D> {
        let mut out = ExpPoly::zero();
        for (mu, p) in self.terms.iter() {
            out.add_term(mu.clone(), p.map(&f));
        }
        out
    }
}

impl ExpPoly<Dual<Rational>> {
    /// Split `p + q·ε` into `(p, q)`.
    pub fn split_dual(&self) -> (ExpPoly, ExpPoly) {
        (self.map(|c| c.re.clone()), self.map(|c| c.eps.clone()))
    }
}

impl ExpPoly<Rational> {
    /// Truncated Laurent expansion around `t = 0`, up to and including
    /// `t^order`. Exact.
    pub fn series(&self, order: i32) -> LaurentPoly {
        let Some(lowest) = self.min_exponent() else {
            return LaurentPoly::zero();
        };
        let mut out = LaurentPoly::zero();
        for n in lowest..=order {
            let mut acc = Rational::new();
            for (mu, p) in self.terms.iter() {
                for (e, a) in p.terms() {
                    if e > n {
                        break;
                    }
                    let k = (n - e) as u32;
                    let mut c = rational_pow(mu, k as i32);
                    c /= Integer::from(Integer::factorial(k));
                    acc += c * a;
                }
            }
            out.add_term(n, acc);
        }
        out
    }

    /// `lim_{t→0} p(t)`, or `PoleAtZero` if a negative power survives.
    pub fn limit_at_zero(&self) -> Result<Rational> {
        let s = self.series(0);
        if let Some((e, c)) = s.terms().find(|(e, _)| *e < 0) {
            return Err(Error::PoleAtZero {
                exponent: e,
                coefficient: c.clone(),
            });
        }
        Ok(s.coeff(0))
    }

    /// Evaluate at a rational point. Guard bits are raised until the
    /// cancellation between terms is covered, so the result carries
    /// `precision_bits` of accuracy. At `t = 0` the limit is returned when
    /// the singularity is removable.
    pub fn eval(&self, t: &Rational, precision_bits: u32) -> Result<Real> {
        if t.cmp0() == std::cmp::Ordering::Equal {
            let v = self.limit_at_zero().map_err(|_| Error::EvalAtPole)?;
            return Ok(Real::from_rational(&v, precision_bits));
        }
        if self.is_zero() {
            return Ok(Real::zero(precision_bits));
        }
        let mut guard = 64u32;
        loop {
            let work = precision_bits + guard;
            let tr = Real::from_rational(t, work);
            let (sum, largest) = self.eval_terms(&tr);
            let lost = match (largest.exponent(), sum.exponent()) {
                (Some(big), Some(small)) => (big - small).max(0) as u32,
                (Some(_), None) => u32::MAX,
                _ => 0,
            };
            if lost.saturating_add(16) <= guard || guard > 64 * precision_bits {
                return Ok(sum.with_prec(precision_bits));
            }
            guard = guard.saturating_mul(2).max(lost.saturating_add(32));
        }
    }

    /// Plain evaluation at the precision of `t`, no guard management.
    pub fn eval_real(&self, t: &Real) -> Real {
        self.eval_terms(t).0
    }

    fn eval_terms(&self, t: &Real) -> (Real, Real) {
        let prec = t.prec();
        let mut sum = Real::zero(prec);
        let mut largest = Real::zero(prec);
        for (mu, p) in self.terms.iter() {
            let e = (&Real::from_rational(mu, prec) * t).exp();
            for (k, a) in p.terms() {
                let tk = real_powi(t, k);
                let v = &(&tk * &e) * &Real::from_rational(a, prec);
                largest = largest.max(v.abs());
                sum = &sum + &v;
            }
        }
        (sum, largest)
    }
}

fn real_powi(t: &Real, k: i32) -> Real {
    let mut acc = Real::one(t.prec());
    for _ in 0..k.unsigned_abs() {
        acc = &acc * t;
    }
    if k < 0 {
        &Real::one(t.prec()) / &acc
    } else {
        acc
    }
}

impl<'a, C: Scalar> Add<&'a ExpPoly<C>> for &'a ExpPoly<C> {
    type Output = ExpPoly<C>;

    fn add(self, rhs: &'a ExpPoly<C>) -> ExpPoly<C> {
        let mut out = self.clone();
        for (mu, p) in rhs.terms.iter() {
            out.add_term(mu.clone(), p.clone());
        }
        out
    }
}

impl<'a, C: Scalar> Sub<&'a ExpPoly<C>> for &'a ExpPoly<C> {
    type Output = ExpPoly<C>;

    fn sub(self, rhs: &'a ExpPoly<C>) -> ExpPoly<C> {
        let mut out = self.clone();
        for (mu, p) in rhs.terms.iter() {
            out.add_term(mu.clone(), -p.clone());
        }
        out
    }
}

impl<'a, C: Scalar> Mul<&'a ExpPoly<C>> for &'a ExpPoly<C> {
    type Output = ExpPoly<C>;

    fn mul(self, rhs: &'a ExpPoly<C>) -> ExpPoly<C> {
        let mut out = ExpPoly::zero();
        for (mu1, p1) in self.terms.iter() {
            for (mu2, p2) in rhs.terms.iter() {
                out.add_term(Rational::from(mu1 + mu2), p1 * p2);
            }
        }
        out
    }
}

impl<C: Scalar> Neg for ExpPoly<C> {
    type Output = ExpPoly<C>;

    fn neg(self) -> ExpPoly<C> {
        ExpPoly {
            terms: self.terms.into_iter().map(|(mu, p)| (mu, -p)).collect(),
        }
    }
}

forward_owned!(ExpPoly, Add, add);
forward_owned!(ExpPoly, Sub, sub);
forward_owned!(ExpPoly, Mul, mul);
