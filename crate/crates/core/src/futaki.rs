//! The function `F(V)` of a diagonal field on a complete intersection, its
//! directional derivative `Fut_V(W)`, and a high-precision numeric path.

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::exactalg::{Dual, ExpPoly, LaurentPoly, Numeric, Real, Scalar};
use crate::geometry::{CompleteIntersection, DiagonalField};
use crate::localization::{i0l_family, i0l_numeric};

/// `Σ_{j+l≤s} c[j][l] ω^j θ^l` with coefficients polynomial in `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivMixedPoly<C: Scalar = Rational> {
    coeffs: Vec<Vec<LaurentPoly<C>>>,
}

impl<C: Scalar> EquivMixedPoly<C> {
    /// Total degree `s`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `c[j][l]`, zero outside `j + l ≤ s`.
    pub fn coeff(&self, j: usize, l: usize) -> LaurentPoly<C> {
        self.coeffs
            .get(j)
            .and_then(|row| row.get(l))
            .cloned()
            .unwrap_or_default()
    }
}

fn binomial(n: usize, k: usize) -> Rational {
    Rational::from(Integer::from(Integer::binomial_u(n as u32, k as u32)))
}

fn factorial(n: usize) -> Rational {
    Rational::from(Integer::from(Integer::factorial(n as u32)))
}

/// Exact expansion of `Π_{i≤k} (d_i ω + d_i θ − a_i t)` for the first `k`
/// factors, over any scalar type.
fn expand_prefix<S: Scalar>(degrees: &[u32], weights: &[S], k: usize) -> EquivMixedPoly<S> {
    let k = k.min(degrees.len());
    let mut e: Vec<LaurentPoly<S>> = vec![LaurentPoly::zero(); k + 1];
    e[0] = LaurentPoly::one();
    for i in 0..k {
        let d = Rational::from(degrees[i]);
        let gamma = LaurentPoly::monomial(-weights[i].clone(), 1);
        for p in (0..=i + 1).rev() {
            let mut v = &e[p] * &gamma;
            if p > 0 {
                v = &v + &e[p - 1].scale(&d);
            }
            e[p] = v;
        }
    }
    EquivMixedPoly {
        coeffs: (0..=k)
            .map(|j| (0..=k - j).map(|l| e[j + l].scale(&binomial(j + l, j))).collect())
            .collect(),
    }
}

/// `Π_{i=1..s}(d_i ω + d_i θ − a_i t)` collected by powers of `ω` and `θ`.
pub fn expand_integrand(ci: &CompleteIntersection, field: &DiagonalField) -> EquivMixedPoly {
    expand_prefix(ci.degrees(), field.weights(), ci.codim())
}

/// `I_{k,0} = ((N−k)!/m^{N−k}) ∫ Π_{i≤k}(d_i ω + d_i θ − α_i) e^{mθ} e^{mω}`
/// for `k = 0..=s`, through the integrand expansion.
pub fn ik0_family<S: Scalar>(ci: &CompleteIntersection, eigenvalues: &[S], weights: &[S]) -> Vec<ExpPoly<S>> {
    let n = ci.ambient_dim();
    let s = ci.codim();
    let m = ci.fano_index();
    let mq = Rational::from(m);
    let i0 = i0l_family(m, eigenvalues, s);
    (0..=s)
        .map(|k| {
            let poly = expand_prefix(ci.degrees(), weights, k);
            let mut acc = ExpPoly::zero();
            for j in 0..=k {
                for l in 0..=k - j {
                    let c = poly.coeff(j, l);
                    if c.is_zero() {
                        continue;
                    }
                    // ∫ ω^j θ^l e^{mθ} e^{mω} = m^{N−j−l}/(N−j)! · I_{0,l}
                    let w = crate::exactalg::rational_pow(&mq, (n - j - l) as i32) / factorial(n - j);
                    acc = &acc + &i0[l].mul_laurent(&c).scale(&w);
                }
            }
            let pre = factorial(n - k) / crate::exactalg::rational_pow(&mq, (n - k) as i32);
            acc.scale(&pre)
        })
        .collect()
}

fn f_from_ik0<S: Scalar>(ci: &CompleteIntersection, ik0: &ExpPoly<S>, weights: &[S]) -> ExpPoly<S> {
    let total = weights.iter().fold(S::zero(), |a, b| a + b.clone());
    let inv = Rational::from((Integer::from(-1), ci.degree_product()));
    (&ExpPoly::exp_linear(&total) * ik0).scale(&inv)
}

fn f_generic<S: Scalar>(ci: &CompleteIntersection, eigenvalues: &[S], weights: &[S]) -> ExpPoly<S> {
    let ik0 = ik0_family(ci, eigenvalues, weights).pop().unwrap_or_default();
    f_from_ik0(ci, &ik0, weights)
}

/// `F(V)` for `V = diag(λ_0 t, …, λ_N t)` as an exact exponential polynomial.
pub fn f_function(ci: &CompleteIntersection, field: &DiagonalField) -> ExpPoly {
    f_generic(ci, field.eigenvalues(), field.weights())
}

/// `I_{k,0}` for `k = 0..=s` built only from `I_{0,0}` by
/// `I_{k,0} = (d_k − m α_k/(N−k+1)) I_{k−1,0} + d_k/(N−k+1) · t dI_{k−1,0}/dt`.
pub fn ik0_recursive(ci: &CompleteIntersection, field: &DiagonalField) -> Vec<ExpPoly> {
    let n = ci.ambient_dim();
    let m = ci.fano_index();
    let mut out = vec![i0l_family(m, field.eigenvalues(), 0).remove(0)];
    for (k, (d, a)) in ci.degrees().iter().zip(field.weights()).enumerate() {
        let prev = &out[k];
        let denom = Rational::from(n - k);
        let d = Rational::from(*d);
        let mut factor = LaurentPoly::constant(d.clone());
        factor.add_term(1, -(Rational::from(m) * a) / &denom);
        let next = &prev.mul_laurent(&factor) + &prev.euler_derivative().scale(&(d / denom));
        out.push(next);
    }
    out
}

/// `F(V) = −e^{Σα} I_{s,0} / (d_1⋯d_s)` with `I_{s,0}` from the recursion.
pub fn f_function_recursive(ci: &CompleteIntersection, field: &DiagonalField) -> ExpPoly {
    let ik0 = ik0_recursive(ci, field).pop().unwrap_or_default();
    f_from_ik0(ci, &ik0, field.weights())
}

/// One step of the recursion checked against the expansion path.
#[derive(Clone, Debug)]
pub struct RecursionCheck {
    pub k: usize,
    pub lhs: ExpPoly,
    pub rhs: ExpPoly,
}

impl RecursionCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// For `k = 1..=s`: the expansion-path `I_{k,0}` against one recursion step
/// applied to the expansion-path `I_{k−1,0}` and `I_{k−1,1} = t dI_{k−1,0}/dt`.
pub fn verify_recursion(ci: &CompleteIntersection, field: &DiagonalField) -> Vec<RecursionCheck> {
    let n = ci.ambient_dim();
    let m = Rational::from(ci.fano_index());
    let ik0 = ik0_family(ci, field.eigenvalues(), field.weights());
    (1..=ci.codim())
        .map(|k| {
            let d = Rational::from(ci.degrees()[k - 1]);
            let a = &field.weights()[k - 1];
            let denom = Rational::from(n - k + 1);
            let mut factor = LaurentPoly::constant(d.clone());
            factor.add_term(1, -(m.clone() * a) / &denom);
            let prev = &ik0[k - 1];
            let rhs = &prev.mul_laurent(&factor) + &prev.euler_derivative().scale(&(d / denom));
            RecursionCheck {
                k,
                lhs: ik0[k].clone(),
                rhs,
            }
        })
        .collect()
}

/// Check that `W = (μ, β)` is an admissible direction on `ci`.
pub fn admissible_direction(
    ci: &CompleteIntersection,
    eigenvalues: Vec<Rational>,
    weights: Option<Vec<Rational>>,
) -> Result<DiagonalField> {
    DiagonalField::new(ci, eigenvalues, weights).map_err(|e| Error::InadmissibleDirection(e.to_string()))
}

/// `Fut_V(W) = d/ds F(V + sW)|_{s=0}` as an exact exponential polynomial.
pub fn fut_derivative(ci: &CompleteIntersection, field: &DiagonalField, direction: &DiagonalField) -> Result<ExpPoly> {
    let direction = admissible_direction(
        ci,
        direction.eigenvalues().to_vec(),
        Some(direction.weights().to_vec()),
    )?;
    let dual = |re: &[Rational], eps: &[Rational]| -> Vec<Dual<Rational>> {
        re.iter()
            .zip(eps)
            .map(|(a, b)| Dual::new(a.clone(), b.clone()))
            .collect()
    };
    let eig = dual(field.eigenvalues(), direction.eigenvalues());
    let wts = dual(field.weights(), direction.weights());
    Ok(f_generic(ci, &eig, &wts).split_dual().1)
}

/// `F` at `t = 1` for real eigenvalues and weights, through the bidiagonal
/// divided differences. Works for plain and dual reals.
pub fn f_numeric_values<T: Numeric>(
    ci: &CompleteIntersection,
    eigenvalues: &[T],
    weights: &[T],
    precision_bits: u32,
) -> T {
    let n = ci.ambient_dim();
    let s = ci.codim();
    let m = ci.fano_index();
    let work = precision_bits + 64;
    let i0 = i0l_numeric(m, eigenvalues, s, work);
    let zero = T::from_real(Real::zero(work));
    let one = T::from_real(Real::one(work));

    let mut e = vec![zero.clone(); s + 1];
    e[0] = one;
    for (i, (d, a)) in ci.degrees().iter().zip(weights).enumerate() {
        let d = Real::from_i64(*d as i64, work);
        for p in (0..=i + 1).rev() {
            let mut v = e[p].clone() * (-a.clone());
            if p > 0 {
                v = v + e[p - 1].scale(&d);
            }
            e[p] = v;
        }
    }

    let mq = Rational::from(m);
    let mut acc = zero.clone();
    for j in 0..=s {
        for l in 0..=s - j {
            let w = binomial(j + l, j) * crate::exactalg::rational_pow(&mq, (n - j - l) as i32) / factorial(n - j);
            acc = acc + (e[j + l].clone() * i0[l].clone()).scale(&Real::from_rational(&w, work));
        }
    }
    let total = weights.iter().fold(zero, |a, b| a + b.clone());
    let pre = -factorial(n - s) / crate::exactalg::rational_pow(&mq, (n - s) as i32)
        / Rational::from(ci.degree_product());
    (total.exp() * acc).scale(&Real::from_rational(&pre, work))
}

/// `F(V)` evaluated at `t`, numerically, with eigenvalues `λ_i t`.
pub fn f_numeric(ci: &CompleteIntersection, field: &DiagonalField, t: &Rational, precision_bits: u32) -> Real {
    let p = precision_bits + 64;
    let scaled = |v: &[Rational]| -> Vec<Real> {
        v.iter()
            .map(|x| Real::from_rational(&Rational::from(x * t), p))
            .collect()
    };
    f_numeric_values(ci, &scaled(field.eigenvalues()), &scaled(field.weights()), precision_bits)
        .with_prec(precision_bits)
}

/// `Fut_V(W)` evaluated at `t`, numerically, by dual reals.
pub fn fut_numeric(
    ci: &CompleteIntersection,
    field: &DiagonalField,
    direction: &DiagonalField,
    t: &Rational,
    precision_bits: u32,
) -> Result<Real> {
    let direction = admissible_direction(
        ci,
        direction.eigenvalues().to_vec(),
        Some(direction.weights().to_vec()),
    )?;
    let p = precision_bits + 64;
    let dual = |re: &[Rational], eps: &[Rational]| -> Vec<Dual<Real>> {
        re.iter()
            .zip(eps)
            .map(|(a, b)| {
                Dual::new(
                    Real::from_rational(&Rational::from(a * t), p),
                    Real::from_rational(&Rational::from(b * t), p),
                )
            })
            .collect()
    };
    let eig = dual(field.eigenvalues(), direction.eigenvalues());
    let wts = dual(field.weights(), direction.weights());
    Ok(f_numeric_values(ci, &eig, &wts, precision_bits).eps.with_prec(precision_bits))
}
