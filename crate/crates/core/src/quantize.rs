//! Finite-`k` quantities from the Koszul resolution: `N_k` and `F_k(V)`.

use std::ops::{Add, Mul};

use rug::{Integer, Rational};

use crate::error::Result;
use crate::exactalg::Real;
use crate::futaki::f_function;
use crate::geometry::{CompleteIntersection, DiagonalField};

/// Subsets of `{0..s}` as bitmasks with their sign and degree.
fn koszul_terms(degrees: &[u32]) -> impl Iterator<Item = (u32, bool, i64)> + '_ {
    (0u32..(1 << degrees.len())).map(move |mask| {
        let d: i64 = degrees
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &d)| d as i64)
            .sum();
        (mask, mask.count_ones() % 2 == 1, d)
    })
}

/// `C(n, N)` with `C(n, N) = 0` for `n < N`.
fn binomial_or_zero(n: i64, big_n: usize) -> Integer {
    if n < big_n as i64 {
        Integer::new()
    } else {
        Integer::from(Integer::binomial_u(n as u32, big_n as u32))
    }
}

/// `N_k = Σ_S (−1)^{|S|} C(N + km − d_S, N)`.
pub fn nk(ci: &CompleteIntersection, k: u32) -> Integer {
    let n = ci.ambient_dim();
    let top = n as i64 + k as i64 * ci.fano_index();
    koszul_terms(ci.degrees()).fold(Integer::new(), |acc, (_, odd, d)| {
        let b = binomial_or_zero(top - d, n);
        if odd {
            acc - b
        } else {
            acc + b
        }
    })
}

/// `h_0..=h_d` of the values `x` by `h_d = (1/d) Σ_{j=1..d} p_j h_{d−j}`.
pub fn complete_homogeneous<T, F>(x: &[T], d: usize, one: T, div: F) -> Vec<T>
where
    T: Clone + Add<Output = T> + Mul<Output = T>,
    F: Fn(T, usize) -> T,
{
    let mut powers: Vec<T> = x.to_vec();
    let mut p = Vec::with_capacity(d);
    for j in 0..d {
        if j > 0 {
            powers = powers.iter().zip(x).map(|(a, b)| a.clone() * b.clone()).collect();
        }
        let mut sum = powers[0].clone();
        for v in &powers[1..] {
            sum = sum + v.clone();
        }
        p.push(sum);
    }
    let mut h = vec![one];
    for k in 1..=d {
        let mut acc = p[0].clone() * h[k - 1].clone();
        for j in 2..=k {
            acc = acc + p[j - 1].clone() * h[k - j].clone();
        }
        h.push(div(acc, k));
    }
    h
}

/// `Σ_{|a|=d} e^{⟨a,λ⟩u}`; zero for `d < 0`.
pub fn character_trace(eigenvalues: &[Rational], d: i64, u: &Rational, precision_bits: u32) -> Real {
    character_traces(eigenvalues, d, u, precision_bits)
        .pop()
        .unwrap_or_else(|| Real::zero(precision_bits))
}

/// `h_0..=h_d` at `x_i = e^{λ_i u}`; empty for `d < 0`.
fn character_traces(eigenvalues: &[Rational], d: i64, u: &Rational, precision_bits: u32) -> Vec<Real> {
    if d < 0 {
        return Vec::new();
    }
    let x: Vec<Real> = eigenvalues
        .iter()
        .map(|l| Real::from_rational(&Rational::from(l * u), precision_bits).exp())
        .collect();
    complete_homogeneous(&x, d as usize, Real::one(precision_bits), |v, k| {
        &v / &Real::from_i64(k as i64, precision_bits)
    })
}

/// `F_k(V) = −k Σ_S (−1)^{|S|} e^{(kΣa + Σ_{p∈S} a_p) t/k} h_{km−d_S}(e^{λ t/k})`.
pub fn fk(ci: &CompleteIntersection, field: &DiagonalField, k: u32, t: &Rational, precision_bits: u32) -> Real {
    let work = precision_bits + 64;
    let kq = Rational::from(k);
    let u = Rational::from(t / &kq);
    let top = k as i64 * ci.fano_index();
    let h = character_traces(field.eigenvalues(), top, &u, work);
    let total = field.weight_sum();
    let mut acc = Real::zero(work);
    for (mask, odd, d) in koszul_terms(ci.degrees()) {
        let deg = top - d;
        if deg < 0 {
            continue;
        }
        let shift: Rational = field
            .weights()
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, a)| a.clone())
            .sum();
        let exponent = (Rational::from(&kq * &total) + shift) * &u;
        let term = &Real::from_rational(&exponent, work).exp() * &h[deg as usize];
        acc = if odd { &acc - &term } else { &acc + &term };
    }
    (&acc * &Real::from_i64(-(k as i64), work)).with_prec(precision_bits)
}

/// One row of a convergence table.
#[derive(Clone, Debug)]
pub struct ConvergenceRow {
    pub k: u32,
    pub nk: Integer,
    pub fk: Real,
    /// `F_k / (k N_k)`.
    pub normalized: Real,
    /// `|F_k/(k N_k) − F(V)(t)|`.
    pub error: Real,
}

/// `F_k/(kN_k)` against the exact `F(V)` at `t` for each `k`.
pub fn convergence_report(
    ci: &CompleteIntersection,
    field: &DiagonalField,
    t: &Rational,
    ks: &[u32],
    precision_bits: u32,
) -> Result<(Real, Vec<ConvergenceRow>)> {
    let reference = f_function(ci, field).eval(t, precision_bits)?;
    let rows = ks
        .iter()
        .map(|&k| {
            let n = nk(ci, k);
            let f = fk(ci, field, k, t, precision_bits);
            let denom = Real::from_rational(&Rational::from(n.clone() * k), precision_bits);
            let normalized = &f / &denom;
            let error = (&normalized - &reference).abs();
            ConvergenceRow {
                k,
                nk: n,
                fk: f,
                normalized,
                error,
            }
        })
        .collect();
    Ok((reference, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use crate::geometry::examples::*;

    #[test]
    fn section_counts() {
        assert_eq!(nk(&CompleteIntersection::projective_space(2).unwrap(), 1), 10);
        assert_eq!(nk(&cubic_surface(), 1), 4);
        assert_eq!(nk(&quadric_pair(), 1), 5);
    }

    #[test]
    fn trace_small_cases() {
        let lam = [Rational::from(1), Rational::from(-1)];
        assert_eq!(character_trace(&lam, 0, &rat(1, 3), 64).to_f64(), 1.0);
        assert_eq!(character_trace(&lam, -1, &rat(1, 3), 64).to_f64(), 0.0);
        let zero = vec![Rational::new(); 4];
        assert_eq!(character_trace(&zero, 5, &rat(1, 3), 64).to_f64(), 56.0);
    }

    #[test]
    fn newton_recurrence_on_two_and_a_half() {
        let h = complete_homogeneous(&[rat(2, 1), rat(1, 2)], 2, Rational::from(1), |v, k| v / Rational::from(k));
        assert_eq!(h[2], rat(21, 4));
    }
}
