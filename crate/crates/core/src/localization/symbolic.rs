//! Exact divided differences `DD(x^j e^{mtx}; r_0..r_N)` as exponential
//! polynomials in `t`, by local series expansion at each distinct node.

use std::collections::BTreeMap;

use rug::{Integer, Rational};

use crate::exactalg::{rational_pow, ExpPoly, LaurentPoly, Scalar};

/// Truncated power series `Σ_{k<len} a_k u^k`.
fn series_mul<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let len = a.len().min(b.len());
    (0..len)
        .map(|k| {
            (0..=k).fold(S::zero(), |acc, i| acc + a[i].clone() * b[k - i].clone())
        })
        .collect()
}

/// `(u + δ)^{-1} = Σ_k (−1)^k δ^{−k−1} u^k`, truncated to `len` terms.
fn reciprocal_series<S: Scalar>(delta: &S, len: usize) -> Vec<S> {
    let inv = delta.inv();
    let mut out = Vec::with_capacity(len);
    let mut c = inv.clone();
    for _ in 0..len {
        out.push(c.clone());
        c = -(c * inv.clone());
    }
    out
}

/// `Σ_k η^k w^k`, stopping once `η^k` vanishes (η nilpotent).
fn geometric_nilpotent<S: Scalar>(eta: &S) -> Vec<S> {
    let mut out = vec![S::one()];
    let mut p = S::one();
    loop {
        p = p * eta.clone();
        if p.is_zero() {
            return out;
        }
        out.push(p.clone());
    }
}

fn poly_mul<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let mut out = vec![S::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

/// Divided differences `DD(x^j e^{m t x}; nodes)` for `j = 0..=max_power`.
///
/// Nodes are grouped by real part. A group `r` of size `μ` whose members
/// differ from `r` by nilpotent offsets `η_i` contributes the residue at
/// `x = r` of `x^j e^{mtx} / Π(x − x_p)`, where the group's own factor
/// `Π_i (u − η_i)^{-1} = u^{-μ} Π_i Σ_k η_i^k u^{-k}` is expanded exactly.
/// The result has frequency `m·r` and a polynomial coefficient in `t`.
pub fn divided_differences_exp<S: Scalar>(nodes: &[S], m: &Rational, max_power: usize) -> Vec<ExpPoly<S>> {
    let mut clusters: BTreeMap<Rational, Vec<S>> = BTreeMap::new();
    for x in nodes {
        clusters.entry(x.real_part()).or_default().push(x.nilpotent_part());
    }

    let mut out = vec![ExpPoly::zero(); max_power + 1];
    for (r0, etas) in clusters.iter() {
        let mu = etas.len();
        let q = etas
            .iter()
            .fold(vec![S::one()], |acc, eta| poly_mul(&acc, &geometric_nilpotent(eta)));
        let len = mu + q.len() - 1;

        let centre = S::from_rational(r0.clone());
        let mut h = vec![S::zero(); len];
        h[0] = S::one();
        for x in nodes.iter().filter(|x| &x.real_part() != r0) {
            let delta = centre.clone() - x.clone();
            h = series_mul(&h, &reciprocal_series(&delta, len));
        }

        // e^{mtu} = Σ_k (m^k/k!) t^k u^k
        let mut exp_coeffs = Vec::with_capacity(len);
        let mut c = Rational::from(1);
        for k in 0..len {
            exp_coeffs.push(c.clone());
            c *= m;
            c /= Integer::from(k + 1);
        }

        let frequency = Rational::from(m * r0);
        for (j, slot) in out.iter_mut().enumerate() {
            if j > 0 {
                // h ← (r0 + u)·h
                let mut next = vec![S::zero(); len];
                for k in 0..len {
                    next[k] = h[k].scale(r0);
                    if k > 0 {
                        next[k] = next[k].clone() + h[k - 1].clone();
                    }
                }
                h = next;
            }
            let mut coeff = LaurentPoly::zero();
            for (qi, qc) in q.iter().enumerate() {
                let top = mu - 1 + qi;
                for k in 0..=top {
                    let term = qc.clone() * h[top - k].clone();
                    coeff.add_term(k as i32, term.scale(&exp_coeffs[k]));
                }
            }
            slot.add_term(frequency.clone(), coeff);
        }
    }
    out
}

/// Coefficient of `DD(y^j e^{my})` in `I_{0,l}`:
/// `N!·C(l,j)·(−1)^{l−j}·N(N+1)⋯(N+l−j−1)·m^{j−N}`.
///
/// Comes from `I_{0,l} = m^l G^{(l)}(m)` with `G(s) = N!·s^{−N}·DD(e^{sy})`.
pub(crate) fn i0l_weight(n: usize, m: i64, l: usize, j: usize) -> Rational {
    let mut c = Rational::from(Integer::from(Integer::factorial(n as u32)));
    c *= Integer::from(Integer::binomial_u(l as u32, j as u32));
    let mut rising = Integer::from(1);
    for i in 0..(l - j) {
        rising *= (n + i) as u64;
    }
    c *= rising;
    if (l - j) % 2 == 1 {
        c = -c;
    }
    let mp = Rational::from(m);
    c * rational_pow(&mp, j as i32 - n as i32)
}

/// `I_{0,l}` for `l = 0..=max_l`, with eigenvalues `λ_i = r_i t`.
pub fn i0l_family<S: Scalar>(m: i64, nodes: &[S], max_l: usize) -> Vec<ExpPoly<S>> {
    let n = nodes.len() - 1;
    let dd = divided_differences_exp(nodes, &Rational::from(m), max_l);
    (0..=max_l)
        .map(|l| {
            let mut acc = ExpPoly::zero();
            for (j, ddj) in dd.iter().enumerate().take(l + 1) {
                let w = i0l_weight(n, m, l, j);
                acc = &acc + &ddj.shift_t(j as i32 - n as i32).scale(&w);
            }
            acc
        })
        .collect()
}

/// `I_{0,l} = m^l ∫_{CP^N} θ^l e^{mθ} ω^N` for `V = diag(r_0 t, …, r_N t)`;
/// repeated eigenvalues are allowed.
pub fn i0l_symbolic(n: usize, m: i64, eigenvalues: &[Rational], l: usize) -> ExpPoly {
    assert_eq!(eigenvalues.len(), n + 1, "need N+1 eigenvalues");
    i0l_family(m, eigenvalues, l).pop().unwrap_or_default()
}
