//! Divided differences through the bidiagonal node matrix.
//!
//! For `Z` upper bidiagonal with the nodes on the diagonal and ones above
//! it, `f(Z)[0][N] = DD(f; x_0..x_N)` for any entire `f`. The exponential is
//! formed by scaling and squaring; all entries of `exp(Z)` are divided
//! differences of `e^x` and hence positive, so squaring does not cancel.

use rug::Rational;

use crate::exactalg::{Numeric, Real};

type Matrix<T> = Vec<Vec<Option<T>>>;

/// Upper-triangular product; `None` marks structural zeros.
fn upper_mul<T: Numeric>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let n = a.len();
    let mut out: Matrix<T> = vec![vec![None; n]; n];
    for i in 0..n {
        for j in i..n {
            let mut acc: Option<T> = None;
            for k in i..=j {
                if let (Some(x), Some(y)) = (&a[i][k], &b[k][j]) {
                    let p = x.clone() * y.clone();
                    acc = Some(match acc {
                        Some(s) => s + p,
                        None => p,
                    });
                }
            }
            out[i][j] = acc;
        }
    }
    out
}

/// Smallest `K` with `2·(1/2)^{K+1}/(K+1)! ≤ 2^{-bits}`: Taylor truncation
/// bound for `exp(B)` when `‖B‖ ≤ 1/2`.
fn taylor_degree(bits: u32) -> usize {
    let target = -(bits as f64);
    let mut log2_term = 1.0; // log2 of 2·(1/2)^{K+1}/(K+1)!
    let mut k = 0usize;
    loop {
        log2_term += -1.0 - ((k + 1) as f64).log2();
        if log2_term <= target {
            return k;
        }
        k += 1;
    }
}

/// `DD(y^j e^{m y}; nodes)` for `j = 0..=max_power`, at `precision_bits`
/// of working precision (plus internal guard bits).
pub fn dd_numeric<T: Numeric>(nodes: &[T], m: &Rational, max_power: usize, precision_bits: u32) -> Vec<T> {
    let n = nodes.len();
    assert!(n >= 1, "need at least one node");
    let mf = m.to_f64().abs();
    let norm = nodes
        .iter()
        .map(|x| mf * x.value().to_f64().abs() + mf)
        .fold(0.0f64, f64::max);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let work = precision_bits + 32 + 2 * squarings as u32;
    let one = T::from_real(Real::one(work));
    let mreal = Real::from_rational(m, work);

    // B = m·Z / 2^σ
    let mut b: Matrix<T> = vec![vec![None; n]; n];
    for i in 0..n {
        b[i][i] = Some(nodes[i].scale(&mreal).mul_pow2(-squarings));
        if i + 1 < n {
            b[i][i + 1] = Some(T::from_real(mreal.mul_pow2(-squarings)));
        }
    }

    // Horner: E = I + B/K (I + B/(K-1) (…))
    let degree = taylor_degree(work).max(1);
    let identity: Matrix<T> = (0..n)
        .map(|i| (0..n).map(|j| (i == j).then(|| one.clone())).collect())
        .collect();
    let mut e = identity.clone();
    for k in (1..=degree).rev() {
        let inv_k = Real::from_rational(&Rational::from((1, k as i64)), work);
        let be = upper_mul(&b, &e);
        for i in 0..n {
            for j in i..n {
                let scaled = be[i][j].as_ref().map(|v| v.scale(&inv_k));
                e[i][j] = match (identity[i][j].clone(), scaled) {
                    (Some(x), Some(y)) => Some(x + y),
                    (Some(x), None) => Some(x),
                    (None, y) => y,
                };
            }
        }
    }
    for _ in 0..squarings {
        e = upper_mul(&e, &e);
    }

    // row_j = e_0^T Z^j; DD_j = row_j · E[:, N]
    let zero = T::from_real(Real::zero(work));
    let mut row: Vec<T> = (0..n).map(|k| if k == 0 { one.clone() } else { zero.clone() }).collect();
    let mut out = Vec::with_capacity(max_power + 1);
    for j in 0..=max_power {
        if j > 0 {
            let mut next = Vec::with_capacity(n);
            for k in 0..n {
                let mut v = row[k].clone() * nodes[k].clone();
                if k > 0 {
                    v = v + row[k - 1].clone();
                }
                next.push(v);
            }
            row = next;
        }
        let mut acc = zero.clone();
        for k in 0..n {
            if let Some(x) = &e[k][n - 1] {
                acc = acc + row[k].clone() * x.clone();
            }
        }
        out.push(acc);
    }
    out
}
