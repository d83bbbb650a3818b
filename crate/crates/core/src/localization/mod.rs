//! Equivariant integrals `I_{0,l}` over projective space by localization.

mod numeric;
mod symbolic;

pub use numeric::dd_numeric;
pub use symbolic::{divided_differences_exp, i0l_family, i0l_symbolic};
pub(crate) use symbolic::i0l_weight;

use rug::Rational;

use crate::exactalg::{Numeric, Real};

/// `I_{0,l}` at `t = 1` for `l = 0..=max_l`, with the eigenvalues as nodes.
pub fn i0l_numeric<T: Numeric>(m: i64, nodes: &[T], max_l: usize, precision_bits: u32) -> Vec<T> {
    let n = nodes.len() - 1;
    let dd = dd_numeric(nodes, &Rational::from(m), max_l, precision_bits);
    let prec = dd[0].value().prec();
    (0..=max_l)
        .map(|l| {
            dd.iter().enumerate().take(l + 1).fold(T::from_real(Real::zero(prec)), |acc, (j, d)| {
                acc + d.scale(&Real::from_rational(&i0l_weight(n, m, l, j), prec))
            })
        })
        .collect()
}
