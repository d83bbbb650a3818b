//! The admissible torus of diagonal fields and the maximizer of `F` on it.

use nalgebra::{DMatrix, DVector};
use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::exactalg::{Dual, Real, Scalar};
use crate::futaki::f_numeric_values;
use crate::geometry::{derive_weights, CompleteIntersection, DiagonalField};

/// Basis of `{λ : Σλ = 0, ⟨a − a′, λ⟩ = 0 within every support}`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdmissibleTorus {
    basis: Vec<Vec<Rational>>,
}

impl AdmissibleTorus {
    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis vectors as fields on `ci`.
    pub fn fields(&self, ci: &CompleteIntersection) -> Result<Vec<DiagonalField>> {
        self.basis
            .iter()
            .map(|v| DiagonalField::new(ci, v.clone(), None))
            .collect()
    }
}

/// Null space of `rows` by reduced row echelon form, one vector per free
/// column, scaled to primitive integers.
fn null_space(mut rows: Vec<Vec<Rational>>, width: usize) -> Vec<Vec<Rational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| !Scalar::is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::from(1) / rows[r][col].clone();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !Scalar::is_zero(&rows[i][col]) {
                let f = rows[i][col].clone();
                for c in 0..width {
                    let sub = Rational::from(&f * &rows[r][c]);
                    rows[i][c] -= sub;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    (0..width)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::new(); width];
            v[free] = Rational::from(1);
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[i][free].clone();
            }
            primitive(v)
        })
        .collect()
}

fn primitive(v: Vec<Rational>) -> Vec<Rational> {
    let lcm = v.iter().fold(Integer::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<Integer> = v.iter().map(|x| Integer::from(x.numer() * &lcm) / x.denom()).collect();
    let gcd = ints.iter().fold(Integer::new(), |acc, x| acc.gcd(x));
    ints.into_iter()
        .map(|x| Rational::from(if gcd == 0 { x } else { x / &gcd }))
        .collect()
}

/// Exact rational basis of the admissible torus of `ci`.
pub fn admissible_torus(ci: &CompleteIntersection) -> Result<AdmissibleTorus> {
    let supports = ci.supports().ok_or(Error::MissingSupports)?;
    let width = ci.ambient_dim() + 1;
    let mut rows = vec![vec![Rational::from(1); width]];
    for support in supports {
        let first = &support[0];
        for other in &support[1..] {
            rows.push(
                other
                    .iter()
                    .zip(first)
                    .map(|(&a, &b)| Rational::from(a as i64 - b as i64))
                    .collect(),
            );
        }
    }
    Ok(AdmissibleTorus {
        basis: null_space(rows, width),
    })
}

/// A critical point of `F` on the torus.
#[derive(Clone, Debug)]
pub struct SolitonPoint {
    /// Coordinates in the basis used by the solver.
    pub coefficients: Vec<Real>,
    pub eigenvalues: Vec<Real>,
    pub weights: Vec<Real>,
    /// `Fut_{λ*}(W_j)` for each basis direction.
    pub gradient: Vec<Real>,
    pub gradient_norm: f64,
    pub value: Real,
    pub iterations: usize,
}

#[derive(Clone, Debug)]
pub enum SolitonOutcome {
    /// Only `V = 0` is admissible.
    Trivial,
    Found(SolitonPoint),
}

struct Objective<'a> {
    ci: &'a CompleteIntersection,
    eigen: Vec<Vec<Real>>,
    weights: Vec<Vec<Real>>,
    prec: u32,
}

impl<'a> Objective<'a> {
    fn new(ci: &'a CompleteIntersection, basis: &[DiagonalField], prec: u32) -> Self {
        let conv = |v: &[Rational]| v.iter().map(|x| Real::from_rational(x, prec)).collect();
        Objective {
            ci,
            eigen: basis.iter().map(|w| conv(w.eigenvalues())).collect(),
            weights: basis.iter().map(|w| conv(w.weights())).collect(),
            prec,
        }
    }

    fn combine(&self, c: &[Real], parts: &[Vec<Real>]) -> Vec<Real> {
        let len = parts.first().map_or(0, Vec::len);
        (0..len)
            .map(|i| {
                c.iter()
                    .zip(parts)
                    .fold(Real::zero(self.prec), |acc, (cj, p)| &acc + &(cj * &p[i]))
            })
            .collect()
    }

    fn point(&self, c: &[Real]) -> (Vec<Real>, Vec<Real>) {
        (self.combine(c, &self.eigen), self.combine(c, &self.weights))
    }

    fn value(&self, c: &[Real]) -> Real {
        let (e, w) = self.point(c);
        f_numeric_values(self.ci, &e, &w, self.prec).with_prec(self.prec)
    }

    fn gradient(&self, c: &[Real]) -> Vec<Real> {
        let (e, w) = self.point(c);
        (0..self.eigen.len())
            .map(|j| {
                let dual = |re: &[Real], eps: &[Real]| -> Vec<Dual<Real>> {
                    re.iter().zip(eps).map(|(a, b)| Dual::new(a.clone(), b.clone())).collect()
                };
                f_numeric_values(self.ci, &dual(&e, &self.eigen[j]), &dual(&w, &self.weights[j]), self.prec)
                    .eps
                    .with_prec(self.prec)
            })
            .collect()
    }

    /// Central differences of the gradient, Richardson-refined.
    fn hessian(&self, c: &[Real]) -> DMatrix<f64> {
        let r = c.len();
        let h = 1e-5;
        let mut out = DMatrix::zeros(r, r);
        for j in 0..r {
            let diff = |step: f64| -> Vec<f64> {
                let shifted = |sign: f64| {
                    let mut cc = c.to_vec();
                    cc[j] = &cc[j] + &Real::from_f64(sign * step, self.prec);
                    self.gradient(&cc)
                };
                let plus = shifted(1.0);
                let minus = shifted(-1.0);
                plus.iter()
                    .zip(&minus)
                    .map(|(a, b)| (a - b).to_f64() / (2.0 * step))
                    .collect()
            };
            let coarse = diff(h);
            let fine = diff(h / 2.0);
            for i in 0..r {
                out[(i, j)] = (4.0 * fine[i] - coarse[i]) / 3.0;
            }
        }
        (&out + out.transpose()) * 0.5
    }
}

fn sup_norm(v: &[Real]) -> f64 {
    v.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
}

/// Newton ascent with Armijo backtracking for `c ↦ F(Σ c_j W_j)`, from `c = 0`.
pub fn find_soliton_on(
    ci: &CompleteIntersection,
    basis: &[DiagonalField],
    tol: f64,
    max_iter: usize,
    precision_bits: u32,
) -> Result<SolitonOutcome> {
    if basis.is_empty() {
        return Ok(SolitonOutcome::Trivial);
    }
    let prec = precision_bits;
    let obj = Objective::new(ci, basis, prec);
    let r = basis.len();
    let mut c = vec![Real::zero(prec); r];
    let mut f = obj.value(&c);
    let mut g = obj.gradient(&c);
    let mut iterations = 0;
    while sup_norm(&g) >= tol {
        if iterations == max_iter {
            return Err(Error::NoConvergence {
                iterations,
                gradient_norm: sup_norm(&g),
                last: c.iter().map(Real::to_f64).collect(),
            });
        }
        iterations += 1;
        let gv = DVector::from_iterator(r, g.iter().map(Real::to_f64));
        let neg_h = -obj.hessian(&c);
        let step = match neg_h.clone().cholesky() {
            Some(chol) => chol.solve(&gv),
            None => gv.clone(),
        };
        let slope = gv.dot(&step);
        let mut alpha = 1.0;
        loop {
            let trial: Vec<Real> = c
                .iter()
                .zip(step.iter())
                .map(|(x, s)| x + &Real::from_f64(alpha * s, prec))
                .collect();
            let ft = obj.value(&trial);
            if (&ft - &f).to_f64() >= 1e-4 * alpha * slope || alpha < 1e-12 {
                c = trial;
                f = ft;
                break;
            }
            alpha *= 0.5;
        }
        g = obj.gradient(&c);
    }
    let (eigenvalues, weights) = obj.point(&c);
    Ok(SolitonOutcome::Found(SolitonPoint {
        coefficients: c,
        eigenvalues,
        weights,
        gradient_norm: sup_norm(&g),
        gradient: g,
        value: f,
        iterations,
    }))
}

/// Maximize `F` over the admissible torus of `ci`.
pub fn find_soliton(ci: &CompleteIntersection, tol: f64, max_iter: usize, precision_bits: u32) -> Result<SolitonOutcome> {
    let torus = admissible_torus(ci)?;
    find_soliton_on(ci, &torus.fields(ci)?, tol, max_iter, precision_bits)
}

/// `Fut_{λ*}(W_j)` for each torus direction.
#[derive(Clone, Debug)]
pub struct CriticalReport {
    pub derivatives: Vec<Real>,
    pub tol: f64,
}

impl CriticalReport {
    pub fn passes(&self) -> bool {
        sup_norm(&self.derivatives) < self.tol
    }
}

/// Check that `λ*` (real, in the admissible span) is critical for `F`.
pub fn check_critical(ci: &CompleteIntersection, eigenvalues: &[Real], tol: f64, precision_bits: u32) -> Result<CriticalReport> {
    let torus = admissible_torus(ci)?;
    let fields = torus.fields(ci)?;
    let supports = ci.supports().ok_or(Error::MissingSupports)?;
    let weights: Vec<Real> = supports
        .iter()
        .map(|s| {
            s[0].iter()
                .zip(eigenvalues)
                .fold(Real::zero(precision_bits), |acc, (&a, l)| &acc + &(l * &Real::from_i64(a as i64, precision_bits)))
        })
        .collect();
    let derivatives = fields
        .iter()
        .map(|w| {
            let conv = |v: &[Rational]| -> Vec<Real> { v.iter().map(|x| Real::from_rational(x, precision_bits)).collect() };
            let dual = |re: &[Real], eps: Vec<Real>| -> Vec<Dual<Real>> {
                re.iter().cloned().zip(eps).map(|(a, b)| Dual::new(a, b)).collect()
            };
            f_numeric_values(
                ci,
                &dual(eigenvalues, conv(w.eigenvalues())),
                &dual(&weights, conv(w.weights())),
                precision_bits,
            )
            .eps
            .with_prec(precision_bits)
        })
        .collect();
    Ok(CriticalReport { derivatives, tol })
}

/// Every basis vector must give consistent weights.
pub fn torus_is_consistent(ci: &CompleteIntersection, torus: &AdmissibleTorus) -> bool {
    torus.basis().iter().all(|v| derive_weights(ci, v).is_ok())
}
