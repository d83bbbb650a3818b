//! Fano complete intersections `M = {F_1 = … = F_s = 0} ⊂ CP^N` and the
//! diagonal vector fields acting on them.
//!
//! Only the monomial supports of the `F_i` are recorded. Whether they cut
//! out a variety of the right dimension with mild singularities is the
//! caller's responsibility.

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::exactalg::Scalar;

/// Exponent vectors of the monomials of one defining polynomial.
pub type Support = Vec<Vec<u32>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteIntersection {
    ambient_dim: usize,
    degrees: Vec<u32>,
    supports: Option<Vec<Support>>,
}

impl CompleteIntersection {
    /// Build and validate the shape: `N ≥ 1`, `d_i ≥ 1`, Fano index `m ≥ 1`,
    /// and well-formed supports when given.
    pub fn new(ambient_dim: usize, degrees: Vec<u32>, supports: Option<Vec<Support>>) -> Result<Self> {
        if ambient_dim < 1 {
            return Err(Error::InvalidDimension(ambient_dim));
        }
        if let Some(i) = degrees.iter().position(|&d| d == 0) {
            return Err(Error::ZeroDegree { index: i + 1 });
        }
        let ci = CompleteIntersection {
            ambient_dim,
            degrees,
            supports,
        };
        let m = ci.fano_index();
        if m < 1 {
            return Err(Error::NotFano { m });
        }
        if let Some(supports) = &ci.supports {
            ci.check_supports(supports)?;
        }
        Ok(ci)
    }

    /// Projective space `CP^N` itself (`s = 0`).
    pub fn projective_space(ambient_dim: usize) -> Result<Self> {
        Self::new(ambient_dim, Vec::new(), Some(Vec::new()))
    }

    fn check_supports(&self, supports: &[Support]) -> Result<()> {
        if supports.len() != self.degrees.len() {
            return Err(Error::MalformedSupport {
                index: supports.len().min(self.degrees.len()) + 1,
                reason: format!(
                    "{} supports given for {} polynomials",
                    supports.len(),
                    self.degrees.len()
                ),
            });
        }
        for (i, (support, &d)) in supports.iter().zip(&self.degrees).enumerate() {
            if support.is_empty() {
                return Err(Error::MalformedSupport {
                    index: i + 1,
                    reason: "empty support".into(),
                });
            }
            for a in support {
                if a.len() != self.ambient_dim + 1 {
                    return Err(Error::MalformedSupport {
                        index: i + 1,
                        reason: format!("exponent vector {:?} has length {}, expected {}", a, a.len(), self.ambient_dim + 1),
                    });
                }
                let total: u64 = a.iter().map(|&x| x as u64).sum();
                if total != d as u64 {
                    return Err(Error::MalformedSupport {
                        index: i + 1,
                        reason: format!("monomial {:?} has degree {}, expected {}", a, total, d),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Codimension `s`.
    pub fn codim(&self) -> usize {
        self.degrees.len()
    }

    /// Complex dimension `N − s` of `M`.
    pub fn dim(&self) -> usize {
        self.ambient_dim - self.codim().min(self.ambient_dim)
    }

    pub fn supports(&self) -> Option<&[Support]> {
        self.supports.as_deref()
    }

    /// `m = N + 1 − Σ d_i`.
    pub fn fano_index(&self) -> i64 {
        self.ambient_dim as i64 + 1 - self.degrees.iter().map(|&d| d as i64).sum::<i64>()
    }

    pub fn degree_product(&self) -> Integer {
        self.degrees.iter().fold(Integer::from(1), |acc, &d| acc * d)
    }

    /// `c_1(M)^{N−s} = d_1⋯d_s · m^{N−s}`.
    pub fn anticanonical_degree(&self) -> Integer {
        let m = Integer::from(self.fano_index());
        self.degree_product() * m.pow(self.dim() as u32)
    }
}

/// Diagonal field `V = diag(r_0 t, …, r_N t)` with `V F_i = a_i t · F_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalField {
    eigenvalues: Vec<Rational>,
    weights: Vec<Rational>,
}

impl DiagonalField {
    /// Checked construction. With supports present the weights are derived
    /// (and compared against `weights` if those are also given); without
    /// supports they must be given.
    pub fn new(ci: &CompleteIntersection, eigenvalues: Vec<Rational>, weights: Option<Vec<Rational>>) -> Result<Self> {
        if eigenvalues.len() != ci.ambient_dim + 1 {
            return Err(Error::EigenvalueCount {
                expected: ci.ambient_dim + 1,
                found: eigenvalues.len(),
            });
        }
        let trace: Rational = eigenvalues.iter().sum::<Rational>();
        if !Scalar::is_zero(&trace) {
            return Err(Error::NotTraceless { trace });
        }
        let weights = match (ci.supports(), weights) {
            (Some(_), given) => {
                let derived = derive_weights(ci, &eigenvalues)?;
                if let Some(given) = given {
                    check_weight_count(ci, &given)?;
                    for (i, (g, d)) in given.iter().zip(&derived).enumerate() {
                        if g != d {
                            return Err(Error::WeightMismatch {
                                index: i + 1,
                                given: g.clone(),
                                derived: d.clone(),
                            });
                        }
                    }
                }
                derived
            }
            (None, Some(given)) => {
                check_weight_count(ci, &given)?;
                given
            }
            (None, None) if ci.codim() == 0 => Vec::new(),
            (None, None) => return Err(Error::MissingWeights),
        };
        Ok(DiagonalField { eigenvalues, weights })
    }

    /// The zero field on `ci`.
    pub fn zero(ci: &CompleteIntersection) -> Self {
        DiagonalField {
            eigenvalues: vec![Rational::new(); ci.ambient_dim + 1],
            weights: vec![Rational::new(); ci.codim()],
        }
    }

    pub fn eigenvalues(&self) -> &[Rational] {
        &self.eigenvalues
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight_sum(&self) -> Rational {
        self.weights.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.eigenvalues.iter().all(Scalar::is_zero) && self.weights.iter().all(Scalar::is_zero)
    }

    /// `c·V`.
    pub fn scaled(&self, c: &Rational) -> Self {
        DiagonalField {
            eigenvalues: self.eigenvalues.iter().map(|x| Rational::from(x * c)).collect(),
            weights: self.weights.iter().map(|x| Rational::from(x * c)).collect(),
        }
    }

    /// `V + W`.
    pub fn plus(&self, other: &DiagonalField) -> Self {
        DiagonalField {
            eigenvalues: self
                .eigenvalues
                .iter()
                .zip(&other.eigenvalues)
                .map(|(a, b)| Rational::from(a + b))
                .collect(),
            weights: self
                .weights
                .iter()
                .zip(&other.weights)
                .map(|(a, b)| Rational::from(a + b))
                .collect(),
        }
    }
}

fn check_weight_count(ci: &CompleteIntersection, w: &[Rational]) -> Result<()> {
    if w.len() != ci.codim() {
        return Err(Error::WeightCount {
            expected: ci.codim(),
            found: w.len(),
        });
    }
    Ok(())
}

/// Weight `⟨a, λ⟩` of one monomial.
pub fn monomial_weight(exponents: &[u32], eigenvalues: &[Rational]) -> Rational {
    exponents
        .iter()
        .zip(eigenvalues)
        .map(|(&a, l)| Rational::from(l * a))
        .sum()
}

/// `α_i = ⟨a, λ⟩` for every monomial `a` of `F_i`, checked to agree across
/// each support.
pub fn derive_weights(ci: &CompleteIntersection, eigenvalues: &[Rational]) -> Result<Vec<Rational>> {
    let supports = ci.supports().ok_or(Error::MissingSupports)?;
    if eigenvalues.len() != ci.ambient_dim + 1 {
        return Err(Error::EigenvalueCount {
            expected: ci.ambient_dim + 1,
            found: eigenvalues.len(),
        });
    }
    supports
        .iter()
        .enumerate()
        .map(|(i, support)| {
            let first = monomial_weight(&support[0], eigenvalues);
            for a in &support[1..] {
                let other = monomial_weight(a, eigenvalues);
                if other != first {
                    return Err(Error::InconsistentWeights {
                        index: i + 1,
                        first,
                        other,
                    });
                }
            }
            Ok(first)
        })
        .collect()
}

/// Re-check every invariant of a (complete intersection, field) pair.
pub fn validate(ci: &CompleteIntersection, field: &DiagonalField) -> Result<()> {
    let rebuilt = CompleteIntersection::new(ci.ambient_dim, ci.degrees.clone(), ci.supports.clone())?;
    DiagonalField::new(&rebuilt, field.eigenvalues.clone(), Some(field.weights.clone()))?;
    Ok(())
}

/// Example surfaces and fields used throughout the tests and the CLI.
pub mod examples {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    /// Cubic surface `z_0 z_1^2 + z_2 z_3 (z_2 − z_3)` in `CP^3`.
    pub fn cubic_surface() -> CompleteIntersection {
        CompleteIntersection::new(
            3,
            vec![3],
            Some(vec![vec![vec![1, 2, 0, 0], vec![0, 0, 2, 1], vec![0, 0, 1, 2]]]),
        )
        .expect("valid cubic")
    }

    pub fn cubic_surface_field() -> DiagonalField {
        DiagonalField::new(&cubic_surface(), ints(&[-7, 5, 1, 1]), None).expect("admissible")
    }

    /// Intersection of `z_0 z_1 + z_2^2` and `z_1^2 + z_3 z_4` in `CP^4`.
    pub fn quadric_pair() -> CompleteIntersection {
        CompleteIntersection::new(
            4,
            vec![2, 2],
            Some(vec![
                vec![vec![1, 1, 0, 0, 0], vec![0, 0, 2, 0, 0]],
                vec![vec![0, 2, 0, 0, 0], vec![0, 0, 0, 1, 1]],
            ]),
        )
        .expect("valid quadric pair")
    }

    pub fn quadric_pair_field() -> DiagonalField {
        DiagonalField::new(&quadric_pair(), ints(&[-7, 3, -2, 5, 1]), None).expect("admissible")
    }

    /// Fermat cubic surface `Σ z_i^3`.
    pub fn fermat_cubic() -> CompleteIntersection {
        CompleteIntersection::new(
            3,
            vec![3],
            Some(vec![vec![
                vec![3, 0, 0, 0],
                vec![0, 3, 0, 0],
                vec![0, 0, 3, 0],
                vec![0, 0, 0, 3],
            ]]),
        )
        .expect("valid Fermat cubic")
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn cubic_surface_weights() {
        let w = derive_weights(&cubic_surface(), &ints(&[-7, 5, 1, 1])).unwrap();
        assert_eq!(w, ints(&[3]));
    }

    #[test]
    fn quadric_pair_weights() {
        let w = derive_weights(&quadric_pair(), &ints(&[-7, 3, -2, 5, 1])).unwrap();
        assert_eq!(w, ints(&[-4, 6]));
    }

    #[test]
    fn zero_field_has_zero_weights() {
        let w = derive_weights(&quadric_pair(), &ints(&[0, 0, 0, 0, 0])).unwrap();
        assert_eq!(w, ints(&[0, 0]));
    }

    #[test]
    fn inconsistent_weights_are_rejected() {
        let err = derive_weights(&cubic_surface(), &ints(&[-3, 1, 1, 1])).unwrap_err();
        assert!(matches!(err, Error::InconsistentWeights { index: 1, .. }));
    }

    #[test]
    fn fano_index_and_degree() {
        assert_eq!(cubic_surface().fano_index(), 1);
        assert_eq!(quadric_pair().fano_index(), 1);
        assert_eq!(cubic_surface().anticanonical_degree(), 3);
        assert_eq!(quadric_pair().anticanonical_degree(), 4);
        let p2 = CompleteIntersection::projective_space(2).unwrap();
        assert_eq!(p2.fano_index(), 3);
        assert_eq!(p2.anticanonical_degree(), 9);
    }

    #[test]
    fn quartic_surface_is_not_fano() {
        assert_eq!(
            CompleteIntersection::new(3, vec![4], None),
            Err(Error::NotFano { m: 0 })
        );
    }

    #[test]
    fn trace_and_shape_checks() {
        let ci = cubic_surface();
        assert!(matches!(
            DiagonalField::new(&ci, ints(&[1, 0, 0, 0]), None),
            Err(Error::NotTraceless { .. })
        ));
        assert!(matches!(
            DiagonalField::new(&ci, ints(&[1, -1]), None),
            Err(Error::EigenvalueCount { .. })
        ));
        assert!(matches!(
            DiagonalField::new(&ci, ints(&[-7, 5, 1, 1]), Some(ints(&[2]))),
            Err(Error::WeightMismatch { .. })
        ));
        let bare = CompleteIntersection::new(3, vec![3], None).unwrap();
        assert_eq!(DiagonalField::new(&bare, ints(&[-7, 5, 1, 1]), None), Err(Error::MissingWeights));
        assert!(DiagonalField::new(&bare, ints(&[-7, 5, 1, 1]), Some(ints(&[3]))).is_ok());
    }

    #[test]
    fn malformed_supports() {
        let wrong_degree = CompleteIntersection::new(3, vec![3], Some(vec![vec![vec![1, 1, 0, 0]]]));
        assert!(matches!(wrong_degree, Err(Error::MalformedSupport { index: 1, .. })));
        let wrong_len = CompleteIntersection::new(3, vec![3], Some(vec![vec![vec![3, 0, 0]]]));
        assert!(matches!(wrong_len, Err(Error::MalformedSupport { .. })));
        let wrong_count = CompleteIntersection::new(3, vec![3], Some(vec![]));
        assert!(matches!(wrong_count, Err(Error::MalformedSupport { .. })));
    }

    #[test]
    fn validate_accepts_worked_examples() {
        validate(&cubic_surface(), &cubic_surface_field()).unwrap();
        validate(&quadric_pair(), &quadric_pair_field()).unwrap();
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_rational() -> impl Strategy<Value = Rational> {
            (-20i64..20, 1i64..6).prop_map(|(n, d)| Rational::from((n, d)))
        }

        proptest! {
            // The admissible directions of the quadric pair form a 2-plane;
            // parametrise it and check linearity / rescaling of the weights.
            #[test]
            fn weights_linear_and_homogeneous(a in small_rational(), b in small_rational(), c in small_rational()) {
                let ci = quadric_pair();
                let basis = |x: &Rational, y: &Rational| -> Vec<Rational> {
                    // λ_0 + λ_1 = 2λ_2, 2λ_1 = λ_3 + λ_4, Σλ = 0; free λ_1 = x, λ_3 = y
                    let l1 = x.clone();
                    let l3 = y.clone();
                    let l4 = Rational::from(&l1 * 2) - &l3;
                    // λ_0 + λ_2 = -(λ_1 + λ_3 + λ_4) = -3λ_1 and λ_0 - 2λ_2 = -λ_1
                    let l2 = Rational::from(&l1 * -2) / 3;
                    let l0 = Rational::from(&l2 * 2) - &l1;
                    vec![l0, l1, l2, l3, l4]
                };
                let v = basis(&a, &b);
                let w = basis(&b, &c);
                let sum: Vec<Rational> = v.iter().zip(&w).map(|(x, y)| Rational::from(x + y)).collect();
                let av = derive_weights(&ci, &v).unwrap();
                let aw = derive_weights(&ci, &w).unwrap();
                let asum = derive_weights(&ci, &sum).unwrap();
                for i in 0..2 {
                    prop_assert_eq!(&asum[i], &Rational::from(&av[i] + &aw[i]));
                }
                let scaled: Vec<Rational> = v.iter().map(|x| Rational::from(x * &c)).collect();
                let ascaled = derive_weights(&ci, &scaled).unwrap();
                for i in 0..2 {
                    prop_assert_eq!(&ascaled[i], &Rational::from(&av[i] * &c));
                }
            }
        }
    }
}
