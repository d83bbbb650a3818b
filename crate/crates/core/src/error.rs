use rug::Rational;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("ambient dimension must be at least 1, got {0}")]
    InvalidDimension(usize),

    #[error("degree d_{index} must be at least 1")]
    ZeroDegree { index: usize },

    #[error("not Fano: m = N + 1 - sum(d_i) = {m} must be at least 1")]
    NotFano { m: i64 },

    #[error("eigenvalues are not traceless (sum = {trace})")]
    NotTraceless { trace: Rational },

    #[error("expected {expected} eigenvalues, got {found}")]
    EigenvalueCount { expected: usize, found: usize },

    #[error("expected {expected} weights, got {found}")]
    WeightCount { expected: usize, found: usize },

    #[error("monomials of F_{index} carry different weights ({first} vs {other})")]
    InconsistentWeights {
        index: usize,
        first: Rational,
        other: Rational,
    },

    #[error("given weight alpha_{index} = {given} disagrees with the support-derived weight {derived}")]
    WeightMismatch {
        index: usize,
        given: Rational,
        derived: Rational,
    },

    #[error("malformed support for F_{index}: {reason}")]
    MalformedSupport { index: usize, reason: String },

    #[error("no monomial supports given; weights must be supplied explicitly")]
    MissingWeights,

    #[error("this operation needs monomial supports")]
    MissingSupports,

    #[error("inadmissible direction: {0}")]
    InadmissibleDirection(String),

    #[error("expression has a pole at t = 0 (coefficient of t^{exponent} is {coefficient})")]
    PoleAtZero {
        exponent: i32,
        coefficient: Rational,
    },

    #[error("cannot evaluate at t = 0: expression has a pole there")]
    EvalAtPole,

    #[error("solver did not converge after {iterations} iterations (|grad| = {gradient_norm:e}, last iterate {last:?})")]
    NoConvergence {
        iterations: usize,
        gradient_norm: f64,
        last: Vec<f64>,
    },

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}
