//! Modified Futaki invariants of Fano complete intersections in projective
//! space, computed exactly as exponential polynomials in `t` and numerically
//! at high precision.

pub mod error;
pub mod exactalg;
pub mod geometry;
pub mod localization;
pub mod futaki;
pub mod quantize;
pub mod soliton;

pub use error::{Error, Result};
