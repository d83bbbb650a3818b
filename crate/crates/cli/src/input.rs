//! The JSON input document.

use std::str::FromStr;

use futaki_core::exactalg::Rational;
use futaki_core::geometry::{CompleteIntersection, DiagonalField, Support};
use serde::Deserialize;

use crate::CliError;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub ambient_dim: usize,
    pub degrees: Vec<u32>,
    #[serde(default)]
    pub supports: Option<Vec<Support>>,
    /// Absent means the zero field.
    #[serde(default)]
    pub eigenvalues: Option<Vec<String>>,
    #[serde(default)]
    pub weights: Option<Vec<String>>,
}

pub fn parse_rational(field: &str, index: usize, s: &str) -> Result<Rational, CliError> {
    let bad = || CliError::Input(format!("{field}[{index}]: invalid rational '{s}'"));
    let r = Rational::from_str(s.trim()).map_err(|_| bad())?;
    Ok(r)
}

pub fn parse_rationals(field: &str, items: &[String]) -> Result<Vec<Rational>, CliError> {
    items
        .iter()
        .enumerate()
        .map(|(i, s)| parse_rational(field, i, s))
        .collect()
}

impl InputDocument {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("input document: {e}")))
    }

    pub fn variety(&self) -> Result<CompleteIntersection, CliError> {
        Ok(CompleteIntersection::new(self.ambient_dim, self.degrees.clone(), self.supports.clone())?)
    }

    pub fn field(&self, ci: &CompleteIntersection) -> Result<DiagonalField, CliError> {
        let Some(eigenvalues) = &self.eigenvalues else {
            return Ok(DiagonalField::zero(ci));
        };
        let eigenvalues = parse_rationals("eigenvalues", eigenvalues)?;
        let weights = self
            .weights
            .as_ref()
            .map(|w| parse_rationals("weights", w))
            .transpose()?;
        Ok(DiagonalField::new(ci, eigenvalues, weights)?)
    }

    pub fn load(&self) -> Result<(CompleteIntersection, DiagonalField), CliError> {
        let ci = self.variety()?;
        let field = self.field(&ci)?;
        Ok((ci, field))
    }
}
