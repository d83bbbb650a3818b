//! The result document and its text rendering.

use futaki_core::exactalg::{ExpPoly, Rational, Real};
use futaki_core::geometry::{CompleteIntersection, DiagonalField};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Coefficient {
    pub exponent: i32,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Term {
    pub frequency: String,
    pub coefficients: Vec<Coefficient>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Number {
    pub decimal: String,
    pub hex: String,
    pub precision_bits: u32,
}

impl Number {
    pub fn new(r: &Real) -> Self {
        Number {
            decimal: r.to_decimal(),
            hex: r.to_hex(),
            precision_bits: r.prec(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Metadata {
    pub ambient_dim: usize,
    pub degrees: Vec<u32>,
    pub dimension: usize,
    pub fano_index: i64,
    pub anticanonical_degree: String,
    pub weights: Vec<String>,
}

impl Metadata {
    pub fn new(ci: &CompleteIntersection, field: &DiagonalField) -> Self {
        Metadata {
            ambient_dim: ci.ambient_dim(),
            degrees: ci.degrees().to_vec(),
            dimension: ci.dim(),
            fano_index: ci.fano_index(),
            anticanonical_degree: ci.anticanonical_degree().to_string(),
            weights: field.weights().iter().map(Rational::to_string).collect(),
        }
    }
}

/// A named value in the `numeric` section.
#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub number: Option<Number>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
}

impl Entry {
    pub fn number(name: impl Into<String>, r: &Real) -> Self {
        Entry {
            name: name.into(),
            number: Some(Number::new(r)),
            text: None,
        }
    }

    pub fn text(name: impl Into<String>, value: impl Into<String>) -> Self {
        Entry {
            name: name.into(),
            number: None,
            text: Some(value.into()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ResultDocument {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expression: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<Term>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub numeric: Vec<Entry>,
    pub metadata: Metadata,
}

impl ResultDocument {
    pub fn new(command: &str, metadata: Metadata) -> Self {
        ResultDocument {
            command: command.to_string(),
            expression: None,
            terms: None,
            numeric: Vec::new(),
            metadata,
        }
    }

    pub fn with_expression(mut self, p: &ExpPoly) -> Self {
        self.expression = Some(p.to_string());
        self.terms = Some(
            p.terms()
                .map(|(mu, c)| Term {
                    frequency: mu.to_string(),
                    coefficients: c
                        .terms()
                        .map(|(e, v)| Coefficient {
                            exponent: e,
                            value: v.to_string(),
                        })
                        .collect(),
                })
                .collect(),
        );
        self
    }

    pub fn push(&mut self, entry: Entry) {
        self.numeric.push(entry);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result document serializes")
    }

    pub fn to_text(&self) -> String {
        let m = &self.metadata;
        let mut out = format!(
            "N = {}, degrees = {:?}, dim = {}, m = {}, degree = {}, weights = ({})\n",
            m.ambient_dim,
            m.degrees,
            m.dimension,
            m.fano_index,
            m.anticanonical_degree,
            m.weights.join(", ")
        );
        if let Some(e) = &self.expression {
            out.push_str(&format!("{} = {e}\n", self.command));
        }
        for entry in &self.numeric {
            match (&entry.number, &entry.text) {
                (Some(n), _) => out.push_str(&format!("{} = {}\n", entry.name, n.decimal)),
                (None, Some(t)) => out.push_str(&format!("{} = {t}\n", entry.name)),
                (None, None) => {}
            }
        }
        out
    }
}
