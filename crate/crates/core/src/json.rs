//! JSON forms of descriptors, weights and elements (double precision).
//!
//! ```json
//! {"kind": "finite_space", "points": 2}
//! {"kind": "beurling", "weight": {"kind": "one_sided", "r": 2.0}}
//! {"kind": "arens_hoffman", "base": {...}, "alpha": [a_0, ..., a_{n-1}, 1], "t": null}
//! ```
//!
//! Complex scalars are written `[re, im]`; a bare number is read as real.
//! Finite-space elements are scalar lists, Laurent elements are
//! `{"lo": k, "coeffs": [...]}`, and extension elements are lists of base
//! elements, lowest degree first.

use std::sync::Arc;

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::algebra::{AlgebraError, BanachAlgebra};
use crate::any::{AnyDescriptor, AnyElement};
use crate::beurling::{LaurentElement, WeightSequence};
use crate::extension::{make_extension, AhElement};
use crate::finite::{FiniteElement, FiniteSpace};
use crate::poly::{AlgebraPoly, MonicPoly};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON value: {0}")]
    Shape(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Serde(#[from] serde_json::Error),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DescriptorJson {
    FiniteSpace {
        points: usize,
    },
    Beurling {
        weight: WeightJson,
    },
    ArensHoffman {
        base: Box<DescriptorJson>,
        /// All coefficients of `α`, lowest first; the last must be the unit.
        alpha: Vec<Value>,
        #[serde(default)]
        t: Option<f64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightKind {
    Constant,
    Geometric,
    OneSided,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailRule {
    Geometric,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindowJson {
    pub lo: i64,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightJson {
    pub kind: WeightKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<WindowJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension: Option<TailRule>,
}

pub fn parse_weight(w: &WeightJson) -> Result<WeightSequence<f64>, JsonError> {
    let rate = || w.r.ok_or_else(|| JsonError::Shape(format!("{:?} weight needs \"r\"", w.kind)));
    Ok(match w.kind {
        WeightKind::Constant => WeightSequence::constant(),
        WeightKind::Geometric => WeightSequence::geometric(rate()?)?,
        WeightKind::OneSided => WeightSequence::one_sided(rate()?)?,
        WeightKind::Table => {
            let window = w
                .window
                .as_ref()
                .ok_or_else(|| JsonError::Shape("table weight needs \"window\"".into()))?;
            if w.extension != Some(TailRule::Geometric) {
                return Err(JsonError::Shape(
                    "table weight must declare \"extension\": \"geometric\"".into(),
                ));
            }
            WeightSequence::table(window.lo, window.values.clone())?
        }
    })
}

pub fn weight_to_json(w: &WeightSequence<f64>) -> WeightJson {
    let blank = |kind| WeightJson { kind, r: None, window: None, extension: None };
    match w {
        WeightSequence::Constant => blank(WeightKind::Constant),
        WeightSequence::Geometric { r } => WeightJson { r: Some(*r), ..blank(WeightKind::Geometric) },
        WeightSequence::OneSided { r } => WeightJson { r: Some(*r), ..blank(WeightKind::OneSided) },
        WeightSequence::Table { lo, values } => WeightJson {
            window: Some(WindowJson { lo: *lo, values: values.clone() }),
            extension: Some(TailRule::Geometric),
            ..blank(WeightKind::Table)
        },
    }
}

pub fn parse_descriptor(d: &DescriptorJson) -> Result<AnyDescriptor<f64>, JsonError> {
    match d {
        DescriptorJson::FiniteSpace { points } => {
            if *points == 0 {
                return Err(JsonError::Shape("finite space needs at least one point".into()));
            }
            Ok(AnyDescriptor::Finite(FiniteSpace { points: *points }))
        }
        DescriptorJson::Beurling { weight } => Ok(AnyDescriptor::Beurling(Arc::new(parse_weight(weight)?))),
        DescriptorJson::ArensHoffman { base, alpha, t } => {
            let base = parse_descriptor(base)?;
            let coeffs = alpha
                .iter()
                .map(|v| parse_element(&base, v))
                .collect::<Result<Vec<_>, _>>()?;
            let alpha = MonicPoly::new(AlgebraPoly::new(base.clone(), coeffs)?)?;
            Ok(AnyDescriptor::Extension(make_extension(&base, alpha, *t)?))
        }
    }
}

/// The `t` actually in use is written out, so a round trip reproduces the norm.
pub fn descriptor_to_json(d: &AnyDescriptor<f64>) -> DescriptorJson {
    match d {
        AnyDescriptor::Finite(s) => DescriptorJson::FiniteSpace { points: s.points },
        AnyDescriptor::Beurling(w) => DescriptorJson::Beurling { weight: weight_to_json(w) },
        AnyDescriptor::Extension(e) => DescriptorJson::ArensHoffman {
            base: Box::new(descriptor_to_json(e.base())),
            alpha: e.alpha().as_poly().coeffs().iter().map(element_to_json).collect(),
            t: Some(e.t()),
        },
    }
}

pub fn parse_complex(v: &Value) -> Result<Complex<f64>, JsonError> {
    if let Some(x) = v.as_f64() {
        return Ok(Complex::new(x, 0.0));
    }
    match v.as_array().map(Vec::as_slice) {
        Some([re, im]) => match (re.as_f64(), im.as_f64()) {
            (Some(re), Some(im)) => Ok(Complex::new(re, im)),
            _ => Err(JsonError::Shape(format!("complex entries must be numbers: {v}"))),
        },
        _ => Err(JsonError::Shape(format!("expected a number or [re, im], got {v}"))),
    }
}

pub fn complex_to_json(z: Complex<f64>) -> Value {
    serde_json::json!([z.re, z.im])
}

fn complex_list(v: &Value) -> Result<Vec<Complex<f64>>, JsonError> {
    v.as_array()
        .ok_or_else(|| JsonError::Shape(format!("expected a list of scalars, got {v}")))?
        .iter()
        .map(parse_complex)
        .collect()
}

pub fn parse_element(d: &AnyDescriptor<f64>, v: &Value) -> Result<AnyElement<f64>, JsonError> {
    match d {
        AnyDescriptor::Finite(s) => {
            // A list of the right length is read first; otherwise a scalar is the constant function.
            match complex_list(v) {
                Ok(values) if values.len() == s.points => return Ok(AnyElement::Finite(FiniteElement::new(values))),
                _ => {}
            }
            if let Ok(c) = parse_complex(v) {
                return Ok(AnyElement::Finite(FiniteElement::from_scalar(s, c)));
            }
            let got = v.as_array().map_or(0, Vec::len);
            Err(AlgebraError::WrongLength { expected: s.points, got }.into())
        }
        AnyDescriptor::Beurling(w) => {
            if let Ok(c) = parse_complex(v) {
                return Ok(AnyElement::Laurent(LaurentElement::from_scalar(w, c)));
            }
            let lo = v
                .get("lo")
                .and_then(Value::as_i64)
                .ok_or_else(|| JsonError::Shape(format!("Laurent element needs integer \"lo\": {v}")))?;
            let coeffs = complex_list(
                v.get("coeffs")
                    .ok_or_else(|| JsonError::Shape(format!("Laurent element needs \"coeffs\": {v}")))?,
            )?;
            Ok(AnyElement::Laurent(LaurentElement::new(w.clone(), lo, coeffs)))
        }
        AnyDescriptor::Extension(e) => {
            let items = v
                .as_array()
                .ok_or_else(|| JsonError::Shape(format!("extension element must be a list of base elements: {v}")))?;
            let coeffs = items
                .iter()
                .map(|item| parse_element(e.base(), item))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(AnyElement::Extension(AhElement::from_coeffs(e, coeffs)?))
        }
    }
}

pub fn element_to_json(x: &AnyElement<f64>) -> Value {
    match x {
        AnyElement::Finite(f) => Value::Array(f.values().iter().map(|&z| complex_to_json(z)).collect()),
        AnyElement::Laurent(l) => {
            let l = l.trimmed();
            serde_json::json!({
                "lo": l.lo(),
                "coeffs": l.coeffs().iter().map(|&z| complex_to_json(z)).collect::<Vec<_>>(),
            })
        }
        AnyElement::Extension(a) => Value::Array(a.rep().iter().map(element_to_json).collect()),
    }
}

/// Reads a descriptor from JSON text.
pub fn descriptor_from_str(s: &str) -> Result<AnyDescriptor<f64>, JsonError> {
    parse_descriptor(&serde_json::from_str(s)?)
}

/// The descriptor of `x` must match `d`.
pub fn ensure_element_of(x: &AnyElement<f64>, d: &AnyDescriptor<f64>) -> Result<(), JsonError> {
    if &x.descriptor() == d {
        Ok(())
    } else {
        Err(AlgebraError::DescriptorMismatch.into())
    }
}
