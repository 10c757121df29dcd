//! JSON state files.
//!
//! A state is given either as a density matrix
//! `{"matrix": [[[re, im], ×4], ×4]}` or by its Bloch coefficients
//! `{"hs": {"R": [..3], "S": [..3], "T": [[..3], ×3]}}`. Exactly one of the two
//! keys must be present. An optional integer `schema_version` is accepted.

use serde::{Deserialize, Serialize};

use super::{hs_compose, DensityMatrix, HilbertSchmidtForm};
use crate::error::{Error, Result};
use crate::numkernel::{CMatrix4, Vector3};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStateFile {
    #[serde(default)]
    schema_version: Option<u32>,
    #[serde(default)]
    matrix: Option<CMatrix4>,
    #[serde(default)]
    hs: Option<HilbertSchmidtForm>,
}

#[derive(Serialize)]
struct StateFileOut<'a> {
    schema_version: u32,
    matrix: &'a CMatrix4,
}

/// A parsed but not yet validated state description.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StateSpec {
    Matrix(CMatrix4),
    Hs(HilbertSchmidtForm),
}

impl StateSpec {
    /// Validates into a density matrix.
    pub fn into_density(self) -> Result<DensityMatrix> {
        match self {
            StateSpec::Matrix(m) => DensityMatrix::validate(m),
            StateSpec::Hs(f) => hs_compose(&f),
        }
    }
}

/// Parses a state file. Only syntax and shape are checked here; physical
/// validity is checked by [`StateSpec::into_density`].
pub fn parse_state_json(text: &str) -> Result<StateSpec> {
    let raw: RawStateFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if let Some(v) = raw.schema_version {
        if v != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema_version {v} (expected {SCHEMA_VERSION})"
            )));
        }
    }
    match (raw.matrix, raw.hs) {
        (Some(m), None) => Ok(StateSpec::Matrix(m)),
        (None, Some(f)) => Ok(StateSpec::Hs(f)),
        (Some(_), Some(_)) => Err(Error::Parse(
            "state file must contain exactly one of \"matrix\" or \"hs\", found both".into(),
        )),
        (None, None) => Err(Error::Parse(
            "state file must contain exactly one of \"matrix\" or \"hs\"".into(),
        )),
    }
}

/// Serializes a state in the `matrix` form, at full precision.
pub fn state_to_json(rho: &DensityMatrix) -> String {
    let out = StateFileOut {
        schema_version: SCHEMA_VERSION,
        matrix: rho.matrix(),
    };
    serde_json::to_string_pretty(&out).expect("state serialization cannot fail")
}

/// Parses a finite real number. `2√2` and `2sqrt2` are accepted as the exact
/// CHSH maximum.
pub fn parse_scalar(text: &str) -> Result<f64> {
    match text.trim() {
        "2√2" | "2sqrt2" => Ok(2.0 * std::f64::consts::SQRT_2),
        t => t
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| Error::Parse(format!("not a finite number: {t:?}"))),
    }
}

/// Parses a comma-separated real 3-vector such as `0.1,0,-0.2`.
pub fn parse_vector3(text: &str) -> Result<Vector3> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!(
            "expected three comma-separated numbers, got {}",
            parts.len()
        )));
    }
    let mut v = [0.0; 3];
    for (slot, p) in v.iter_mut().zip(&parts) {
        let x: f64 = p
            .parse()
            .map_err(|_| Error::Parse(format!("not a number: {p:?}")))?;
        if !x.is_finite() {
            return Err(Error::Parse(format!("not a finite number: {p:?}")));
        }
        *slot = x;
    }
    Ok(v)
}
