use std::collections::BTreeMap;

use egeo_core::{CMatrix, C64};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// The JSON document every subcommand prints. Object keys serialize in
/// sorted order, so equal inputs give byte-identical output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    /// Parsed inputs; `inputs.argv` re-runs the command exactly.
    pub inputs: Value,
    pub outputs: Value,
    pub tolerances: BTreeMap<String, f64>,
    pub version: String,
}

impl Report {
    pub fn new(command: &str, inputs: Value, outputs: Value, tolerances: &[(&str, f64)]) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs,
            outputs,
            tolerances: tolerances.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are finite")
    }
}

pub fn complex(z: C64) -> Value {
    json!([finite(z.re), finite(z.im)])
}

pub fn complexes(zs: &[C64]) -> Value {
    Value::Array(zs.iter().map(|&z| complex(z)).collect())
}

pub fn matrix(m: &CMatrix) -> Value {
    Value::Array((0..m.nrows()).map(|r| Value::Array((0..m.ncols()).map(|c| complex(m[(r, c)])).collect())).collect())
}

/// JSON has no infinities or NaN; such values print as `null`.
pub fn finite(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}
