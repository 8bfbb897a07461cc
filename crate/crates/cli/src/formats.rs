//! JSON file formats and flag-string parsers. Every parser rejects bad input
//! with an [`InputError`] and never panics.

use std::collections::BTreeMap;

use egeo_core::cech::CechCover;
use egeo_core::separability::Partition;
use egeo_core::tensor::PureState;
use egeo_core::{CMatrix, C64};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest state accepted from JSON.
pub const MAX_STATE_LEN: usize = 1 << 16;

/// Largest chart count and lift size accepted in cover JSON.
pub const MAX_COVER_CHARTS: usize = 64;
pub const MAX_COVER_DIM: usize = 16;

/// Largest list accepted by the flag parsers.
pub const MAX_FLAG_ITEMS: usize = 4096;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InputError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("bad flag value {value:?}: {reason}")]
    Flag { value: String, reason: String },
    #[error(transparent)]
    Domain(#[from] egeo_core::Error),
}

fn flag_err(value: &str, reason: impl Into<String>) -> InputError {
    InputError::Flag { value: value.chars().take(64).collect(), reason: reason.into() }
}

fn json_err(e: serde_json::Error) -> InputError {
    InputError::Json(e.to_string())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateJson {
    pub dims: Vec<usize>,
    pub coeffs: Vec<[f64; 2]>,
}

impl StateJson {
    pub fn from_state(s: &PureState) -> Self {
        Self { dims: s.dims().to_vec(), coeffs: s.coeffs().iter().map(|z| [z.re, z.im]).collect() }
    }

    pub fn to_state(&self) -> Result<PureState, InputError> {
        let len = self
            .dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .filter(|&n| n <= MAX_STATE_LEN)
            .ok_or_else(|| flag_err("dims", format!("state larger than {MAX_STATE_LEN} coefficients")))?;
        if len != self.coeffs.len() {
            return Err(egeo_core::Error::WrongLength { expected: len, got: self.coeffs.len() }.into());
        }
        Ok(PureState::new(self.dims.clone(), self.coeffs.iter().map(|&[re, im]| C64::new(re, im)).collect())?)
    }
}

pub fn parse_state_json(text: &str) -> Result<PureState, InputError> {
    serde_json::from_str::<StateJson>(text).map_err(json_err)?.to_state()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionJson {
    pub n: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl PartitionJson {
    pub fn from_partition(p: &Partition) -> Self {
        Self { n: p.n_subsystems(), blocks: p.blocks().to_vec() }
    }
}

pub fn parse_partition_json(text: &str) -> Result<Partition, InputError> {
    let p: PartitionJson = serde_json::from_str(text).map_err(json_err)?;
    if p.n > MAX_STATE_LEN {
        return Err(flag_err("n", "too many subsystems"));
    }
    Ok(Partition::new(p.n, p.blocks)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairJson {
    pub i: usize,
    pub j: usize,
    pub lift: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    pub charts: usize,
    pub pairs: Vec<PairJson>,
    #[serde(default)]
    pub triples: Vec<[usize; 3]>,
    #[serde(default)]
    pub quads: Vec<[usize; 4]>,
}

impl CoverJson {
    pub fn from_cover(cover: &CechCover, m: Option<u64>) -> Self {
        let pairs = cover
            .transitions
            .iter()
            .map(|(&(i, j), g)| PairJson {
                i,
                j,
                lift: (0..g.nrows()).map(|r| (0..g.ncols()).map(|c| [g[(r, c)].re, g[(r, c)].im]).collect()).collect(),
            })
            .collect();
        Self {
            n: cover.n,
            m,
            charts: cover.chart_count,
            pairs,
            triples: cover.triples.clone(),
            quads: cover.quads.clone(),
        }
    }

    pub fn to_cover(&self) -> Result<CechCover, InputError> {
        if self.n == 0 || self.n > MAX_COVER_DIM {
            return Err(flag_err("n", format!("lift size outside 1..={MAX_COVER_DIM}")));
        }
        if self.charts > MAX_COVER_CHARTS {
            return Err(flag_err("charts", format!("more than {MAX_COVER_CHARTS} charts")));
        }
        let mut transitions = BTreeMap::new();
        for p in &self.pairs {
            if p.lift.len() != self.n || p.lift.iter().any(|row| row.len() != self.n) {
                return Err(egeo_core::Error::BadNerve {
                    tuple: vec![p.i, p.j],
                    reason: format!("lift is not {0}x{0}", self.n),
                }
                .into());
            }
            if p.lift.iter().flatten().any(|z| !z[0].is_finite() || !z[1].is_finite()) {
                return Err(flag_err("lift", "non-finite entry"));
            }
            let g = CMatrix::from_fn(self.n, self.n, |r, c| C64::new(p.lift[r][c][0], p.lift[r][c][1]));
            if transitions.insert((p.i, p.j), g).is_some() {
                return Err(egeo_core::Error::BadNerve { tuple: vec![p.i, p.j], reason: "pair listed twice".into() }.into());
            }
        }
        let cover = CechCover {
            chart_count: self.charts,
            n: self.n,
            transitions,
            triples: self.triples.clone(),
            quads: self.quads.clone(),
        };
        egeo_core::cech::validate_nerve(&cover)?;
        Ok(cover)
    }
}

/// A validated cover and its optional modulus.
pub fn parse_cover_json(text: &str) -> Result<(CechCover, Option<u64>), InputError> {
    let c: CoverJson = serde_json::from_str(text).map_err(json_err)?;
    Ok((c.to_cover()?, c.m))
}

fn split_items(text: &str, sep: char) -> Result<Vec<&str>, InputError> {
    let items: Vec<&str> = text.split(sep).map(str::trim).collect();
    if text.trim().is_empty() || items.iter().any(|s| s.is_empty()) {
        return Err(flag_err(text, "empty item"));
    }
    if items.len() > MAX_FLAG_ITEMS {
        return Err(flag_err(text, format!("more than {MAX_FLAG_ITEMS} items")));
    }
    Ok(items)
}

fn parse_f64(s: &str) -> Result<f64, InputError> {
    let x: f64 = s.parse().map_err(|_| flag_err(s, "not a number"))?;
    if !x.is_finite() {
        return Err(flag_err(s, "not finite"));
    }
    Ok(x)
}

/// `"re,im;re,im;..."`; a lone number is real.
pub fn parse_eigs(text: &str) -> Result<Vec<C64>, InputError> {
    split_items(text, ';')?
        .into_iter()
        .map(|item| {
            let parts = split_items(item, ',')?;
            match parts.as_slice() {
                [re] => Ok(C64::new(parse_f64(re)?, 0.0)),
                [re, im] => Ok(C64::new(parse_f64(re)?, parse_f64(im)?)),
                _ => Err(flag_err(item, "expected re or re,im")),
            }
        })
        .collect()
}

/// Comma-separated integers, e.g. splitting degrees.
pub fn parse_i64_list(text: &str) -> Result<Vec<i64>, InputError> {
    split_items(text, ',')?.into_iter().map(|s| s.parse().map_err(|_| flag_err(s, "not an integer"))).collect()
}

/// Comma-separated nonnegative integers, e.g. dimensions or cut indices.
pub fn parse_usize_list(text: &str) -> Result<Vec<usize>, InputError> {
    split_items(text, ',')?
        .into_iter()
        .map(|s| s.parse().map_err(|_| flag_err(s, "not a nonnegative integer")))
        .collect()
}

/// `"AxB"` with positive factors.
pub fn parse_shape(text: &str) -> Result<(usize, usize), InputError> {
    let parts: Vec<&str> = text.trim().split(['x', 'X']).collect();
    match parts.as_slice() {
        [a, b] => {
            let a: usize = a.trim().parse().map_err(|_| flag_err(text, "expected AxB"))?;
            let b: usize = b.trim().parse().map_err(|_| flag_err(text, "expected AxB"))?;
            if a == 0 || b == 0 {
                return Err(flag_err(text, "factors must be positive"));
            }
            Ok((a, b))
        }
        _ => Err(flag_err(text, "expected AxB")),
    }
}
