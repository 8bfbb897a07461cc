#![allow(dead_code)]

use egeo_core::linalg::{c, CMatrix, CVector, C64};
use egeo_core::tensor::PureState;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> C64 {
    c(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<C64> {
    (0..n).map(|_| gaussian(rng)).collect()
}

pub fn random_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize) -> CMatrix {
    CMatrix::from_fn(r, c, |_, _| gaussian(rng))
}

/// `D (I + E)` with `D` diagonal of moduli in `[0.5, 2]` and `|E|_F = 1/2`,
/// so the condition number is at most 12.
pub fn well_conditioned(rng: &mut ChaCha8Rng, d: usize) -> CMatrix {
    let e = random_matrix(rng, d, d);
    let e = &e * C64::new(0.5 / e.norm(), 0.0);
    let diag = CMatrix::from_diagonal(&CVector::from_fn(d, |_, _| {
        C64::from_polar(rng.random_range(0.5..2.0), rng.random_range(0.0..std::f64::consts::TAU))
    }));
    diag * (CMatrix::identity(d, d) + e)
}

/// A `rows x cols` matrix of rank exactly `min(k, rows, cols)` almost surely.
pub fn rank_k_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, k: usize) -> CMatrix {
    random_matrix(rng, rows, k) * random_matrix(rng, k, cols)
}

pub fn random_state(rng: &mut ChaCha8Rng, dims: &[usize]) -> PureState {
    let n = dims.iter().product();
    PureState::new(dims.to_vec(), random_vec(rng, n)).unwrap()
}

/// State on `dims` whose flattening across the first `split` subsystems has rank `k`.
pub fn state_with_cut_rank(rng: &mut ChaCha8Rng, dims: &[usize], split: usize, k: usize) -> PureState {
    let rows: usize = dims[..split].iter().product();
    let cols: usize = dims[split..].iter().product();
    let m = rank_k_matrix(rng, rows, cols, k);
    let coeffs = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| m[(i, j)]).collect();
    PureState::new(dims.to_vec(), coeffs).unwrap()
}
