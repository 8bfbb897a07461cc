//! Product criteria for semisimple conjugacy classes given by eigenvalue
//! multisets: elementary symmetric coordinates, the `(2,2)` and `(2,2,2)`
//! polynomial tests, an exhaustive factorization search for general shapes,
//! and the sphericity dimension count.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::linalg::{C64, ONE, ZERO};

/// Largest spectrum size searched by [`d_product_oracle`].
pub const MAX_ORACLE_SIZE: usize = 16;

/// Default tolerance for the polynomial criteria and the oracle.
pub const DEFAULT_SPECTRAL_TOL: f64 = 1e-8;

fn principal_root(z: C64, n: usize) -> C64 {
    C64::from_polar(z.norm().powf(1.0 / n as f64), z.arg() / n as f64)
}

fn unit_product(mut zs: Vec<C64>) -> Result<Vec<C64>> {
    if zs.is_empty() {
        return Err(Error::WrongSize { expected: 1, got: 0 });
    }
    if zs.iter().any(|z| !z.re.is_finite() || !z.im.is_finite() || z.norm() == 0.0) {
        return Err(Error::Invalid("eigenvalues must be finite and nonzero".into()));
    }
    let p: C64 = zs.iter().product();
    let r = principal_root(p, zs.len());
    for z in zs.iter_mut() {
        *z /= r;
    }
    Ok(zs)
}

/// An eigenvalue multiset rescaled to unit product by the principal `n`-th
/// root of its product.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralClass {
    eigenvalues: Vec<C64>,
}

impl SpectralClass {
    pub fn new(eigenvalues: Vec<C64>) -> Result<Self> {
        Ok(Self { eigenvalues: unit_product(eigenvalues)? })
    }

    pub fn eigenvalues(&self) -> &[C64] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }
}

/// Per-factor eigenvalues, each factor rescaled to unit product.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalSpectra {
    factors: Vec<Vec<C64>>,
}

impl LocalSpectra {
    pub fn new(factors: Vec<Vec<C64>>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Invalid("no tensor factors".into()));
        }
        Ok(Self { factors: factors.into_iter().map(unit_product).collect::<Result<_>>()? })
    }

    pub fn factors(&self) -> &[Vec<C64>] {
        &self.factors
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(Vec::len).collect()
    }
}

/// `e_1..e_n` of the multiset, read off `prod (1 + z_i T)`.
pub fn elem_sym(s: &SpectralClass) -> Vec<C64> {
    elem_sym_of(s.eigenvalues())
}

fn elem_sym_of(zs: &[C64]) -> Vec<C64> {
    let mut coeffs = vec![ZERO; zs.len() + 1];
    coeffs[0] = ONE;
    for (k, z) in zs.iter().enumerate() {
        for j in (1..=k + 1).rev() {
            let prev = coeffs[j - 1];
            coeffs[j] += z * prev;
        }
    }
    coeffs.split_off(1)
}

/// All slotwise products `prod_i a_{i, j_i}`, last factor varying fastest.
pub fn tensor_spectrum(l: &LocalSpectra) -> SpectralClass {
    let mut zs = vec![ONE];
    for f in l.factors() {
        zs = zs.iter().flat_map(|z| f.iter().map(move |a| z * a)).collect();
    }
    SpectralClass { eigenvalues: zs }
}

fn max_abs(es: &[C64]) -> f64 {
    es.iter().fold(0.0, |m, e| m.max(e.norm()))
}

/// `e_1 = e_3` within `tol * (1 + max(|e_1|, |e_3|))`; on success the
/// witness `(a, b)` has spectrum `{ab, ab^-1, a^-1 b, a^-1 b^-1}`.
pub fn is_22_product(s: &SpectralClass, tol: f64) -> Result<(bool, Option<(C64, C64)>)> {
    if s.len() != 4 {
        return Err(Error::WrongSize { expected: 4, got: s.len() });
    }
    let e = elem_sym(s);
    if (e[0] - e[2]).norm() > tol * (1.0 + max_abs(&[e[0], e[2]])) {
        return Ok((false, None));
    }
    let z = s.eigenvalues();
    // the pairing into {u, u^-1}, {v, v^-1} with the smallest defect
    let (u, v) = [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)]
        .into_iter()
        .min_by(|p, q| {
            let defect = |&(i, j, k, l): &(usize, usize, usize, usize)| {
                (z[i] * z[j] - ONE).norm() + (z[k] * z[l] - ONE).norm()
            };
            defect(p).total_cmp(&defect(q))
        })
        .map(|(i, _, k, _)| (z[i], z[k]))
        .expect("three pairings");
    let a = (u * v).sqrt();
    Ok((true, Some((a, u / a))))
}

/// `F = e_3^2 + 2 e_1 e_3 + e_1^4 - (e_4 + 2 e_2 + 1) e_1^2`.
pub fn quartic_f(e: &[C64]) -> Result<C64> {
    if e.len() < 4 {
        return Err(Error::WrongLength { expected: 4, got: e.len() });
    }
    let (e1, e2, e3, e4) = (e[0], e[1], e[2], e[3]);
    Ok(e3 * e3 + 2.0 * e1 * e3 + e1.powi(4) - (e4 + 2.0 * e2 + 1.0) * e1 * e1)
}

/// Residuals of the `(2,2,2)` criterion, each divided by its scale:
/// the three palindromic differences by `1 + max|e_k|` and `F` by the
/// fourth power of that.
pub fn criterion_222_residuals(s: &SpectralClass) -> Result<[f64; 4]> {
    if s.len() != 8 {
        return Err(Error::WrongSize { expected: 8, got: s.len() });
    }
    let e = elem_sym(s);
    let scale = 1.0 + max_abs(&e[..7]);
    Ok([
        (e[6] - e[0]).norm() / scale,
        (e[5] - e[1]).norm() / scale,
        (e[4] - e[2]).norm() / scale,
        quartic_f(&e)?.norm() / scale.powi(4),
    ])
}

/// The three palindromic relations `e_7 = e_1`, `e_6 = e_2`, `e_5 = e_3`
/// together with `F = 0`.
pub fn is_222_product(s: &SpectralClass, tol: f64) -> Result<bool> {
    Ok(criterion_222_residuals(s)?.iter().all(|&r| r <= tol))
}

/// Whether the multiset is closed under `z -> 1/z`.
pub fn is_inversion_closed(s: &SpectralClass, tol: f64) -> bool {
    let inv: Vec<C64> = s.eigenvalues().iter().map(|z| z.inv()).collect();
    multiset_match(s.eigenvalues(), &inv, tol)
}

/// Whether `e_k = e_{n-k}` for all `k`, i.e. the characteristic polynomial
/// is palindromic.
pub fn is_palindromic(s: &SpectralClass, tol: f64) -> bool {
    let mut e = vec![ONE];
    e.extend(elem_sym(s));
    let n = s.len();
    let scale = 1.0 + max_abs(&e);
    (0..=n).all(|k| (e[k] - e[n - k]).norm() <= tol * scale)
}

/// Perfect matching between two multisets with `|x - y| <= tol * max(1, |y|)`.
pub(crate) fn multiset_match(xs: &[C64], ys: &[C64], tol: f64) -> bool {
    if xs.len() != ys.len() {
        return false;
    }
    let close = |x: C64, y: C64| (x - y).norm() <= tol * y.norm().max(1.0);
    let adj: Vec<Vec<usize>> =
        xs.iter().map(|&x| (0..ys.len()).filter(|&j| close(x, ys[j])).collect()).collect();
    let mut owner: Vec<Option<usize>> = vec![None; ys.len()];
    fn augment(i: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &j in &adj[i] {
            if !seen[j] {
                seen[j] = true;
                if owner[j].is_none_or(|k| augment(k, adj, seen, owner)) {
                    owner[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    (0..xs.len()).all(|i| augment(i, &adj, &mut vec![false; ys.len()], &mut owner))
}

/// Exhaustive search for local spectra with unit-product factors whose
/// tensor spectrum is `s`.
///
/// The eigenvalue `s[0]` is placed at the all-zero slot; for each factor a
/// set of `d_i - 1` further eigenvalues fills the slots differing from it in
/// that factor only, which fixes every ratio `a_{i,j} / a_{i,0}`. The
/// remaining freedom is a `d_i`-th root per factor, constrained by
/// `prod_i a_{i,0} = s[0]`. Factors of equal size are searched with
/// increasing index sets only.
pub fn d_product_oracle(s: &SpectralClass, d: &[usize], tol: f64) -> Result<Option<LocalSpectra>> {
    if d.is_empty() || d.contains(&0) {
        return Err(Error::Invalid("dimension list must be nonempty and positive".into()));
    }
    let n: usize = d.iter().try_fold(1usize, |acc, &x| acc.checked_mul(x)).unwrap_or(usize::MAX);
    if n > MAX_ORACLE_SIZE {
        return Err(Error::TooLarge(format!("spectrum size {n} exceeds {MAX_ORACLE_SIZE}")));
    }
    if n != s.len() {
        return Err(Error::WrongSize { expected: n, got: s.len() });
    }
    let z = s.eigenvalues();
    let mut search = AxisSearch { z, d, tol, chosen: Vec::with_capacity(d.len()), used: vec![false; n] };
    search.used[0] = true;
    Ok(search.run())
}

struct AxisSearch<'a> {
    z: &'a [C64],
    d: &'a [usize],
    tol: f64,
    chosen: Vec<Vec<usize>>,
    used: Vec<bool>,
}

impl AxisSearch<'_> {
    fn run(&mut self) -> Option<LocalSpectra> {
        let i = self.chosen.len();
        if i == self.d.len() {
            return self.finish();
        }
        let lower = match i.checked_sub(1) {
            Some(prev) if self.d[prev] == self.d[i] => self.chosen[prev].clone(),
            _ => Vec::new(),
        };
        let free: Vec<usize> = (1..self.z.len()).filter(|&k| !self.used[k]).collect();
        for set in k_subsets(&free, self.d[i] - 1) {
            if !lower.is_empty() && set < lower {
                continue;
            }
            for &k in &set {
                self.used[k] = true;
            }
            self.chosen.push(set);
            let found = self.run();
            let set = self.chosen.pop().expect("pushed above");
            for &k in &set {
                self.used[k] = false;
            }
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn finish(&self) -> Option<LocalSpectra> {
        let z0 = self.z[0];
        let ratios: Vec<Vec<C64>> = self
            .chosen
            .iter()
            .map(|set| std::iter::once(ONE).chain(set.iter().map(|&k| self.z[k] / z0)).collect())
            .collect();
        let mut predicted = vec![z0];
        for r in &ratios {
            predicted = predicted.iter().flat_map(|p| r.iter().map(move |q| p * q)).collect();
        }
        if !multiset_match(&predicted, self.z, self.tol) {
            return None;
        }
        // a_{i,0}^{d_i} * prod_j ratio_{i,j} = 1
        let bases: Vec<C64> = ratios
            .iter()
            .map(|r| principal_root(r.iter().product::<C64>().inv(), r.len()))
            .collect();
        let mut twist = vec![0usize; self.d.len()];
        loop {
            let a0: Vec<C64> = bases
                .iter()
                .zip(&twist)
                .zip(self.d)
                .map(|((b, &k), &di)| b * C64::from_polar(1.0, TAU * k as f64 / di as f64))
                .collect();
            if (a0.iter().product::<C64>() - z0).norm() <= self.tol * z0.norm().max(1.0) {
                let factors = ratios.iter().zip(&a0).map(|(r, a)| r.iter().map(|q| a * q).collect()).collect();
                return LocalSpectra::new(factors).ok();
            }
            let mut i = 0;
            loop {
                if i == twist.len() {
                    return None;
                }
                twist[i] += 1;
                if twist[i] < self.d[i] {
                    break;
                }
                twist[i] = 0;
                i += 1;
            }
        }
    }
}

/// All `k`-element subsets of `xs` in lexicographic order.
fn k_subsets(xs: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if xs.len() < k {
        return Vec::new();
    }
    let mut out: Vec<Vec<usize>> =
        k_subsets(&xs[1..], k - 1).into_iter().map(|t| [&[xs[0]][..], &t].concat()).collect();
    out.extend(k_subsets(&xs[1..], k));
    out
}

/// The necessary sphericity inequality `n^2 - n - 2 sum d_i^2 + 2r <= 0`
/// with `n = prod d_i`; false whenever `r < 2` or some `d_i < 2`.
pub fn sphericity_check(d: &[usize]) -> bool {
    if d.len() < 2 || d.iter().any(|&x| x < 2) {
        return false;
    }
    let n: i64 = d.iter().map(|&x| x as i64).product();
    let sq: i64 = d.iter().map(|&x| (x * x) as i64).sum();
    n * n - n - 2 * sq + 2 * d.len() as i64 <= 0
}
