//! Small dense complex linear-algebra helpers shared by the other modules.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Singular values in descending order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    sorted_svd(m).0
}

/// Thin SVD with singular triples sorted by descending singular value.
/// Returns `(sigma, u_columns, v_columns)` with `m = sum_a sigma_a u_a v_a^dagger`
/// and `min(rows, cols)` triples.
///
/// One-sided Jacobi on the tall orientation. nalgebra's complex SVD is not
/// used: on rank-deficient wide inputs its factors fail to recompose `m`.
pub fn sorted_svd(m: &CMatrix) -> (Vec<f64>, Vec<CVector>, Vec<CVector>) {
    if m.is_empty() {
        return (Vec::new(), Vec::new(), Vec::new());
    }
    if m.nrows() < m.ncols() {
        // m^dagger = U S V^dagger gives m = V S U^dagger
        let (s, u, v) = jacobi_svd(m.adjoint());
        return (s, v, u);
    }
    jacobi_svd(m.clone())
}

const JACOBI_MAX_SWEEPS: usize = 80;

/// Hestenes iteration on `w = a v`: rotates column pairs of `w` until all are
/// orthogonal, applying the same rotations to `v`. Requires `rows >= cols`.
fn jacobi_svd(mut w: CMatrix) -> (Vec<f64>, Vec<CVector>, Vec<CVector>) {
    let (rows, cols) = w.shape();
    let mut v = CMatrix::identity(cols, cols);
    let eps = f64::EPSILON * rows as f64;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha = w.column(p).norm_squared();
                let beta = w.column(q).norm_squared();
                let gamma = w.column(p).dotc(&w.column(q));
                let g = gamma.norm();
                if g == 0.0 || g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // with column q rephased by conj(gamma)/|gamma| the pair is real
                let phase = gamma.conj() / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for mat in [&mut w, &mut v] {
                    for r in 0..mat.nrows() {
                        let x = mat[(r, p)];
                        let y = mat[(r, q)] * phase;
                        mat[(r, p)] = x * cs - y * sn;
                        mat[(r, q)] = x * sn + y * cs;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let sigma: Vec<f64> = (0..cols).map(|j| w.column(j).norm()).collect();
    let mut idx: Vec<usize> = (0..cols).collect();
    idx.sort_by(|&a, &b| sigma[b].total_cmp(&sigma[a]));
    let mut us: Vec<CVector> = Vec::with_capacity(cols);
    for &j in &idx {
        let u = if sigma[j] > 0.0 {
            w.column(j) / C64::new(sigma[j], 0.0)
        } else {
            complete_orthonormal(&us, rows)
        };
        us.push(u);
    }
    let sig = idx.iter().map(|&j| sigma[j]).collect();
    let vs = idx.iter().map(|&j| v.column(j).into_owned()).collect();
    (sig, us, vs)
}

/// A unit vector orthogonal to every vector of `basis`, found by
/// Gram-Schmidt on the standard basis. Requires `basis.len() < n`.
fn complete_orthonormal(basis: &[CVector], n: usize) -> CVector {
    let mut best = CVector::zeros(n);
    let mut best_norm = -1.0;
    for k in 0..n {
        let mut x = CVector::zeros(n);
        x[k] = ONE;
        for b in basis {
            let proj = b.dotc(&x);
            x -= b * proj;
        }
        let nx = x.norm();
        if nx > best_norm {
            best_norm = nx;
            best = x;
        }
        if nx > 0.5 {
            break;
        }
    }
    &best / C64::new(best_norm, 0.0)
}

/// Count of singular values above `rel_tol` times the largest one.
pub fn numerical_rank_of(m: &CMatrix, rel_tol: f64) -> usize {
    let s = singular_values(m);
    match s.first() {
        Some(&top) if top > 0.0 => s.iter().filter(|&&x| x > rel_tol * top).count(),
        _ => 0,
    }
}

/// Same verdict as `numerical_rank_of(m, rel_tol) == 1`, usually without an
/// SVD. With `e` the residual of the cross approximation through the largest
/// entry (size `r x c`, `k = min(r, c)`):
/// every `e_ij` is a 2x2 minor over the pivot, so `|e_ij| <= sqrt(rc) s2`;
/// and `s2 <= |e|_F` because the cross approximation has rank one.
pub fn is_rank_one(m: &CMatrix, rel_tol: f64) -> bool {
    let (rows, cols) = m.shape();
    let Some((pi, pj)) = argmax_modulus(m) else { return false };
    let pivot = m[(pi, pj)];
    if pivot == ZERO {
        return false;
    }
    let fro = m.norm();
    let reject = (rows as f64 * cols as f64).sqrt() * rel_tol * fro;
    let accept = rel_tol * fro / (rows.min(cols) as f64).sqrt();
    let mut err_sq = 0.0;
    for j in 0..cols {
        let scale = m[(pi, j)] / pivot;
        for i in 0..rows {
            let e = (m[(i, j)] - m[(i, pj)] * scale).norm();
            if e > reject {
                return false;
            }
            err_sq += e * e;
        }
    }
    if err_sq.sqrt() <= accept {
        return true;
    }
    numerical_rank_of(m, rel_tol) == 1
}

fn argmax_modulus(m: &CMatrix) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), f64)> = None;
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            let x = m[(i, j)].norm_sqr();
            if best.is_none_or(|(_, b)| x > b) {
                best = Some(((i, j), x));
            }
        }
    }
    best.map(|(ij, _)| ij)
}

pub fn max_modulus(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Determinant via partial-pivot LU; the empty matrix has determinant one.
pub fn det(m: &CMatrix) -> C64 {
    if m.nrows() == 0 {
        return ONE;
    }
    m.clone().lu().determinant()
}

/// Returns the scalar `c` if `m` equals `c * I` up to `rel_tol * max(|c|, max|m|)`.
pub fn as_scalar(m: &CMatrix, rel_tol: f64) -> Option<C64> {
    let n = m.nrows();
    if n == 0 || n != m.ncols() {
        return None;
    }
    let c = m.trace() / n as f64;
    let scale = c.norm().max(max_modulus(m));
    if scale == 0.0 {
        return None;
    }
    for i in 0..n {
        for j in 0..n {
            let expect = if i == j { c } else { ZERO };
            if (m[(i, j)] - expect).norm() > rel_tol * scale {
                return None;
            }
        }
    }
    Some(c)
}

/// Integer matrix power, negative exponents through the inverse.
pub fn matrix_pow(m: &CMatrix, k: i64) -> Option<CMatrix> {
    let base = if k < 0 { m.clone().try_inverse()? } else { m.clone() };
    let mut out = CMatrix::identity(m.nrows(), m.ncols());
    for _ in 0..k.unsigned_abs() {
        out = &out * &base;
    }
    Some(out)
}

/// Orthogonal projector onto the span of orthonormal columns.
pub fn projector(basis: &[CVector]) -> CMatrix {
    let n = basis.first().map_or(0, |v| v.len());
    let mut p = CMatrix::zeros(n, n);
    for v in basis {
        p += v * v.adjoint();
    }
    p
}

/// Builds a complex matrix from real rows.
pub fn real_matrix(rows: &[&[f64]]) -> CMatrix {
    let r = rows.len();
    let c = rows.first().map_or(0, |x| x.len());
    CMatrix::from_fn(r, c, |i, j| C64::new(rows[i][j], 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Deterministic pseudo-random entries without a dev-dependency on rand.
    fn lcg_matrix(rows: usize, cols: usize, seed: &mut u64) -> CMatrix {
        let mut next = || {
            *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (*seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        CMatrix::from_fn(rows, cols, |_, _| c(next(), next()))
    }

    fn check_svd(m: &CMatrix) {
        let (s, us, vs) = sorted_svd(m);
        let k = m.nrows().min(m.ncols());
        assert_eq!((s.len(), us.len(), vs.len()), (k, k, k));
        assert!(s.windows(2).all(|w| w[0] >= w[1]));
        let mut rec = CMatrix::zeros(m.nrows(), m.ncols());
        for i in 0..k {
            rec += &us[i] * vs[i].adjoint() * c(s[i], 0.0);
            for j in 0..k {
                let want = if i == j { ONE } else { ZERO };
                assert!((us[i].dotc(&us[j]) - want).norm() < 1e-12, "u gram ({i},{j})");
                assert!((vs[i].dotc(&vs[j]) - want).norm() < 1e-12, "v gram ({i},{j})");
            }
        }
        assert!((rec - m).norm() <= 1e-12 * (1.0 + m.norm()));
    }

    #[test]
    fn svd_recomposes_rank_deficient_wide_and_tall() {
        let mut seed = 7;
        for (rows, cols, rank) in [(4, 24, 1), (24, 4, 1), (6, 6, 3), (8, 3, 2), (3, 8, 3), (5, 5, 0), (1, 7, 1), (9, 9, 9)] {
            let m = if rank == 0 {
                CMatrix::zeros(rows, cols)
            } else {
                lcg_matrix(rows, rank, &mut seed) * lcg_matrix(rank, cols, &mut seed)
            };
            check_svd(&m);
            assert_eq!(numerical_rank_of(&m, 1e-9), rank, "{rows}x{cols}");
        }
    }

    #[test]
    fn rank_one_shortcut_agrees_with_svd() {
        let mut seed = 11;
        for trial in 0..300 {
            let (rows, cols) = (1 + trial % 5, 1 + (trial / 5) % 6);
            let base = lcg_matrix(rows, 1, &mut seed) * lcg_matrix(1, cols, &mut seed);
            // perturbations straddling the tolerance band
            let eps = [0.0, 1e-13, 1e-10, 1e-9, 1e-8, 1e-3, 1.0][trial % 7];
            let m = base + lcg_matrix(rows, cols, &mut seed) * c(eps, 0.0);
            for tol in [1e-9, 1e-6] {
                assert_eq!(is_rank_one(&m, tol), numerical_rank_of(&m, tol) == 1, "trial {trial} eps {eps} tol {tol}");
            }
        }
        assert!(!is_rank_one(&CMatrix::zeros(2, 2), 1e-9));
    }

    #[test]
    fn svd_of_known_matrix() {
        let m = CMatrix::from_row_slice(2, 3, &[c(3.0, 0.0), ZERO, ZERO, ZERO, c(0.0, -4.0), ZERO]);
        let (s, _, _) = sorted_svd(&m);
        assert!((s[0] - 4.0).abs() < 1e-15 && (s[1] - 3.0).abs() < 1e-15);
        check_svd(&m);
        assert!(sorted_svd(&CMatrix::zeros(0, 3)).0.is_empty());
    }
}
