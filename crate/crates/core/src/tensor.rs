//! Dense pure states, flattenings and the rank tests built on them.
//!
//! States are projective: nothing here normalizes a state on construction,
//! and every rank or membership verdict is invariant under rescaling the
//! coefficient vector by a nonzero scalar.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, C64, ONE, ZERO};

/// Relative singular-value threshold used when no tolerance is given.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

/// Largest matrix side accepted by the exhaustive minor enumeration.
pub const MINOR_SIZE_CAP: usize = 8;

/// A pure state on `H_1 ⊗ ... ⊗ H_N`, stored densely in row-major order
/// (last subsystem index fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dims: Vec<usize>,
    coeffs: Vec<C64>,
}

/// Validates and wraps a coefficient vector.
pub fn make_state(dims: &[usize], coeffs: Vec<C64>) -> Result<PureState> {
    PureState::new(dims.to_vec(), coeffs)
}

impl PureState {
    pub fn new(dims: Vec<usize>, coeffs: Vec<C64>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::ShapeMismatch("state needs at least one subsystem".into()));
        }
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::ShapeMismatch(format!("subsystem dimension {d} < 2")));
        }
        let n = dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::TooLarge("dimension product overflows".into()))?;
        if n != coeffs.len() {
            return Err(Error::ShapeMismatch(format!(
                "dims {dims:?} need {n} coefficients, got {}",
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Invalid("non-finite coefficient".into()));
        }
        if coeffs.iter().all(|z| z.norm() == 0.0) {
            return Err(Error::ZeroState);
        }
        Ok(Self { dims, coeffs })
    }

    /// Computational basis vector `|i_1 ... i_N>`.
    pub fn basis(dims: &[usize], index: &[usize]) -> Result<Self> {
        if index.len() != dims.len() || index.iter().zip(dims).any(|(&i, &d)| i >= d) {
            return Err(Error::ShapeMismatch(format!("index {index:?} outside dims {dims:?}")));
        }
        let n: usize = dims.iter().product();
        let mut coeffs = vec![ZERO; n];
        coeffs[flat_index(dims, index)] = ONE;
        Self::new(dims.to_vec(), coeffs)
    }

    /// Tensor product of single-subsystem vectors, in the given order.
    pub fn product(factors: &[Vec<C64>]) -> Result<Self> {
        let dims: Vec<usize> = factors.iter().map(Vec::len).collect();
        let mut coeffs = vec![ONE];
        for f in factors {
            coeffs = coeffs
                .iter()
                .flat_map(|&a| f.iter().map(move |&b| a * b))
                .collect();
        }
        Self::new(dims, coeffs)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn n_subsystems(&self) -> usize {
        self.dims.len()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Self {
            dims: self.dims.clone(),
            coeffs: self.coeffs.iter().map(|z| z / n).collect(),
        }
    }

    pub fn scaled(&self, lambda: C64) -> Result<Self> {
        Self::new(self.dims.clone(), self.coeffs.iter().map(|z| z * lambda).collect())
    }

    /// `<self|other>`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        if self.dims != other.dims {
            return Err(Error::ShapeMismatch("inner product of different shapes".into()));
        }
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn as_vector(&self) -> CVector {
        CVector::from_column_slice(&self.coeffs)
    }

    /// Applies a linear operator of size `len x len` to the coefficient vector.
    pub fn apply(&self, op: &CMatrix) -> Result<Self> {
        if op.nrows() != self.len() || op.ncols() != self.len() {
            return Err(Error::ShapeMismatch(format!(
                "operator is {}x{}, state has {} coefficients",
                op.nrows(),
                op.ncols(),
                self.len()
            )));
        }
        let out = op * self.as_vector();
        Self::new(self.dims.clone(), out.iter().copied().collect())
    }

    /// Same coefficients read with a different dimension vector.
    pub fn reshaped(&self, dims: Vec<usize>) -> Result<Self> {
        Self::new(dims, self.coeffs.clone())
    }
}

pub(crate) fn flat_index(dims: &[usize], index: &[usize]) -> usize {
    index.iter().zip(dims).fold(0, |acc, (&i, &d)| acc * d + i)
}

/// Sine of the principal angle between two rays.
pub fn projective_distance(a: &PureState, b: &PureState) -> Result<f64> {
    let ov = a.inner(b)?.norm() / (a.norm() * b.norm());
    Ok((1.0 - ov.min(1.0).powi(2)).max(0.0).sqrt())
}

/// A cut `A | A^c` of the subsystem indices. The canonical form keeps
/// subsystem 0 in `block_a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bipartition {
    n: usize,
    block_a: Vec<usize>,
}

impl Bipartition {
    pub fn new(n: usize, block: &[usize]) -> Result<Self> {
        let mut a: Vec<usize> = block.to_vec();
        a.sort_unstable();
        a.dedup();
        if let Some(&bad) = a.iter().find(|&&i| i >= n) {
            return Err(Error::ShapeMismatch(format!("index {bad} outside 0..{n}")));
        }
        if a.is_empty() || a.len() == n {
            return Err(Error::ShapeMismatch("cut block must be a nonempty proper subset".into()));
        }
        if a[0] != 0 {
            a = (0..n).filter(|i| !a.contains(i)).collect();
        }
        Ok(Self { n, block_a: a })
    }

    pub fn n_subsystems(&self) -> usize {
        self.n
    }

    pub fn block_a(&self) -> &[usize] {
        &self.block_a
    }

    pub fn block_b(&self) -> Vec<usize> {
        (0..self.n).filter(|i| !self.block_a.contains(i)).collect()
    }
}

/// `M_{A|B}(psi)`: rows indexed by the `A` digits, columns by the `B` digits.
#[derive(Debug, Clone, PartialEq)]
pub struct FlatteningMatrix {
    matrix: CMatrix,
    cut: Bipartition,
}

impl FlatteningMatrix {
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn cut(&self) -> &Bipartition {
        &self.cut
    }

    pub fn rows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.ncols()
    }
}

pub fn flatten(state: &PureState, cut: &Bipartition) -> Result<FlatteningMatrix> {
    if cut.n != state.n_subsystems() {
        return Err(Error::ShapeMismatch(format!(
            "cut is over {} subsystems, state has {}",
            cut.n,
            state.n_subsystems()
        )));
    }
    let dims = state.dims();
    let n = dims.len();
    // stride of each subsystem within its side, last index fastest
    let mut in_a = vec![false; n];
    for &i in cut.block_a() {
        in_a[i] = true;
    }
    let mut stride = vec![0usize; n];
    let (mut rows, mut cols) = (1usize, 1usize);
    for i in (0..n).rev() {
        if in_a[i] {
            stride[i] = rows;
            rows *= dims[i];
        } else {
            stride[i] = cols;
            cols *= dims[i];
        }
    }
    let mut m = CMatrix::zeros(rows, cols);
    let mut digit = vec![0usize; n];
    let (mut r, mut c) = (0usize, 0usize);
    for &z in state.coeffs() {
        m[(r, c)] = z;
        // odometer step on the multi-index, updating (r, c) incrementally
        for i in (0..n).rev() {
            let side = if in_a[i] { &mut r } else { &mut c };
            digit[i] += 1;
            *side += stride[i];
            if digit[i] < dims[i] {
                break;
            }
            *side -= stride[i] * dims[i];
            digit[i] = 0;
        }
    }
    Ok(FlatteningMatrix { matrix: m, cut: cut.clone() })
}

/// Number of singular values above `tol` times the largest.
pub fn numerical_rank(m: &CMatrix, tol: f64) -> usize {
    linalg::numerical_rank_of(m, tol)
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Rank by exhaustive minor enumeration: the smallest `k` such that every
/// `(k+1)`-minor of the max-modulus-normalized matrix is at most `tol`.
pub fn minor_rank(m: &CMatrix, tol: f64) -> Result<usize> {
    let (r, c) = m.shape();
    if r > MINOR_SIZE_CAP || c > MINOR_SIZE_CAP {
        return Err(Error::TooLarge(format!("{r}x{c} exceeds the {MINOR_SIZE_CAP}x{MINOR_SIZE_CAP} minor cap")));
    }
    let scale = linalg::max_modulus(m);
    if scale == 0.0 {
        return Ok(0);
    }
    let m = m / C64::new(scale, 0.0);
    for k in 0..r.min(c) {
        let size = k + 1;
        let row_sets = combinations(r, size);
        let col_sets = combinations(c, size);
        let any_big = row_sets.iter().any(|rows| {
            col_sets.iter().any(|cols| {
                let sub = CMatrix::from_fn(size, size, |i, j| m[(rows[i], cols[j])]);
                linalg::det(&sub).norm() > tol
            })
        });
        if !any_big {
            return Ok(k);
        }
    }
    Ok(r.min(c))
}

/// `psi = sum_a sigma_a u_a ⊗ v_a` for the normalized state.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtDecomposition {
    pub sigmas: Vec<f64>,
    pub left_vecs: Vec<CVector>,
    pub right_vecs: Vec<CVector>,
    /// Norm of the input state; the decomposition describes `psi / scale`.
    pub scale: f64,
}

impl SchmidtDecomposition {
    pub fn rank(&self) -> usize {
        self.sigmas.len()
    }

    /// `sum_a sigma_a u_a v_a^T` as a flattening-shaped matrix.
    pub fn reassemble(&self) -> CMatrix {
        let rows = self.left_vecs.first().map_or(0, |v| v.len());
        let cols = self.right_vecs.first().map_or(0, |v| v.len());
        let mut m = CMatrix::zeros(rows, cols);
        for ((s, u), v) in self.sigmas.iter().zip(&self.left_vecs).zip(&self.right_vecs) {
            m += u * v.transpose() * C64::new(*s, 0.0);
        }
        m
    }
}

fn phase_fix(u: &mut CVector, v: &mut CVector) {
    if let Some(first) = u.iter().copied().find(|z| z.norm() > 1e-12) {
        let ph = first / first.norm();
        *u /= ph;
        *v *= ph;
    }
}

fn lex_cmp(a: &CVector, b: &CVector) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        let o = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

/// Schmidt decomposition across `cut`, after normalizing the state.
///
/// Singular values at or below the default relative rank threshold are
/// dropped. Each left vector has its first nonvanishing component real
/// positive; equal singular values are ordered lexicographically on the
/// phase-fixed left vectors.
pub fn schmidt_decompose(state: &PureState, cut: &Bipartition) -> Result<SchmidtDecomposition> {
    let scale = state.norm();
    let flat = flatten(&state.normalized(), cut)?;
    let (sig, us, vs) = linalg::sorted_svd(flat.matrix());
    let top = sig.first().copied().unwrap_or(0.0);
    let mut triples: Vec<(f64, CVector, CVector)> = sig
        .into_iter()
        .zip(us)
        .zip(vs)
        .filter(|((s, _), _)| *s > DEFAULT_RANK_TOL * top)
        .map(|((s, u), v)| {
            // M = sum s u v^dagger, so the tensor-side right vector is conj(v).
            let mut u = u;
            let mut v = v.map(|z| z.conj());
            phase_fix(&mut u, &mut v);
            (s, u, v)
        })
        .collect();
    triples.sort_by(|a, b| {
        if (a.0 - b.0).abs() <= 1e-12 * top {
            lex_cmp(&a.1, &b.1)
        } else {
            b.0.total_cmp(&a.0)
        }
    });
    let mut out = SchmidtDecomposition {
        sigmas: Vec::new(),
        left_vecs: Vec::new(),
        right_vecs: Vec::new(),
        scale,
    };
    for (s, u, v) in triples {
        out.sigmas.push(s);
        out.left_vecs.push(u);
        out.right_vecs.push(v);
    }
    Ok(out)
}

/// Schmidt rank across `cut` at the default tolerance.
pub fn schmidt_rank(state: &PureState, cut: &Bipartition) -> Result<usize> {
    Ok(numerical_rank(flatten(state, cut)?.matrix(), DEFAULT_RANK_TOL))
}

/// Two-qubit concurrence `2|ad - bc|` of the normalized state.
pub fn concurrence(state: &PureState) -> Result<f64> {
    if state.dims() != [2, 2] {
        return Err(Error::WrongShape(format!(
            "concurrence needs two qubits, got dims {:?}",
            state.dims()
        )));
    }
    let s = state.normalized();
    let [a, b, c, d] = [s.coeffs[0], s.coeffs[1], s.coeffs[2], s.coeffs[3]];
    Ok(2.0 * (a * d - b * c).norm())
}

/// Matrix of signed `(n-1)`-minors, `C_ij = (-1)^(i+j) det(m without row i, col j)`,
/// i.e. the gradient of `det` at `m`. It vanishes exactly when `rank(m) <= n - 2`.
pub fn cofactor_matrix(m: &CMatrix) -> Result<CMatrix> {
    let (r, c) = m.shape();
    if r != c {
        return Err(Error::NotSquare { rows: r, cols: c });
    }
    if r > MINOR_SIZE_CAP {
        return Err(Error::TooLarge(format!("{r}x{r} exceeds the cofactor cap")));
    }
    Ok(CMatrix::from_fn(r, r, |i, j| {
        let minor = m.clone().remove_row(i).remove_column(j);
        let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
        linalg::det(&minor) * sign
    }))
}

/// `psi` written inside `U_A ⊗ U_B`, where `U_A` is the column space of the
/// flattening and `U_B` the column space of its transpose.
#[derive(Debug, Clone, PartialEq)]
pub struct IncidenceLift {
    pub ua_basis: Vec<CVector>,
    pub ub_basis: Vec<CVector>,
    pub core: CMatrix,
    pub cut: Bipartition,
}

impl IncidenceLift {
    pub fn rank(&self) -> usize {
        self.ua_basis.len()
    }

    /// `sum_ij core_ij ua_i ub_j^T`, flattening-shaped.
    pub fn reassemble(&self) -> CMatrix {
        let rows = self.ua_basis.first().map_or(0, |v| v.len());
        let cols = self.ub_basis.first().map_or(0, |v| v.len());
        let mut m = CMatrix::zeros(rows, cols);
        for (i, u) in self.ua_basis.iter().enumerate() {
            for (j, v) in self.ub_basis.iter().enumerate() {
                m += u * v.transpose() * self.core[(i, j)];
            }
        }
        m
    }

    pub fn projector_a(&self) -> CMatrix {
        linalg::projector(&self.ua_basis)
    }

    pub fn projector_b(&self) -> CMatrix {
        linalg::projector(&self.ub_basis)
    }
}

pub fn incidence_lift(state: &PureState, cut: &Bipartition, tol: f64) -> Result<IncidenceLift> {
    let flat = flatten(state, cut)?;
    let m = flat.matrix();
    let k = numerical_rank(m, tol);
    let (_, us, vs) = linalg::sorted_svd(m);
    let ua: Vec<CVector> = us.into_iter().take(k).collect();
    // Column space of M^T is spanned by the conjugated right singular vectors.
    let ub: Vec<CVector> = vs.into_iter().take(k).map(|v| v.map(|z| z.conj())).collect();
    let core = CMatrix::from_fn(k, k, |i, j| {
        (ua[i].adjoint() * m * ub[j].map(|z| z.conj()))[(0, 0)]
    });
    Ok(IncidenceLift { ua_basis: ua, ub_basis: ub, core, cut: cut.clone() })
}

/// `op = scalar I⊗I + a_local⊗I + I⊗b_local + entangling` on `C^{d_a} ⊗ C^{d_b}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorDecomposition {
    pub scalar: C64,
    pub a_local: CMatrix,
    pub b_local: CMatrix,
    pub entangling: CMatrix,
}

impl SectorDecomposition {
    pub fn reassemble(&self) -> CMatrix {
        let da = self.a_local.nrows();
        let db = self.b_local.nrows();
        let ia = CMatrix::identity(da, da);
        let ib = CMatrix::identity(db, db);
        CMatrix::identity(da * db, da * db) * self.scalar
            + self.a_local.kronecker(&ib)
            + ia.kronecker(&self.b_local)
            + &self.entangling
    }
}

/// `tr_B`: the `d_a x d_a` reduced operator.
pub fn partial_trace_b(op: &CMatrix, d_a: usize, d_b: usize) -> CMatrix {
    CMatrix::from_fn(d_a, d_a, |a, a2| {
        (0..d_b).map(|b| op[(a * d_b + b, a2 * d_b + b)]).sum()
    })
}

/// `tr_A`: the `d_b x d_b` reduced operator.
pub fn partial_trace_a(op: &CMatrix, d_a: usize, d_b: usize) -> CMatrix {
    CMatrix::from_fn(d_b, d_b, |b, b2| {
        (0..d_a).map(|a| op[(a * d_b + b, a * d_b + b2)]).sum()
    })
}

pub fn sector_decompose(op: &CMatrix, d_a: usize, d_b: usize) -> Result<SectorDecomposition> {
    let n = d_a.saturating_mul(d_b);
    if d_a == 0 || d_b == 0 || op.nrows() != n || op.ncols() != n {
        return Err(Error::ShapeMismatch(format!(
            "operator is {}x{}, expected {n}x{n}",
            op.nrows(),
            op.ncols()
        )));
    }
    let scalar = op.trace() / n as f64;
    let ia = CMatrix::identity(d_a, d_a);
    let ib = CMatrix::identity(d_b, d_b);
    let a_local = partial_trace_b(op, d_a, d_b) / C64::new(d_b as f64, 0.0) - &ia * scalar;
    let b_local = partial_trace_a(op, d_a, d_b) / C64::new(d_a as f64, 0.0) - &ib * scalar;
    let entangling = op
        - CMatrix::identity(n, n) * scalar
        - a_local.kronecker(&ib)
        - ia.kronecker(&b_local);
    Ok(SectorDecomposition { scalar, a_local, b_local, entangling })
}
