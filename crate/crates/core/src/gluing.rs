//! Weyl clock/shift operators, loop holonomies in `PGL(H)`, membership in
//! the local-operation group, and the four-site spin chain glued by a
//! lattice translation.

use std::f64::consts::{PI, TAU};

use nalgebra::SymmetricEigen;

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix, C64, ONE, ZERO};
use crate::tensor::{numerical_rank, PureState};

pub const MAX_WEYL_DIM: usize = 64;

/// Relative tolerance for deciding that an operator is central.
pub const CENTRAL_TOL: f64 = 1e-9;

/// Clock and shift on `C^m`: `X|r> = |r+1>`, `Z|r> = zeta^r |r>`, `ZX = zeta XZ`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylSystem {
    pub m: usize,
    pub zeta: C64,
    pub x_op: CMatrix,
    pub z_op: CMatrix,
}

impl WeylSystem {
    /// `X^{-1}`, the backward shift.
    pub fn x_inv(&self) -> CMatrix {
        self.x_op.transpose()
    }

    /// `Z^{-1} = Z^dagger`.
    pub fn z_inv(&self) -> CMatrix {
        self.z_op.adjoint()
    }
}

pub fn weyl_ops(m: usize) -> Result<WeylSystem> {
    if !(2..=MAX_WEYL_DIM).contains(&m) {
        return Err(Error::OutOfRange(format!("Weyl dimension {m} outside 2..={MAX_WEYL_DIM}")));
    }
    let zeta = C64::from_polar(1.0, TAU / m as f64);
    let x_op = CMatrix::from_fn(m, m, |i, j| if i == (j + 1) % m { ONE } else { ZERO });
    let z_op = CMatrix::from_fn(m, m, |i, j| {
        if i == j {
            C64::from_polar(1.0, TAU * i as f64 / m as f64)
        } else {
            ZERO
        }
    });
    Ok(WeylSystem { m, zeta, x_op, z_op })
}

/// Rescales `m` to determinant one, picking the root of `1/det` whose
/// argument lies in `[0, 2π/n)`.
pub fn det1_normalize(m: &CMatrix) -> Result<CMatrix> {
    let n = m.nrows() as f64;
    let d = linalg::det(m);
    if d.norm() <= 1e-300 || !d.norm().is_finite() {
        return Err(Error::Singular);
    }
    let arg = (-d.arg()).rem_euclid(TAU) / n;
    let lambda = C64::from_polar(d.norm().powf(-1.0 / n), arg);
    Ok(m * lambda)
}

/// An element of `PGL_n` carried by an invertible lift.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveOperator {
    lift: CMatrix,
}

impl ProjectiveOperator {
    pub fn new(lift: CMatrix) -> Result<Self> {
        if !lift.is_square() {
            return Err(Error::NotSquare { rows: lift.nrows(), cols: lift.ncols() });
        }
        let scale = linalg::max_modulus(&lift);
        if scale == 0.0 || !scale.is_finite() {
            return Err(Error::Singular);
        }
        let n = lift.nrows() as f64;
        if linalg::det(&(&lift / C64::new(scale, 0.0))).norm().powf(1.0 / n) <= 1e-12 {
            return Err(Error::Singular);
        }
        Ok(Self { lift })
    }

    pub fn identity(n: usize) -> Self {
        Self { lift: CMatrix::identity(n, n) }
    }

    pub fn lift(&self) -> &CMatrix {
        &self.lift
    }

    pub fn dim(&self) -> usize {
        self.lift.nrows()
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        Self::new(&self.lift * &other.lift)
    }

    pub fn inverse(&self) -> Result<Self> {
        Self::new(self.lift.clone().try_inverse().ok_or(Error::Singular)?)
    }

    /// Whether both lifts agree after scaling each by its max-modulus entry,
    /// entrywise within `tol`.
    pub fn proj_eq(&self, other: &Self, tol: f64) -> bool {
        if self.lift.shape() != other.lift.shape() {
            return false;
        }
        let norm = |m: &CMatrix| {
            let (k, _) = m
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
                .expect("nonempty");
            m / m[k]
        };
        let a = norm(&self.lift);
        let b = norm(&other.lift);
        a.iter().zip(b.iter()).all(|(x, y)| (x - y).norm() < tol)
    }

    /// Whether the class is trivial in `PGL_n`.
    pub fn is_identity_class(&self, tol: f64) -> bool {
        self.proj_eq(&Self::identity(self.dim()), tol)
    }
}

/// A loop word over `{u, U, v, V}` at a base point on the unit torus, with
/// Weyl dimension `m = p^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct HolonomyConfig {
    pub p: usize,
    pub base_point: (C64, C64),
    pub loop_word: String,
}

impl HolonomyConfig {
    pub fn new(p: usize, loop_word: &str) -> Self {
        Self { p, base_point: (ONE, ONE), loop_word: loop_word.to_string() }
    }

    /// Saturates so oversized `p` fails the range check instead of overflowing.
    pub fn m(&self) -> usize {
        self.p.saturating_mul(self.p)
    }
}

/// One loop letter: `u`/`v` are the generators, capitals their inverses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoopLetter {
    U,
    UInv,
    V,
    VInv,
}

pub fn parse_loop_word(word: &str) -> Result<Vec<LoopLetter>> {
    if word.is_empty() {
        return Err(Error::Invalid("empty loop word".into()));
    }
    word.chars()
        .map(|ch| match ch {
            'u' => Ok(LoopLetter::U),
            'U' => Ok(LoopLetter::UInv),
            'v' => Ok(LoopLetter::V),
            'V' => Ok(LoopLetter::VInv),
            other => Err(Error::BadWord(other)),
        })
        .collect()
}

/// Holonomy of a loop word: `u -> [Z]`, `v -> [X^{-1}]`, capitals invert;
/// letters are multiplied left to right. Each letter's lift is normalized to
/// determinant one, so central scalars of the product are exact roots of unity.
///
/// The class does not depend on the base point: the branch-scaled generators
/// at `(u0, v0)` differ from `Z`, `X^{-1}` only by scalars.
pub fn loop_holonomy(cfg: &HolonomyConfig) -> Result<ProjectiveOperator> {
    if cfg.p < 2 || cfg.m() > MAX_WEYL_DIM {
        return Err(Error::OutOfRange(format!("p = {} gives m outside 4..={MAX_WEYL_DIM}", cfg.p)));
    }
    let (u0, v0) = cfg.base_point;
    if (u0.norm() - 1.0).abs() > 1e-12 || (v0.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::OutOfRange("base point must lie on the unit torus".into()));
    }
    let letters = parse_loop_word(&cfg.loop_word)?;
    let w = weyl_ops(cfg.m())?;
    let g_u = det1_normalize(&w.z_op)?;
    let g_v = det1_normalize(&w.x_inv())?;
    let mut acc = CMatrix::identity(w.m, w.m);
    for l in letters {
        let step = match l {
            LoopLetter::U => g_u.clone(),
            LoopLetter::UInv => g_u.adjoint(),
            LoopLetter::V => g_v.clone(),
            LoopLetter::VInv => g_v.adjoint(),
        };
        acc *= step;
    }
    ProjectiveOperator::new(acc)
}

/// The scalar `g h g^{-1} h^{-1}`, normalized to modulus one.
pub fn commutator_scalar(g: &CMatrix, h: &CMatrix) -> Result<C64> {
    if g.shape() != h.shape() || !g.is_square() {
        return Err(Error::ShapeMismatch("commutator of differently shaped lifts".into()));
    }
    let gi = g.clone().try_inverse().ok_or(Error::Singular)?;
    let hi = h.clone().try_inverse().ok_or(Error::Singular)?;
    let comm = g * h * gi * hi;
    let s = linalg::as_scalar(&comm, CENTRAL_TOL).ok_or(Error::NotCentral)?;
    Ok(s / s.norm())
}

/// Reshapes an operator on `C^{d_a} ⊗ C^{d_b}` into the `d_a^2 x d_b^2`
/// matrix `R[(a,a'),(b,b')] = g[(a,b),(a',b')]`; rank one iff `g = A ⊗ B`.
pub fn realign(g: &CMatrix, d_a: usize, d_b: usize) -> CMatrix {
    CMatrix::from_fn(d_a * d_a, d_b * d_b, |row, col| {
        let (a, a2) = (row / d_a, row % d_a);
        let (b, b2) = (col / d_b, col % d_b);
        g[(a * d_b + b, a2 * d_b + b2)]
    })
}

/// Permutation exchanging the two factors of `C^d ⊗ C^d`.
pub fn swap_operator(d: usize) -> CMatrix {
    let n = d * d;
    CMatrix::from_fn(n, n, |i, j| {
        let (a, b) = (j / d, j % d);
        if i == b * d + a {
            ONE
        } else {
            ZERO
        }
    })
}

/// Membership in the stabilizer of the Segre variety: `g ≅ A ⊗ B`, or, when
/// `d_a = d_b`, `g ≅ SWAP (A ⊗ B)`.
pub fn is_local_operator(g: &ProjectiveOperator, d_a: usize, d_b: usize, tol: f64) -> Result<bool> {
    if d_a.saturating_mul(d_b) != g.dim() {
        return Err(Error::ShapeMismatch(format!(
            "operator of size {} cannot act on {d_a}x{d_b}",
            g.dim()
        )));
    }
    if numerical_rank(&realign(g.lift(), d_a, d_b), tol) == 1 {
        return Ok(true);
    }
    if d_a == d_b {
        let swapped = swap_operator(d_a) * g.lift();
        return Ok(numerical_rank(&realign(&swapped, d_a, d_b), tol) == 1);
    }
    Ok(false)
}

/// `r = a + p b` with digits `a, b` in `0..p`.
pub fn qudit_encode(r: usize, p: usize) -> Result<(usize, usize)> {
    if p < 2 || r >= p.saturating_mul(p) {
        return Err(Error::OutOfRange(format!("index {r} outside 0..{p}^2")));
    }
    Ok((r % p, r / p))
}

/// Reads a vector on `C^{p^2}` as a state on `C^p ⊗ C^p` through `r = a + p b`,
/// with `|a>_A ⊗ |b>_B` in the usual row-major tensor layout.
pub fn to_qudit_pair(state: &PureState, p: usize) -> Result<PureState> {
    if state.len() != p.saturating_mul(p) {
        return Err(Error::ShapeMismatch(format!("{} coefficients, expected {p}^2", state.len())));
    }
    let mut out = vec![ZERO; p * p];
    for (r, &z) in state.coeffs().iter().enumerate() {
        let (a, b) = qudit_encode(r, p)?;
        out[a * p + b] = z;
    }
    PureState::new(vec![p, p], out)
}

/// Inverse of [`to_qudit_pair`].
pub fn from_qudit_pair(state: &PureState) -> Result<PureState> {
    let p = state.dims()[0];
    if state.dims() != [p, p] {
        return Err(Error::ShapeMismatch(format!("expected dims [p,p], got {:?}", state.dims())));
    }
    let mut out = vec![ZERO; p * p];
    for a in 0..p {
        for b in 0..p {
            out[a + p * b] = state.coeffs()[a * p + b];
        }
    }
    PureState::new(vec![p * p], out)
}

/// Conjugates an operator on `C^{p^2}` into the `C^p ⊗ C^p` tensor basis.
pub fn to_qudit_basis(g: &CMatrix, p: usize) -> CMatrix {
    let n = p * p;
    let perm = CMatrix::from_fn(n, n, |i, r| if i == (r % p) * p + r / p { ONE } else { ZERO });
    &perm * g * perm.transpose()
}

/// How a state's coefficients line up with the operator's basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Encoding {
    /// Coefficients are used in storage order.
    Direct,
    /// The state is on `C^p ⊗ C^p` and the operator on `C^{p^2}` via `r = a + p b`.
    Qudit { p: usize },
}

pub fn apply_holonomy(g: &ProjectiveOperator, state: &PureState, encoding: Encoding) -> Result<PureState> {
    match encoding {
        Encoding::Direct => state.apply(g.lift()),
        Encoding::Qudit { p } => {
            if state.dims() != [p, p] {
                return Err(Error::ShapeMismatch(format!("expected dims [{p},{p}], got {:?}", state.dims())));
            }
            let flat = from_qudit_pair(state)?.apply(g.lift())?;
            to_qudit_pair(&flat, p)
        }
    }
}

/// Four-site chain restricted to one magnon, with a Peierls phase `u^{1/4}`
/// on the `(0,1)` bond and a penalty `Δ` on sites 2, 3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinChainParams {
    pub j_coupling: f64,
    pub delta: f64,
    pub theta_u: f64,
    pub branch_offset: u8,
}

impl SpinChainParams {
    pub fn new(j_coupling: f64, delta: f64, theta_u: f64, branch_offset: u8) -> Result<Self> {
        if !(j_coupling > 0.0 && delta > j_coupling && delta.is_finite()) {
            return Err(Error::OutOfRange(format!("need Δ > J > 0, got J = {j_coupling}, Δ = {delta}")));
        }
        if !(0.0..TAU).contains(&theta_u) {
            return Err(Error::OutOfRange(format!("theta_u = {theta_u} outside [0, 2π)")));
        }
        if branch_offset > 3 {
            return Err(Error::OutOfRange(format!("branch {branch_offset} outside 0..=3")));
        }
        Ok(Self { j_coupling, delta, theta_u, branch_offset })
    }

    /// `u^{1/4} = exp(i (θ_u + 2πk) / 4)`.
    pub fn fourth_root(&self) -> C64 {
        C64::from_polar(1.0, (self.theta_u + 2.0 * PI * self.branch_offset as f64) / 4.0)
    }
}

pub fn spin_hamiltonian(params: &SpinChainParams) -> CMatrix {
    let w = params.fourth_root();
    let j = params.j_coupling;
    let mut h = CMatrix::zeros(4, 4);
    h[(0, 1)] = -w * j;
    h[(1, 0)] = -w.inv() * j;
    h[(2, 2)] = c(params.delta, 0.0);
    h[(3, 3)] = c(params.delta, 0.0);
    h
}

/// Eigenvalues of the one-magnon Hamiltonian in ascending order.
pub fn spin_spectrum(params: &SpinChainParams) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(spin_hamiltonian(params)).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Normalized ground state on `C^4`, phased so the `|1>` coefficient is real positive.
pub fn ground_state(params: &SpinChainParams) -> Result<PureState> {
    let eig = SymmetricEigen::new(spin_hamiltonian(params));
    let k = eig.eigenvalues.argmin().0;
    let v = eig.eigenvectors.column(k).into_owned();
    let anchor = v[1];
    if anchor.norm() < 1e-12 {
        return Err(Error::Invalid("ground state has no |1> component".into()));
    }
    let v = &v * (anchor.norm() / anchor / v.norm());
    PureState::new(vec![4], v.iter().copied().collect())
}

/// The ground state seen from the translated chart: `X^{-1} |GS>`.
pub fn glue_ground_state(params: &SpinChainParams) -> Result<PureState> {
    let w = weyl_ops(4)?;
    ground_state(params)?.apply(&w.x_inv())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{schmidt_rank, Bipartition, DEFAULT_RANK_TOL};
    use approx::assert_abs_diff_eq;

    const I: C64 = C64::new(0.0, 1.0);

    fn cut() -> Bipartition {
        Bipartition::new(2, &[0]).unwrap()
    }

    #[test]
    fn weyl_relations() {
        for m in 2..=16 {
            let w = weyl_ops(m).unwrap();
            let lhs = &w.z_op * &w.x_op;
            let rhs = &w.x_op * &w.z_op * w.zeta;
            assert!((lhs - rhs).norm() < 1e-12);
            let id = CMatrix::identity(m, m);
            assert!((linalg::matrix_pow(&w.x_op, m as i64).unwrap() - &id).norm() < 1e-12);
            assert!((linalg::matrix_pow(&w.z_op, m as i64).unwrap() - &id).norm() < 1e-11);
        }
        let w = weyl_ops(2).unwrap();
        assert_eq!(w.x_op, linalg::real_matrix(&[&[0., 1.], &[1., 0.]]));
        assert!((w.z_op.clone() - linalg::real_matrix(&[&[1., 0.], &[0., -1.]])).norm() < 1e-15);
        assert_abs_diff_eq!((weyl_ops(4).unwrap().zeta - I).norm(), 0.0, epsilon = 1e-15);
        assert!(weyl_ops(1).is_err() && weyl_ops(65).is_err());
    }

    #[test]
    fn det1_normalization_branch() {
        let w = weyl_ops(4).unwrap();
        let z1 = det1_normalize(&w.z_op).unwrap();
        assert_abs_diff_eq!((linalg::det(&z1) - ONE).norm(), 0.0, epsilon = 1e-12);
        // det Z = -1 for m = 4, so the factor is exp(iπ/4).
        let factor = z1[(0, 0)];
        assert_abs_diff_eq!(factor.arg(), PI / 4.0, epsilon = 1e-12);
    }

    #[test]
    fn holonomy_words() {
        let w = weyl_ops(4).unwrap();
        let z = ProjectiveOperator::new(w.z_op.clone()).unwrap();
        let g = loop_holonomy(&HolonomyConfig::new(2, "u")).unwrap();
        assert!(g.proj_eq(&z, 1e-9));
        let g = loop_holonomy(&HolonomyConfig::new(2, "v")).unwrap();
        assert!(g.proj_eq(&ProjectiveOperator::new(w.x_inv()).unwrap(), 1e-9));
        assert!(loop_holonomy(&HolonomyConfig::new(2, "uU")).unwrap().is_identity_class(1e-9));
        let comm = loop_holonomy(&HolonomyConfig::new(2, "uvUV")).unwrap();
        assert!(comm.is_identity_class(1e-9));
        let s = linalg::as_scalar(comm.lift(), 1e-12).unwrap();
        assert_abs_diff_eq!((s - w.zeta.inv()).norm(), 0.0, epsilon = 1e-12);
        assert!(matches!(loop_holonomy(&HolonomyConfig::new(2, "")), Err(Error::Invalid(_))));
        assert_eq!(loop_holonomy(&HolonomyConfig::new(2, "uxv")), Err(Error::BadWord('x')));
    }

    #[test]
    fn holonomy_ignores_base_point_projectively() {
        let mut cfg = HolonomyConfig::new(3, "uvvU");
        let a = loop_holonomy(&cfg).unwrap();
        cfg.base_point = (C64::from_polar(1.0, 0.7), C64::from_polar(1.0, -2.1));
        let b = loop_holonomy(&cfg).unwrap();
        assert!(a.proj_eq(&b, 1e-12));
        cfg.base_point = (c(2.0, 0.0), ONE);
        assert!(loop_holonomy(&cfg).is_err());
    }

    #[test]
    fn commutator_examples() {
        let w = weyl_ops(4).unwrap();
        let s = commutator_scalar(&w.z_op, &w.x_inv()).unwrap();
        assert_abs_diff_eq!((s - (-I)).norm(), 0.0, epsilon = 1e-12);
        let s = commutator_scalar(&CMatrix::identity(4, 4), &w.x_op).unwrap();
        assert_abs_diff_eq!((s - ONE).norm(), 0.0, epsilon = 1e-12);
        // X Z X^{-1} Z^{-1} = zeta^{-1}; Z X Z^{-1} X^{-1} = zeta.
        let s = commutator_scalar(&w.x_op, &w.z_op).unwrap();
        assert_abs_diff_eq!((s - w.zeta.inv()).norm(), 0.0, epsilon = 1e-12);
        let s = commutator_scalar(&w.z_op, &w.x_op).unwrap();
        assert_abs_diff_eq!((s - w.zeta).norm(), 0.0, epsilon = 1e-12);
        let mut h = CMatrix::identity(4, 4);
        h[(0, 1)] = ONE;
        assert_eq!(commutator_scalar(&w.x_op, &h), Err(Error::NotCentral));
    }

    #[test]
    fn locality_examples() {
        let a = linalg::real_matrix(&[&[1., 2.], &[0.5, -1.]]);
        let b = CMatrix::from_fn(2, 2, |i, j| c(i as f64 + 1.0, j as f64 - 0.3));
        let ab = ProjectiveOperator::new(a.kronecker(&b)).unwrap();
        assert!(is_local_operator(&ab, 2, 2, DEFAULT_RANK_TOL).unwrap());
        let w = weyl_ops(4).unwrap();
        let xinv = ProjectiveOperator::new(w.x_inv()).unwrap();
        assert!(!is_local_operator(&xinv, 2, 2, DEFAULT_RANK_TOL).unwrap());
        let swap = ProjectiveOperator::new(swap_operator(2)).unwrap();
        assert!(is_local_operator(&swap, 2, 2, DEFAULT_RANK_TOL).unwrap());
        // Z = diag(1, i) ⊗ diag(1, -1) in the r = a + 2b encoding.
        let z = ProjectiveOperator::new(to_qudit_basis(&w.z_op, 2)).unwrap();
        assert!(is_local_operator(&z, 2, 2, DEFAULT_RANK_TOL).unwrap());
        assert!(is_local_operator(&ab, 2, 3, DEFAULT_RANK_TOL).is_err());
    }

    #[test]
    fn encoding_examples() {
        assert_eq!(qudit_encode(3, 2).unwrap(), (1, 1));
        assert_eq!(qudit_encode(0, 5).unwrap(), (0, 0));
        assert_eq!(qudit_encode(2, 2).unwrap(), (0, 1));
        assert!(qudit_encode(4, 2).is_err());
        let s = PureState::new(vec![9], (0..9).map(|k| c(k as f64 + 1.0, 0.0)).collect()).unwrap();
        assert_eq!(from_qudit_pair(&to_qudit_pair(&s, 3).unwrap()).unwrap(), s);
    }

    #[test]
    fn holonomy_entangles_product_state() {
        for p in 2..=5 {
            let w = weyl_ops(p * p).unwrap();
            let g = ProjectiveOperator::new(w.x_inv()).unwrap();
            let mut a = vec![ZERO; p];
            a[0] = ONE;
            a[1] = ONE;
            let mut b = vec![ZERO; p];
            b[0] = ONE;
            let psi = PureState::product(&[a, b]).unwrap();
            assert_eq!(schmidt_rank(&psi, &cut()).unwrap(), 1);
            let out = apply_holonomy(&g, &psi, Encoding::Qudit { p }).unwrap();
            let mut expect = vec![ZERO; p * p];
            expect[0] = ONE;
            expect[(p - 1) * p + (p - 1)] = ONE;
            assert_eq!(out.coeffs(), expect.as_slice());
            assert_eq!(schmidt_rank(&out, &cut()).unwrap(), 2);
        }
        let id = ProjectiveOperator::identity(4);
        let psi = PureState::basis(&[2, 2], &[1, 0]).unwrap();
        assert_eq!(apply_holonomy(&id, &psi, Encoding::Qudit { p: 2 }).unwrap(), psi);
        assert_eq!(apply_holonomy(&id, &psi, Encoding::Direct).unwrap(), psi);
    }

    #[test]
    fn spin_chain_hamiltonian() {
        let p = SpinChainParams::new(1.0, 2.0, 0.0, 0).unwrap();
        let h = spin_hamiltonian(&p);
        assert_abs_diff_eq!((h[(0, 1)] - c(-1.0, 0.0)).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((h[(1, 0)] - c(-1.0, 0.0)).norm(), 0.0, epsilon = 1e-15);
        for (theta, k) in [(0.3, 0u8), (2.0, 1), (5.9, 3)] {
            let p = SpinChainParams::new(0.7, 1.9, theta, k).unwrap();
            let h = spin_hamiltonian(&p);
            assert!((&h - h.adjoint()).norm() < 1e-12);
            let ev = spin_spectrum(&p);
            for (got, want) in ev.iter().zip([-0.7, 0.7, 1.9, 1.9]) {
                assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
            }
        }
        assert!(SpinChainParams::new(1.0, 0.5, 0.0, 0).is_err());
        assert!(SpinChainParams::new(1.0, 2.0, 7.0, 0).is_err());
        assert!(SpinChainParams::new(1.0, 2.0, 0.0, 4).is_err());
    }

    #[test]
    fn ground_states() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let p = SpinChainParams::new(1.0, 2.0, 0.0, 0).unwrap();
        let gs = ground_state(&p).unwrap();
        for (got, want) in gs.coeffs().iter().zip([h, h, 0.0, 0.0]) {
            assert_abs_diff_eq!((got - c(want, 0.0)).norm(), 0.0, epsilon = 1e-12);
        }
        let glued = to_qudit_pair(&glue_ground_state(&p).unwrap(), 2).unwrap();
        for (got, want) in glued.coeffs().iter().zip([h, 0.0, 0.0, h]) {
            assert_abs_diff_eq!((got - c(want, 0.0)).norm(), 0.0, epsilon = 1e-12);
        }

        let p = SpinChainParams::new(1.0, 3.0, 1.234, 2).unwrap();
        let gs = ground_state(&p).unwrap();
        let w = p.fourth_root();
        let formula = PureState::new(vec![4], vec![w * h, c(h, 0.0), ZERO, ZERO]).unwrap();
        assert_abs_diff_eq!(gs.inner(&formula).unwrap().norm(), 1.0, epsilon = 1e-12);
        assert_eq!(schmidt_rank(&to_qudit_pair(&gs, 2).unwrap(), &cut()).unwrap(), 1);
        let glued = to_qudit_pair(&glue_ground_state(&p).unwrap(), 2).unwrap();
        assert_eq!(schmidt_rank(&glued, &cut()).unwrap(), 2);
    }

    #[test]
    fn branch_monodromy_multiplies_by_i() {
        for k in 0..3u8 {
            let a = ground_state(&SpinChainParams::new(1.0, 2.0, 0.8, k).unwrap()).unwrap();
            let b = ground_state(&SpinChainParams::new(1.0, 2.0, 0.8, k + 1).unwrap()).unwrap();
            assert_abs_diff_eq!((b.coeffs()[0] - a.coeffs()[0] * I).norm(), 0.0, epsilon = 1e-12);
            let glued = to_qudit_pair(&glue_ground_state(&SpinChainParams::new(1.0, 2.0, 0.8, k + 1).unwrap()).unwrap(), 2).unwrap();
            assert_eq!(schmidt_rank(&glued, &cut()).unwrap(), 2);
        }
    }
}
