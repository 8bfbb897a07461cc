//! Tensor rank at desk scale and the numerology of determinantal varieties.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, C64, ONE, ZERO};
use crate::separability::bipartitions;
use crate::tensor::{flatten, numerical_rank, PureState};

/// Upper bound on matrix sides accepted by the degree and Hilbert formulas.
pub const MAX_NUMEROLOGY_DIM: usize = 12;

/// Absolute threshold on the discriminant of the normalized pencil quadratic.
pub const PENCIL_DISCRIMINANT_TOL: f64 = 1e-9;

/// A weakly decreasing sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerPartition {
    parts: Vec<usize>,
}

impl IntegerPartition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Invalid("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.parts.len()
    }

    /// All partitions of `t` with at most `max_len` parts, in reverse
    /// lexicographic order.
    pub fn all(t: usize, max_len: usize) -> Vec<Self> {
        fn go(rem: usize, cap: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<IntegerPartition>) {
            if rem == 0 {
                out.push(IntegerPartition { parts: cur.clone() });
                return;
            }
            if left == 0 {
                return;
            }
            for p in (1..=cap.min(rem)).rev() {
                cur.push(p);
                go(rem - p, p, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(t, t, max_len, &mut Vec::new(), &mut out);
        out
    }
}

/// Dimension, codimension and degree of `R_{<=r}` in `P^{d_a d_b - 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietyInvariants {
    pub d_a: usize,
    pub d_b: usize,
    pub r: usize,
    pub dim: usize,
    pub codim: usize,
    pub degree: BigUint,
}

pub fn variety_invariants(d_a: usize, d_b: usize, r: usize) -> Result<VarietyInvariants> {
    let (dim, codim) = determinantal_dim(d_a, d_b, r)?;
    Ok(VarietyInvariants {
        d_a,
        d_b,
        r,
        dim,
        codim,
        degree: determinantal_degree(d_a, d_b, r)?,
    })
}

/// Largest flattening rank over all bipartitions; a lower bound for border rank.
pub fn flattening_lower_bound(state: &PureState, tol: f64) -> Result<usize> {
    let n = state.n_subsystems();
    if n < 2 {
        return Ok(1);
    }
    let mut best = 0;
    for cut in bipartitions(n)? {
        best = best.max(numerical_rank(flatten(state, &cut)?.matrix(), tol));
    }
    Ok(best)
}

/// Exact tensor rank of a `2x2x2` state via the pencil `a M_0 + b M_1` of
/// first-factor contractions.
pub fn rank_2x2x2(state: &PureState, tol: f64) -> Result<usize> {
    if state.dims() != [2, 2, 2] {
        return Err(Error::WrongShape(format!("rank_2x2x2 needs dims [2,2,2], got {:?}", state.dims())));
    }
    if flattening_lower_bound(state, tol)? == 1 {
        return Ok(1);
    }
    let scale = state.coeffs().iter().fold(0.0f64, |acc, z| acc.max(z.norm()));
    let v: Vec<C64> = state.coeffs().iter().map(|z| z / scale).collect();
    let m0 = CMatrix::from_row_slice(2, 2, &v[0..4]);
    let m1 = CMatrix::from_row_slice(2, 2, &v[4..8]);

    // Contraction image of dimension one: psi = e ⊗ M, rank = rank(M) = 2 here.
    let span = CMatrix::from_row_slice(2, 4, &v);
    if numerical_rank(&span, tol) < 2 {
        return Ok(2);
    }

    // det(a M0 + b M1) = p a^2 + q ab + s b^2
    let p = linalg::det(&m0);
    let s = linalg::det(&m1);
    let q = linalg::det(&(&m0 + &m1)) - p - s;
    let norm = p.norm().max(q.norm()).max(s.norm());
    if norm <= PENCIL_DISCRIMINANT_TOL {
        // Every pencil member has rank <= 1: spanned by two rank-one matrices.
        return Ok(2);
    }
    let (p, q, s) = (p / norm, q / norm, s / norm);
    let disc = q * q - p * s * 4.0;
    Ok(if disc.norm() > PENCIL_DISCRIMINANT_TOL { 2 } else { 3 })
}

/// `(|0> + t|1>)^{⊗3} - |000>`; fails with `ZeroState` at `t = 0`.
pub fn w_family(t: C64) -> Result<PureState> {
    let f = vec![ONE, t];
    let cube = PureState::product(&[f.clone(), f.clone(), f])?;
    let mut coeffs = cube.coeffs().to_vec();
    coeffs[0] -= ONE;
    if coeffs[0].norm() < 1e-300 {
        coeffs[0] = ZERO;
    }
    PureState::new(vec![2, 2, 2], coeffs)
}

/// `|001> + |010> + |100>`.
pub fn w_state() -> PureState {
    let mut coeffs = vec![ZERO; 8];
    coeffs[1] = ONE;
    coeffs[2] = ONE;
    coeffs[4] = ONE;
    PureState::new(vec![2, 2, 2], coeffs).expect("nonzero")
}

/// `|000> + |111>`.
pub fn ghz3() -> PureState {
    let mut coeffs = vec![ZERO; 8];
    coeffs[0] = ONE;
    coeffs[7] = ONE;
    PureState::new(vec![2, 2, 2], coeffs).expect("nonzero")
}

fn check_numerology_dims(d_a: usize, d_b: usize) -> Result<()> {
    if d_a < 1 || d_b < 1 || d_a > MAX_NUMEROLOGY_DIM || d_b > MAX_NUMEROLOGY_DIM {
        return Err(Error::OutOfRange(format!(
            "dimensions ({d_a},{d_b}) outside 1..={MAX_NUMEROLOGY_DIM}"
        )));
    }
    Ok(())
}

/// `(k(d_a + d_b - k) - 1, (d_a - k)(d_b - k))`.
pub fn determinantal_dim(d_a: usize, d_b: usize, k: usize) -> Result<(usize, usize)> {
    if k < 1 || k > d_a.min(d_b) {
        return Err(Error::OutOfRange(format!("rank {k} outside 1..={}", d_a.min(d_b))));
    }
    Ok((k * (d_a + d_b - k) - 1, (d_a - k) * (d_b - k)))
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Degree of the Segre embedding `P^{d_a-1} x P^{d_b-1}`.
pub fn segre_degree(d_a: usize, d_b: usize) -> Result<BigUint> {
    if d_a < 1 || d_b < 1 {
        return Err(Error::OutOfRange("dimensions must be positive".into()));
    }
    Ok(binomial(d_a + d_b - 2, d_a - 1))
}

/// Projective degree of `R_{<=r}`, as the exact product
/// `prod_{i=0}^{d_a-r-1} (d_b+i)! i! / ((r+i)! (d_b-r+i)!)` with `d_a <= d_b`.
pub fn determinantal_degree(d_a: usize, d_b: usize, r: usize) -> Result<BigUint> {
    check_numerology_dims(d_a, d_b)?;
    let (d_a, d_b) = if d_a <= d_b { (d_a, d_b) } else { (d_b, d_a) };
    if r < 1 || r > d_a {
        return Err(Error::OutOfRange(format!("rank {r} outside 1..={d_a}")));
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..(d_a - r) {
        num *= factorial(d_b + i) * factorial(i);
        den *= factorial(r + i) * factorial(d_b - r + i);
    }
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// `dim S_lambda(C^d)` by the hook-content formula; zero when `l(lambda) > d`.
pub fn schur_dim(lambda: &IntegerPartition, d: usize) -> BigUint {
    if lambda.length() > d {
        return BigUint::zero();
    }
    let parts = lambda.parts();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for (row, &len) in parts.iter().enumerate() {
        for col in 0..len {
            let arm = len - col - 1;
            let leg = parts[row + 1..].iter().filter(|&&p| p > col).count();
            num *= BigUint::from(d + col - row);
            den *= BigUint::from(arm + leg + 1);
        }
    }
    num / den
}

/// `dim (S/I_{r+1})_t = sum_{lambda |- t, l(lambda) <= r} dim S_lambda(C^{d_a}) dim S_lambda(C^{d_b})`.
pub fn hilbert_function(d_a: usize, d_b: usize, r: usize, t: usize) -> Result<BigUint> {
    check_numerology_dims(d_a, d_b)?;
    if r > d_a.min(d_b) {
        return Err(Error::OutOfRange(format!("rank {r} exceeds min({d_a},{d_b})")));
    }
    Ok(IntegerPartition::all(t, r)
        .iter()
        .map(|l| schur_dim(l, d_a) * schur_dim(l, d_b))
        .sum())
}

/// Recovers `(dim, degree)` of `R_{<=r}` from the Hilbert function alone:
/// the degree of the Hilbert polynomial is the dimension, and its leading
/// coefficient times `dim!` is the degree. Finite differences are taken over
/// `t0..` which must lie in the polynomial range.
pub fn hilbert_fit(d_a: usize, d_b: usize, r: usize, t0: usize) -> Result<(usize, BigUint)> {
    check_numerology_dims(d_a, d_b)?;
    let n = d_a * d_b;
    let values: Vec<BigInt> = (t0..t0 + n + 1)
        .map(|t| hilbert_function(d_a, d_b, r, t).map(BigInt::from))
        .collect::<Result<_>>()?;
    let mut diffs = values;
    let mut order = 0;
    loop {
        if diffs.iter().all(Zero::is_zero) {
            break;
        }
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
        order += 1;
        if diffs.is_empty() {
            return Err(Error::Invalid("Hilbert function did not stabilize".into()));
        }
    }
    // `dim` differences leave the constant dim! * leading coefficient.
    let dim = order - 1;
    let mut d = (t0..t0 + n + 1)
        .map(|t| hilbert_function(d_a, d_b, r, t).map(BigInt::from))
        .collect::<Result<Vec<_>>>()?;
    for _ in 0..dim {
        d = d.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    let lead = d[0].abs().to_biguint().expect("nonnegative");
    Ok((dim, lead))
}

/// `min(r (sum (d_i - 1) + 1) - 1, prod d_i - 1)`.
pub fn secant_expected_dim(dims: &[usize], r: usize) -> Result<usize> {
    if r < 1 || dims.is_empty() {
        return Err(Error::OutOfRange("need r >= 1 and at least one factor".into()));
    }
    let seg: usize = dims.iter().map(|d| d - 1).sum();
    let ambient = dims
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .ok_or(Error::Overflow("secant_expected_dim"))?
        - 1;
    Ok((r * (seg + 1) - 1).min(ambient))
}
