//! Čech data on finite nerves with constant transitions per overlap: PGL
//! cocycle verification, scalar defects, the 2-cocycle identity, the order of
//! the defect class modulo coboundaries, and reducibility to local operations.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::TAU;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::gluing::{det1_normalize, is_local_operator, weyl_ops, ProjectiveOperator, CENTRAL_TOL};
use crate::linalg::{self, CMatrix, C64};

/// Distance to `mu_m` tolerated when reading off a defect exponent.
pub const ROOT_OF_UNITY_TOL: f64 = 1e-9;

/// Largest order probed when the modulus is inferred from the scalars.
pub const MAX_INFERRED_ORDER: usize = 720;

/// Largest modulus accepted for defect exponents.
pub const MAX_MODULUS: u64 = 1 << 16;

/// A nerve on `chart_count` charts with one constant lift per overlap.
///
/// Transitions are keyed by ordered pair; a pair stored in one orientation
/// only has its reverse given by the inverse lift.
#[derive(Debug, Clone, PartialEq)]
pub struct CechCover {
    pub chart_count: usize,
    pub n: usize,
    pub transitions: BTreeMap<(usize, usize), CMatrix>,
    pub triples: Vec<[usize; 3]>,
    pub quads: Vec<[usize; 4]>,
}

impl CechCover {
    /// Overlapping pairs as sorted `i < j`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let set: BTreeSet<(usize, usize)> = self
            .transitions
            .keys()
            .filter(|(i, j)| i != j)
            .map(|&(i, j)| (i.min(j), i.max(j)))
            .collect();
        set.into_iter().collect()
    }

    pub fn has_pair(&self, i: usize, j: usize) -> bool {
        i == j || self.transitions.contains_key(&(i, j)) || self.transitions.contains_key(&(j, i))
    }

    /// The lift `g_ij`, inverting the stored reverse when needed.
    pub fn lift(&self, i: usize, j: usize) -> Result<CMatrix> {
        if let Some(g) = self.transitions.get(&(i, j)) {
            return Ok(g.clone());
        }
        if i == j {
            return Ok(CMatrix::identity(self.n, self.n));
        }
        let g = self
            .transitions
            .get(&(j, i))
            .ok_or_else(|| Error::BadNerve { tuple: vec![i, j], reason: "no overlap".into() })?;
        g.clone().try_inverse().ok_or(Error::Singular)
    }

    fn sorted_triples(&self) -> Vec<[usize; 3]> {
        let set: BTreeSet<[usize; 3]> = self
            .triples
            .iter()
            .map(|t| {
                let mut s = *t;
                s.sort_unstable();
                s
            })
            .collect();
        set.into_iter().collect()
    }

    fn sorted_quads(&self) -> Vec<[usize; 4]> {
        let set: BTreeSet<[usize; 4]> = self
            .quads
            .iter()
            .map(|q| {
                let mut s = *q;
                s.sort_unstable();
                s
            })
            .collect();
        set.into_iter().collect()
    }
}

/// Exponents `e` of a scalar 2-cochain `c_ijk = zeta_m^e`, keyed by sorted triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle2 {
    pub m: u64,
    pub values: BTreeMap<[usize; 3], u64>,
}

impl Cocycle2 {
    pub fn zero(cover: &CechCover, m: u64) -> Self {
        Self { m, values: cover.sorted_triples().into_iter().map(|t| (t, 0)).collect() }
    }

    pub fn get(&self, t: [usize; 3]) -> u64 {
        self.values.get(&t).copied().unwrap_or(0)
    }

    /// The cochain `k * c`.
    pub fn scaled(&self, k: u64) -> Self {
        let m = u128::from(self.m.max(1));
        let values = self.values.iter().map(|(t, &e)| (*t, (u128::from(e) * u128::from(k) % m) as u64)).collect();
        Self { m: self.m, values }
    }

    /// The cochain `c - c'` over a common modulus.
    pub fn minus(&self, other: &Self) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::ShapeMismatch(format!("moduli {} and {}", self.m, other.m)));
        }
        let keys: BTreeSet<[usize; 3]> = self.values.keys().chain(other.values.keys()).copied().collect();
        let values = keys
            .into_iter()
            .map(|t| (t, (self.get(t) % self.m + self.m - other.get(t) % self.m) % self.m))
            .collect();
        Ok(Self { m: self.m, values })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionReport {
    /// Locality verdict per sorted overlapping pair.
    pub pair_local: Vec<((usize, usize), bool)>,
    pub reducible: bool,
    pub torsion_bound: u64,
}

pub fn validate_nerve(cover: &CechCover) -> Result<()> {
    let bad = |tuple: Vec<usize>, reason: &str| Err(Error::BadNerve { tuple, reason: reason.into() });
    for (&(i, j), g) in &cover.transitions {
        if i >= cover.chart_count || j >= cover.chart_count {
            return bad(vec![i, j], "chart index out of range");
        }
        if g.shape() != (cover.n, cover.n) {
            return bad(vec![i, j], "lift has the wrong size");
        }
        if ProjectiveOperator::new(g.clone()).is_err() {
            return bad(vec![i, j], "lift is singular");
        }
        if i == j && linalg::as_scalar(g, CENTRAL_TOL).is_none() {
            return bad(vec![i, j], "diagonal lift is not scalar");
        }
        if i < j {
            if let Some(h) = cover.transitions.get(&(j, i)) {
                if linalg::as_scalar(&(g * h), CENTRAL_TOL).is_none() {
                    return bad(vec![i, j], "reverse lift is not the inverse up to scalar");
                }
            }
        }
    }
    for t in &cover.triples {
        if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
            return bad(t.to_vec(), "repeated chart");
        }
        for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            if !cover.has_pair(a, b) {
                return bad(t.to_vec(), "face pair missing");
            }
        }
    }
    let triples: BTreeSet<[usize; 3]> = cover.sorted_triples().into_iter().collect();
    for q in cover.sorted_quads() {
        if q.windows(2).any(|w| w[0] == w[1]) {
            return bad(q.to_vec(), "repeated chart");
        }
        for skip in 0..4 {
            let face: Vec<usize> = (0..4).filter(|&k| k != skip).map(|k| q[k]).collect();
            if !triples.contains(&[face[0], face[1], face[2]]) {
                return bad(q.to_vec(), "face triple missing");
            }
        }
    }
    Ok(())
}

/// The scalar `g_ij g_jk g_ki` for `i < j < k`.
fn triple_scalar(cover: &CechCover, t: [usize; 3]) -> Result<C64> {
    let [i, j, k] = t;
    let prod = cover.lift(i, j)? * cover.lift(j, k)? * cover.lift(k, i)?;
    linalg::as_scalar(&prod, CENTRAL_TOL).ok_or(Error::NotPGLCocycle(t))
}

/// Exponent `e` with `|s - zeta_m^e| <= ROOT_OF_UNITY_TOL`.
fn root_exponent(s: C64, m: u64) -> Option<u64> {
    let e = (s.arg() * m as f64 / TAU).round().rem_euclid(m as f64) as u64;
    let root = C64::from_polar(1.0, TAU * e as f64 / m as f64);
    ((s - root).norm() <= ROOT_OF_UNITY_TOL).then_some(e)
}

fn root_order(s: C64) -> Option<u64> {
    (1..=MAX_INFERRED_ORDER as u64).find(|&q| root_exponent(s, q).is_some())
}

/// Extracts `c_ijk` from every nerve triple. Without `m` the modulus is the
/// lcm of the orders of the detected scalars.
pub fn pgl_cocycle_defect(cover: &CechCover, m: Option<u64>) -> Result<Cocycle2> {
    let triples = cover.sorted_triples();
    let scalars: Vec<([usize; 3], C64)> =
        triples.iter().map(|&t| triple_scalar(cover, t).map(|s| (t, s))).collect::<Result<_>>()?;
    let not_root = |t: [usize; 3], s: C64| Error::NotRootOfUnity { triple: t, re: s.re, im: s.im };
    let m = match m {
        Some(m) => m,
        None => {
            let mut acc = 1u64;
            for &(t, s) in &scalars {
                acc = acc.lcm(&root_order(s).ok_or_else(|| not_root(t, s))?);
                if acc > MAX_MODULUS {
                    break;
                }
            }
            acc
        }
    };
    check_modulus(m)?;
    let values = scalars
        .into_iter()
        .map(|(t, s)| root_exponent(s, m).map(|e| (t, e)).ok_or_else(|| not_root(t, s)))
        .collect::<Result<_>>()?;
    Ok(Cocycle2 { m, values })
}

fn check_modulus(m: u64) -> Result<()> {
    if m == 0 || m > MAX_MODULUS {
        return Err(Error::OutOfRange(format!("modulus {m} outside 1..={MAX_MODULUS}")));
    }
    Ok(())
}

/// Checks `e_jkl - e_ikl + e_ijl - e_ijk = 0 (mod m)` on every quadruple.
pub fn is_2cocycle(c: &Cocycle2, cover: &CechCover) -> bool {
    if c.m == 0 {
        return false;
    }
    let m = c.m as i128;
    cover.sorted_quads().into_iter().all(|[i, j, k, l]| {
        let e = |t: [usize; 3]| c.get(t) as i128;
        (e([j, k, l]) - e([i, k, l]) + e([i, j, l]) - e([i, j, k])).rem_euclid(m) == 0
    })
}

/// A 1-cochain `b` on sorted pairs with `c = δb`, where
/// `(δb)_ijk = b_jk - b_ik + b_ij`, or `None` if `c` is not a coboundary.
pub fn coboundary_solve(c: &Cocycle2, cover: &CechCover) -> Option<BTreeMap<(usize, usize), u64>> {
    check_modulus(c.m).ok()?;
    let pairs = cover.pairs();
    let col: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let triples: Vec<[usize; 3]> = c.values.keys().copied().collect();
    let mut a = vec![vec![0i64; pairs.len()]; triples.len()];
    for (r, &[i, j, k]) in triples.iter().enumerate() {
        for (p, sign) in [((j, k), 1), ((i, k), -1), ((i, j), 1)] {
            a[r][*col.get(&p)?] += sign;
        }
    }
    let rhs: Vec<i64> = triples.iter().map(|&t| (c.get(t) % c.m) as i64).collect();
    let b = zmod::solve(&a, &rhs, c.m as i64)?;
    Some(pairs.into_iter().zip(b.into_iter().map(|x| x as u64)).collect())
}

/// Smallest divisor `l` of `m` such that `l * c` is a coboundary.
pub fn class_order(c: &Cocycle2, cover: &CechCover) -> Result<u64> {
    check_modulus(c.m)?;
    if !is_2cocycle(c, cover) {
        return Err(Error::NotCocycle);
    }
    for l in (1..=c.m).filter(|l| c.m.is_multiple_of(*l)) {
        if coboundary_solve(&c.scaled(l), cover).is_some() {
            return Ok(l);
        }
    }
    Ok(c.m)
}

/// Replaces `g_ij` by `zeta_m^{-b_ij} g_ij` for `i < j`, storing both
/// orientations explicitly. A solution of `c = δb` makes every triple
/// product the identity.
pub fn rescale_lifts(cover: &CechCover, b: &BTreeMap<(usize, usize), u64>, m: u64) -> Result<CechCover> {
    let mut transitions = BTreeMap::new();
    for (i, j) in cover.pairs() {
        let e = b.get(&(i, j)).copied().unwrap_or(0);
        let z = C64::from_polar(1.0, -TAU * e as f64 / m as f64);
        let g = cover.lift(i, j)? * z;
        let g_inv = g.clone().try_inverse().ok_or(Error::Singular)?;
        transitions.insert((i, j), g);
        transitions.insert((j, i), g_inv);
    }
    Ok(CechCover { transitions, ..cover.clone() })
}

pub fn torsion_bound(dims: &[usize]) -> Result<u64> {
    if dims.is_empty() || dims.iter().any(|&d| d < 2) {
        return Err(Error::OutOfRange("every local dimension must be at least 2".into()));
    }
    Ok(dims.iter().fold(1u64, |acc, &d| acc.lcm(&(d as u64))))
}

pub fn check_reduction(cover: &CechCover, d_a: usize, d_b: usize, tol: f64) -> Result<ReductionReport> {
    if d_a.saturating_mul(d_b) != cover.n {
        return Err(Error::ShapeMismatch(format!("{d_a}x{d_b} does not factor n = {}", cover.n)));
    }
    let pair_local = cover
        .pairs()
        .into_iter()
        .map(|(i, j)| {
            let g = ProjectiveOperator::new(cover.lift(i, j)?)?;
            Ok(((i, j), is_local_operator(&g, d_a, d_b, tol)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ReductionReport {
        reducible: pair_local.iter().all(|(_, ok)| *ok),
        pair_local,
        torsion_bound: torsion_bound(&[d_a, d_b])?,
    })
}

/// Where the branch seam of each circle factor sits, and in which order the
/// two jump operators are multiplied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeamLayout {
    /// The seam lies in the overlap of arcs `s` and `s + 1 (mod 3)`.
    pub u_seam: usize,
    pub v_seam: usize,
    pub u_first: bool,
}

impl Default for SeamLayout {
    fn default() -> Self {
        Self { u_seam: 2, v_seam: 2, u_first: true }
    }
}

/// Branch jump between arcs `a` and `b` of a three-arc circle cover whose
/// seam sits in the overlap of arcs `s` and `s + 1`.
fn arc_jump(a: usize, b: usize, s: usize) -> i64 {
    let t = (s + 1) % 3;
    if a == s && b == t {
        1
    } else if a == t && b == s {
        -1
    } else {
        0
    }
}

/// The 3 x 3 grid cover of the torus, chart `3i + j` for u-arc `i` and v-arc
/// `j`. A pair `a < b` carries the determinant-one lift of
/// `g_u^{jump_u} g_v^{jump_v}`; the reverse is its exact inverse.
pub fn weyl_torus_cover(g_u: &CMatrix, g_v: &CMatrix, layout: SeamLayout) -> Result<CechCover> {
    if layout.u_seam > 2 || layout.v_seam > 2 {
        return Err(Error::OutOfRange("seam index must be 0, 1 or 2".into()));
    }
    if g_u.shape() != g_v.shape() || !g_u.is_square() {
        return Err(Error::ShapeMismatch("jump operators differ in shape".into()));
    }
    let n = g_u.nrows();
    let arcs = |c: usize| (c / 3, c % 3);
    let mut transitions = BTreeMap::new();
    for a in 0..9 {
        for b in a + 1..9 {
            let ((i, j), (k, l)) = (arcs(a), arcs(b));
            let pu = linalg::matrix_pow(g_u, arc_jump(i, k, layout.u_seam)).ok_or(Error::Singular)?;
            let pv = linalg::matrix_pow(g_v, arc_jump(j, l, layout.v_seam)).ok_or(Error::Singular)?;
            let g = det1_normalize(&if layout.u_first { pu * pv } else { pv * pu })?;
            let g_inv = g.clone().try_inverse().ok_or(Error::Singular)?;
            transitions.insert((a, b), g);
            transitions.insert((b, a), g_inv);
        }
    }
    let in_block = |cs: &[usize]| {
        let us: BTreeSet<usize> = cs.iter().map(|&c| c / 3).collect();
        let vs: BTreeSet<usize> = cs.iter().map(|&c| c % 3).collect();
        us.len() <= 2 && vs.len() <= 2
    };
    let mut triples = Vec::new();
    let mut quads = Vec::new();
    for a in 0..9 {
        for b in a + 1..9 {
            for c in b + 1..9 {
                if in_block(&[a, b, c]) {
                    triples.push([a, b, c]);
                }
                for d in c + 1..9 {
                    if in_block(&[a, b, c, d]) {
                        quads.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    Ok(CechCover { chart_count: 9, n, transitions, triples, quads })
}

/// The symbol algebra over the torus in dimension `m = p^2`: `Z` across
/// u-seams and `X^{-1}` across v-seams.
pub fn symbol_cover(p: usize) -> Result<CechCover> {
    symbol_cover_with(p, SeamLayout::default())
}

pub fn symbol_cover_with(p: usize, layout: SeamLayout) -> Result<CechCover> {
    if !(2..=5).contains(&p) {
        return Err(Error::OutOfRange(format!("p = {p} outside 2..=5")));
    }
    let w = weyl_ops(p * p)?;
    weyl_torus_cover(&w.z_op, &w.x_inv(), layout)
}

/// Linear systems `A x = r` over `Z/m` by unimodular row and column
/// reduction to diagonal form.
pub mod zmod {
    /// A solution `x` with entries in `0..m`, or `None` if the system is
    /// inconsistent. Free coordinates are set to zero.
    pub fn solve(a: &[Vec<i64>], rhs: &[i64], m: i64) -> Option<Vec<i64>> {
        assert!(m > 0);
        let rows = a.len();
        let cols = a.first().map_or(0, |r| r.len());
        let md = |x: i64| x.rem_euclid(m);
        let mut a: Vec<Vec<i64>> = a.iter().map(|r| r.iter().map(|&x| md(x)).collect()).collect();
        let mut r: Vec<i64> = rhs.iter().map(|&x| md(x)).collect();
        // columns of v track the column operations, so x = v y
        let mut v: Vec<Vec<i64>> = (0..cols).map(|i| (0..cols).map(|j| i64::from(i == j)).collect()).collect();
        let mut t = 0;
        while t < rows.min(cols) {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j]);
            let Some((pi, pj)) = pivot else { break };
            a.swap(t, pi);
            r.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            loop {
                let p = a[t][t];
                let mut clean = true;
                for i in t + 1..rows {
                    let q = a[i][t] / p;
                    if q != 0 {
                        for j in t..cols {
                            a[i][j] = md(a[i][j] - q * a[t][j]);
                        }
                        r[i] = md(r[i] - q * r[t]);
                    }
                    clean &= a[i][t] == 0;
                }
                for j in t + 1..cols {
                    let q = a[t][j] / p;
                    if q != 0 {
                        for i in t..rows {
                            a[i][j] = md(a[i][j] - q * a[i][t]);
                        }
                        for row in v.iter_mut() {
                            row[j] = md(row[j] - q * row[t]);
                        }
                    }
                    clean &= a[t][j] == 0;
                }
                if clean {
                    break;
                }
                // a remainder smaller than the pivot survived; move it to the pivot
                let (bi, bj) = (t..rows)
                    .map(|i| (i, t))
                    .chain((t..cols).map(|j| (t, j)))
                    .filter(|&(i, j)| a[i][j] != 0)
                    .min_by_key(|&(i, j)| a[i][j])
                    .expect("pivot row or column is nonzero");
                a.swap(t, bi);
                r.swap(t, bi);
                for row in a.iter_mut() {
                    row.swap(t, bj);
                }
                for row in v.iter_mut() {
                    row.swap(t, bj);
                }
            }
            t += 1;
        }
        if r[t..].iter().any(|&x| x != 0) {
            return None;
        }
        let mut y = vec![0i64; cols];
        for k in 0..t {
            let g = gcd(a[k][k], m);
            if r[k] % g != 0 {
                return None;
            }
            let mg = m / g;
            y[k] = md((r[k] / g) * inv_mod((a[k][k] / g).rem_euclid(mg), mg));
        }
        Some((0..cols).map(|i| md((0..cols).map(|j| v[i][j] * y[j] % m).sum())).collect())
    }

    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }

    /// Inverse of `a` modulo `n` for coprime `a`, `n`; zero when `n = 1`.
    fn inv_mod(a: i64, n: i64) -> i64 {
        let (mut r0, mut r1, mut s0, mut s1) = (a, n, 1i64, 0i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        s0.rem_euclid(n)
    }
}
