//! Splitting types of split bundles on the projective line and the sumset
//! factorization `{a_m} = {b_i + c_j + t}` that decides bipartite reducibility.

use crate::error::{Error, Result};

/// Largest rank accepted by [`factor_sumset`].
pub const MAX_SPLITTING_RANK: usize = 36;

/// Line-bundle degrees, kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SplittingType {
    degrees: Vec<i64>,
}

impl SplittingType {
    pub fn new(mut degrees: Vec<i64>) -> Self {
        degrees.sort_unstable();
        Self { degrees }
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// The twist by `O(s)`.
    pub fn shifted(&self, s: i64) -> Self {
        Self { degrees: self.degrees.iter().map(|a| a + s).collect() }
    }
}

/// `b` and `c` sorted with `b[0] = c[0] = 0`; all constants sit in `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SumsetFactorization {
    pub b: Vec<i64>,
    pub c: Vec<i64>,
    pub t: i64,
}

impl SumsetFactorization {
    /// The sorted multiset `{b_i + c_j + t}`.
    pub fn recombine(&self) -> SplittingType {
        SplittingType::new(self.b.iter().flat_map(|b| self.c.iter().map(move |c| b + c + self.t)).collect())
    }
}

/// Searches for `{a} = {b_i + c_j + t}` with `|b| = d_a`, `|c| = d_b`.
///
/// After the shift `t = a_1` and `b_1 = c_1 = 0`, the smallest exponent not
/// yet produced by known `b` and `c` values is always the next `b` or the
/// next `c`; both branches are tried, `b` first.
pub fn factor_sumset(a: &SplittingType, d_a: usize, d_b: usize) -> Result<Option<SumsetFactorization>> {
    if d_a == 0 || d_b == 0 || d_a.saturating_mul(d_b) != a.len() {
        return Err(Error::ShapeMismatch(format!("{} degrees do not fill a {d_a}x{d_b} shape", a.len())));
    }
    if a.len() > MAX_SPLITTING_RANK {
        return Err(Error::TooLarge(format!("rank {} exceeds {MAX_SPLITTING_RANK}", a.len())));
    }
    let t = a.degrees[0];
    let mut rest: Vec<i64> = a.degrees[1..]
        .iter()
        .map(|x| x.checked_sub(t).ok_or_else(|| Error::TooLarge("degree spread exceeds i64".into())))
        .collect::<Result<_>>()?;
    let mut b = vec![0];
    let mut c = vec![0];
    if extend(&mut rest, &mut b, &mut c, d_a, d_b) {
        Ok(Some(SumsetFactorization { b, c, t }))
    } else {
        Ok(None)
    }
}

/// Removes one copy of each of `xs` from the sorted multiset `rest`, or
/// leaves it unchanged and returns false.
fn take_all(rest: &mut Vec<i64>, xs: &[i64]) -> bool {
    let mut removed = Vec::with_capacity(xs.len());
    for &x in xs {
        match rest.binary_search(&x) {
            Ok(pos) => {
                rest.remove(pos);
                removed.push(x);
            }
            Err(_) => {
                put_back(rest, &removed);
                return false;
            }
        }
    }
    true
}

fn put_back(rest: &mut Vec<i64>, xs: &[i64]) {
    for &x in xs {
        let pos = rest.partition_point(|&y| y < x);
        rest.insert(pos, x);
    }
}

fn extend(rest: &mut Vec<i64>, b: &mut Vec<i64>, c: &mut Vec<i64>, d_a: usize, d_b: usize) -> bool {
    let Some(&x) = rest.first() else {
        return b.len() == d_a && c.len() == d_b;
    };
    if b.len() < d_a {
        // an overflowing sum exceeds every remaining exponent
        let sums: Option<Vec<i64>> = c.iter().map(|cj| x.checked_add(*cj)).collect();
        if let Some(sums) = sums.filter(|s| take_all(rest, s)) {
            b.push(x);
            if extend(rest, b, c, d_a, d_b) {
                return true;
            }
            b.pop();
            put_back(rest, &sums);
        }
    }
    if c.len() < d_b {
        let sums: Option<Vec<i64>> = b.iter().map(|bi| x.checked_add(*bi)).collect();
        if let Some(sums) = sums.filter(|s| take_all(rest, s)) {
            c.push(x);
            if extend(rest, b, c, d_a, d_b) {
                return true;
            }
            c.pop();
            put_back(rest, &sums);
        }
    }
    false
}

/// `a_1 + a_4 = a_2 + a_3` on four sorted degrees.
pub fn parallelogram(a: &SplittingType) -> Result<bool> {
    match a.degrees() {
        &[a1, a2, a3, a4] => Ok(i128::from(a1) + i128::from(a4) == i128::from(a2) + i128::from(a3)),
        other => Err(Error::WrongLength { expected: 4, got: other.len() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(xs: &[i64]) -> SplittingType {
        SplittingType::new(xs.to_vec())
    }

    /// Every sorted multiset of `len` values in `0..=max`.
    fn multisets(len: usize, max: i64) -> Vec<Vec<i64>> {
        if len == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for tail in multisets(len - 1, max) {
            let lo = tail.last().copied().unwrap_or(0);
            for x in lo..=max {
                let mut v = tail.clone();
                v.push(x);
                out.push(v);
            }
        }
        out
    }

    /// Independent check: all `b`, `c` with entries in `0..=span`.
    fn brute_force(a: &SplittingType, d_a: usize, d_b: usize) -> bool {
        let t = a.degrees()[0];
        let span = a.degrees().last().unwrap() - t;
        multisets(d_a - 1, span).iter().any(|bt| {
            multisets(d_b - 1, span).iter().any(|ct| {
                let f = SumsetFactorization {
                    b: [&[0][..], bt].concat(),
                    c: [&[0][..], ct].concat(),
                    t,
                };
                &f.recombine() == a
            })
        })
    }

    #[test]
    fn staircase_factors() {
        let f = factor_sumset(&st(&[0, 1, 2, 3]), 2, 2).unwrap().unwrap();
        assert_eq!(f, SumsetFactorization { b: vec![0, 1], c: vec![0, 2], t: 0 });
        assert!(parallelogram(&st(&[0, 1, 2, 3])).unwrap());
    }

    #[test]
    fn broken_parallelogram_is_irreducible() {
        assert_eq!(factor_sumset(&st(&[0, 0, 1, 3]), 2, 2).unwrap(), None);
        assert!(!parallelogram(&st(&[0, 0, 1, 3])).unwrap());
    }

    #[test]
    fn constant_degrees_are_a_twist() {
        for (d_a, d_b) in [(2, 2), (2, 3), (3, 4), (1, 5)] {
            let a = st(&vec![7; d_a * d_b]);
            let f = factor_sumset(&a, d_a, d_b).unwrap().unwrap();
            assert_eq!(f, SumsetFactorization { b: vec![0; d_a], c: vec![0; d_b], t: 7 });
        }
        assert!(parallelogram(&st(&[5, 5, 5, 5])).unwrap());
    }

    #[test]
    fn extreme_degrees_do_not_overflow() {
        let a = st(&[i64::MIN + 1, 0, 0, i64::MAX]);
        assert!(matches!(factor_sumset(&a, 2, 2), Err(Error::TooLarge(_))));
        assert!(parallelogram(&a).unwrap());
        let b = st(&[0, 1, i64::MAX - 1, i64::MAX]);
        assert!(factor_sumset(&b, 2, 2).unwrap().is_some());
        assert_eq!(factor_sumset(&st(&[0, i64::MAX, i64::MAX, i64::MAX]), 2, 2).unwrap(), None);
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(factor_sumset(&st(&[0, 1, 2]), 2, 2), Err(Error::ShapeMismatch(_))));
        assert!(matches!(factor_sumset(&st(&[]), 0, 2), Err(Error::ShapeMismatch(_))));
        assert_eq!(parallelogram(&st(&[0, 1])), Err(Error::WrongLength { expected: 4, got: 2 }));
        assert!(matches!(factor_sumset(&st(&vec![0; 49]), 7, 7), Err(Error::TooLarge(_))));
    }

    #[test]
    fn all_four_multisets_match_parallelogram_and_brute_force() {
        let all = multisets(4, 4);
        assert_eq!(all.len(), 70);
        for v in all {
            let a = st(&v);
            let found = factor_sumset(&a, 2, 2).unwrap();
            assert_eq!(found.is_some(), parallelogram(&a).unwrap(), "{v:?}");
            assert_eq!(found.is_some(), brute_force(&a, 2, 2), "{v:?}");
            if let Some(f) = found {
                assert_eq!(f.recombine(), a);
            }
        }
    }

    #[test]
    fn six_multisets_match_brute_force_both_ways() {
        for v in multisets(6, 4) {
            let a = st(&v);
            let f23 = factor_sumset(&a, 2, 3).unwrap();
            let f32 = factor_sumset(&a, 3, 2).unwrap();
            assert_eq!(f23.is_some(), brute_force(&a, 2, 3), "{v:?}");
            assert_eq!(f23.is_some(), f32.is_some(), "{v:?}");
            for f in f23.iter().chain(f32.iter()) {
                assert_eq!(f.recombine(), a);
            }
        }
    }

    #[test]
    fn larger_products_recombine() {
        let b = [0, 1, 4];
        let c = [0, 2, 2, 5];
        let a = SumsetFactorization { b: b.to_vec(), c: c.to_vec(), t: -3 }.recombine();
        let f = factor_sumset(&a, 3, 4).unwrap().unwrap();
        assert_eq!(f.recombine(), a);
        assert!(factor_sumset(&a, 4, 3).unwrap().is_some());
        let mut bumped = a.degrees().to_vec();
        *bumped.last_mut().unwrap() += 1;
        assert_eq!(factor_sumset(&st(&bumped), 3, 4).unwrap(), None);
    }

    #[test]
    fn translation_shifts_t() {
        for v in multisets(4, 4) {
            let a = st(&v);
            for s in [-5, 1, 9] {
                let base = factor_sumset(&a, 2, 2).unwrap();
                let moved = factor_sumset(&a.shifted(s), 2, 2).unwrap();
                assert_eq!(base.is_some(), moved.is_some());
                if let (Some(f), Some(g)) = (base, moved) {
                    assert_eq!(g.t, f.t + s);
                    assert_eq!((f.b, f.c), (g.b, g.c));
                }
            }
        }
    }
}
