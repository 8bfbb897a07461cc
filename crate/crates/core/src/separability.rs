//! The partition lattice of subsystems and product-along-partition tests.

use crate::error::{Error, Result};
use crate::linalg;
use crate::tensor::{flatten, Bipartition, PureState};

/// Largest subsystem count for which every bipartition is enumerated.
pub const MAX_ENUMERATED_SUBSYSTEMS: usize = 16;

/// A set partition of `{0..n}` with sorted blocks ordered by minimum element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::ShapeMismatch("empty block".into()));
            }
            for &i in b {
                if i >= n {
                    return Err(Error::ShapeMismatch(format!("index {i} outside 0..{n}")));
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::ShapeMismatch(format!("index {i} appears twice")));
                }
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::ShapeMismatch(format!("index {missing} not covered")));
        }
        blocks.sort_by_key(|b| b[0]);
        Ok(Self { n, blocks })
    }

    /// The single-block partition `{0..n}`.
    pub fn whole(n: usize) -> Self {
        Self { n, blocks: vec![(0..n).collect()] }
    }

    /// The partition into singletons.
    pub fn discrete(n: usize) -> Self {
        Self { n, blocks: (0..n).map(|i| vec![i]).collect() }
    }

    pub fn from_bipartition(b: &Bipartition) -> Self {
        Self {
            n: b.n_subsystems(),
            blocks: vec![b.block_a().to_vec(), b.block_b()],
        }
    }

    pub fn n_subsystems(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    fn block_of(&self) -> Vec<usize> {
        let mut label = vec![0; self.n];
        for (k, b) in self.blocks.iter().enumerate() {
            for &i in b {
                label[i] = k;
            }
        }
        label
    }
}

impl std::fmt::Display for Partition {
    /// `0|1|23` style, with subsystem indices as given (0-based).
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(if self.n > 10 { "," } else { "" }))
            .collect();
        write!(f, "{}", parts.join("|"))
    }
}

fn same_n(p: &Partition, q: &Partition) -> Result<()> {
    if p.n != q.n {
        return Err(Error::ShapeMismatch(format!("partitions of {} and {} elements", p.n, q.n)));
    }
    Ok(())
}

/// Whether every block of `p` lies inside a block of `q`.
pub fn refines(p: &Partition, q: &Partition) -> Result<bool> {
    same_n(p, q)?;
    let label = q.block_of();
    Ok(p.blocks.iter().all(|b| b.iter().all(|&i| label[i] == label[b[0]])))
}

/// Common refinement: all nonempty intersections of a block of `p` with a block of `q`.
pub fn meet(p: &Partition, q: &Partition) -> Result<Partition> {
    same_n(p, q)?;
    let mut blocks = Vec::new();
    for b in &p.blocks {
        for c in &q.blocks {
            let inter: Vec<usize> = b.iter().copied().filter(|i| c.contains(i)).collect();
            if !inter.is_empty() {
                blocks.push(inter);
            }
        }
    }
    Partition::new(p.n, blocks)
}

/// All `2^(n-1) - 1` canonical bipartitions, ordered by the bitmask of
/// `block_a \ {0}`.
pub fn bipartitions(n: usize) -> Result<Vec<Bipartition>> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("bipartitions need n >= 2, got {n}")));
    }
    if n > MAX_ENUMERATED_SUBSYSTEMS {
        return Err(Error::TooLarge(format!("{n} subsystems")));
    }
    let full = (1u32 << (n - 1)) - 1;
    (0..full)
        .map(|mask| {
            let mut a = vec![0];
            a.extend((1..n).filter(|i| mask & (1 << (i - 1)) != 0));
            Bipartition::new(n, &a)
        })
        .collect()
}

/// Every set partition of `{0..n}`, enumerated by restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Partition> {
    fn go(i: usize, n: usize, labels: &mut Vec<usize>, max: usize, out: &mut Vec<Partition>) {
        if i == n {
            let mut blocks = vec![Vec::new(); max];
            for (idx, &l) in labels.iter().enumerate() {
                blocks[l].push(idx);
            }
            out.push(Partition { n, blocks });
            return;
        }
        for l in 0..=max {
            labels.push(l);
            go(i + 1, n, labels, max.max(l + 1), out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    go(0, n, &mut Vec::with_capacity(n), 0, &mut out);
    out
}

fn block_is_split(state: &PureState, block: &[usize], tol: f64) -> Result<bool> {
    let n = state.n_subsystems();
    if block.len() == n {
        return Ok(true);
    }
    let cut = Bipartition::new(n, block)?;
    Ok(linalg::is_rank_one(flatten(state, &cut)?.matrix(), tol))
}

/// Whether `state` factors along the blocks of `p`: one rank test per block
/// against its complement suffices since the product loci intersect along meets.
pub fn is_pi_product(state: &PureState, p: &Partition, tol: f64) -> Result<bool> {
    if p.n != state.n_subsystems() {
        return Err(Error::ShapeMismatch(format!(
            "partition of {} elements, state has {} subsystems",
            p.n,
            state.n_subsystems()
        )));
    }
    for b in &p.blocks {
        if !block_is_split(state, b, tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Meet of all product bipartitions, i.e. the unique finest partition along
/// which `state` factors.
pub fn finest_product_partition(state: &PureState, tol: f64) -> Result<Partition> {
    Ok(separability_report(state, tol)?.finest)
}

/// Genuinely multipartite entangled: product across no bipartition.
/// A single subsystem is never reported as GME.
pub fn is_gme(state: &PureState, tol: f64) -> Result<bool> {
    if state.n_subsystems() < 2 {
        return Ok(false);
    }
    Ok(separability_report(state, tol)?.gme)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparabilityReport {
    pub finest: Partition,
    pub product_bipartitions: Vec<Bipartition>,
    pub gme: bool,
}

pub fn separability_report(state: &PureState, tol: f64) -> Result<SeparabilityReport> {
    let n = state.n_subsystems();
    if n > MAX_ENUMERATED_SUBSYSTEMS {
        return Err(Error::TooLarge(format!("{n} subsystems")));
    }
    let mut finest = Partition::whole(n);
    let mut product = Vec::new();
    if n >= 2 {
        for cut in bipartitions(n)? {
            if linalg::is_rank_one(flatten(state, &cut)?.matrix(), tol) {
                finest = meet(&finest, &Partition::from_bipartition(&cut))?;
                product.push(cut);
            }
        }
    }
    let gme = n >= 2 && product.is_empty();
    Ok(SeparabilityReport { finest, product_bipartitions: product, gme })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, C64, ONE, ZERO};
    use crate::tensor::{make_state, DEFAULT_RANK_TOL};

    fn part(n: usize, blocks: &[&[usize]]) -> Partition {
        Partition::new(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    fn ghz3() -> PureState {
        let mut v = vec![ZERO; 8];
        v[0] = ONE;
        v[7] = ONE;
        make_state(&[2, 2, 2], v).unwrap()
    }

    fn w3() -> PureState {
        let mut v = vec![ZERO; 8];
        v[1] = ONE;
        v[2] = ONE;
        v[4] = ONE;
        make_state(&[2, 2, 2], v).unwrap()
    }

    /// a1 ⊗ a2 ⊗ Phi_34 with Phi a Bell pair.
    fn bell_pair_state() -> PureState {
        let a1 = vec![c(1., 0.), c(0.5, -0.2)];
        let a2 = vec![c(0.3, 0.), c(1., 1.)];
        let base = PureState::product(&[a1, a2]).unwrap();
        let phi = [ONE, ZERO, ZERO, ONE];
        let coeffs: Vec<C64> = base.coeffs().iter().flat_map(|&x| phi.iter().map(move |&y| x * y)).collect();
        make_state(&[2, 2, 2, 2], coeffs).unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(3, vec![vec![0], vec![0, 1, 2]]).is_err());
        assert!(Partition::new(3, vec![vec![0], vec![1]]).is_err());
        assert!(Partition::new(3, vec![vec![0], vec![], vec![1, 2]]).is_err());
        let p = Partition::new(3, vec![vec![2, 1], vec![0]]).unwrap();
        assert_eq!(p.blocks(), &[vec![0], vec![1, 2]]);
        assert_eq!(p.to_string(), "0|12");
    }

    #[test]
    fn refines_examples() {
        let full = Partition::discrete(3);
        let a = part(3, &[&[0], &[1, 2]]);
        let b = part(3, &[&[1], &[0, 2]]);
        assert!(refines(&full, &a).unwrap());
        assert!(!refines(&a, &b).unwrap());
        assert!(refines(&a, &a).unwrap());
        assert!(refines(&Partition::discrete(4), &a).is_err());
    }

    #[test]
    fn meet_examples() {
        let a = part(3, &[&[0], &[1, 2]]);
        let b = part(3, &[&[1], &[0, 2]]);
        assert_eq!(meet(&a, &b).unwrap(), Partition::discrete(3));
        assert_eq!(meet(&a, &a).unwrap(), a);
        let p = part(4, &[&[0, 1], &[2, 3]]);
        let q = part(4, &[&[0, 2], &[1, 3]]);
        assert_eq!(meet(&p, &q).unwrap(), Partition::discrete(4));
    }

    #[test]
    fn bipartition_counts() {
        assert_eq!(bipartitions(2).unwrap().len(), 1);
        assert_eq!(bipartitions(3).unwrap().len(), 3);
        assert_eq!(bipartitions(4).unwrap().len(), 7);
        assert!(matches!(bipartitions(17), Err(Error::TooLarge(_))));
        let all = bipartitions(5).unwrap();
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
    }

    #[test]
    fn set_partition_counts_are_bell_numbers() {
        let counts: Vec<usize> = (1..=6).map(|n| set_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn pi_product_examples() {
        let zero = PureState::basis(&[2, 2, 2, 2], &[0, 0, 0, 0]).unwrap();
        assert!(is_pi_product(&zero, &Partition::discrete(4), DEFAULT_RANK_TOL).unwrap());
        let s = bell_pair_state();
        assert!(is_pi_product(&s, &part(4, &[&[0], &[1], &[2, 3]]), DEFAULT_RANK_TOL).unwrap());
        assert!(!is_pi_product(&s, &Partition::discrete(4), DEFAULT_RANK_TOL).unwrap());
        for b in bipartitions(3).unwrap() {
            assert!(!is_pi_product(&w3(), &Partition::from_bipartition(&b), DEFAULT_RANK_TOL).unwrap());
        }
        assert!(is_pi_product(&w3(), &Partition::whole(3), DEFAULT_RANK_TOL).unwrap());
    }

    #[test]
    fn finest_examples() {
        let zero = PureState::basis(&[2, 2, 2, 2], &[0, 0, 0, 0]).unwrap();
        assert_eq!(finest_product_partition(&zero, DEFAULT_RANK_TOL).unwrap(), Partition::discrete(4));
        assert_eq!(
            finest_product_partition(&bell_pair_state(), DEFAULT_RANK_TOL).unwrap(),
            part(4, &[&[0], &[1], &[2, 3]])
        );
        assert_eq!(finest_product_partition(&ghz3(), DEFAULT_RANK_TOL).unwrap(), Partition::whole(3));
    }

    #[test]
    fn ghz_finest_agrees_with_all_five_partitions() {
        let ghz = ghz3();
        let products: Vec<Partition> = set_partitions(3)
            .into_iter()
            .filter(|p| is_pi_product(&ghz, p, DEFAULT_RANK_TOL).unwrap())
            .collect();
        assert_eq!(products, vec![Partition::whole(3)]);
    }

    #[test]
    fn gme_examples() {
        assert!(is_gme(&ghz3(), DEFAULT_RANK_TOL).unwrap());
        assert!(is_gme(&w3(), DEFAULT_RANK_TOL).unwrap());
        assert!(!is_gme(&bell_pair_state(), DEFAULT_RANK_TOL).unwrap());
        let single = make_state(&[3], vec![ONE, ONE, ZERO]).unwrap();
        assert!(!is_gme(&single, DEFAULT_RANK_TOL).unwrap());
    }

    #[test]
    fn bell_pair_state_is_product_in_two_cuts_but_not_fully() {
        let s = bell_pair_state();
        let r = separability_report(&s, DEFAULT_RANK_TOL).unwrap();
        assert!(r.product_bipartitions.contains(&Bipartition::new(4, &[0]).unwrap()));
        assert!(r.product_bipartitions.contains(&Bipartition::new(4, &[1]).unwrap()));
        assert!(!is_pi_product(&s, &Partition::discrete(4), DEFAULT_RANK_TOL).unwrap());
    }
}
