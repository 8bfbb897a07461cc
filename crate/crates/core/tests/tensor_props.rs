mod common;

use common::*;
use egeo_core::linalg::{self, c, CMatrix, C64};
use egeo_core::tensor::{
    concurrence, cofactor_matrix, flatten, incidence_lift, minor_rank, numerical_rank, schmidt_decompose,
    Bipartition, PureState, DEFAULT_RANK_TOL,
};
use proptest::prelude::*;

fn dims_strategy() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(2usize..=4, 2..=4)
}

/// A prefix cut whose flattening fits in 8 x 8.
fn small_cut(dims: &[usize]) -> Option<usize> {
    (1..dims.len()).find(|&s| {
        let rows: usize = dims[..s].iter().product();
        let cols: usize = dims[s..].iter().product();
        rows <= 8 && cols <= 8
    })
}

fn prefix_cut(n: usize, split: usize) -> Bipartition {
    Bipartition::new(n, &(0..split).collect::<Vec<_>>()).unwrap()
}

fn kron_all(ms: &[CMatrix]) -> CMatrix {
    ms.iter().skip(1).fold(ms[0].clone(), |acc, m| acc.kronecker(m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn numerical_rank_matches_minor_rank(
        dims in dims_strategy().prop_filter("needs a cut within 8x8", |d| small_cut(d).is_some()),
        k in 1usize..=4,
        seed in any::<u64>(),
    ) {
        let split = small_cut(&dims).unwrap();
        let mut rng = rng(seed);
        let psi = state_with_cut_rank(&mut rng, &dims, split, k);
        let m = flatten(&psi, &prefix_cut(dims.len(), split)).unwrap();
        prop_assert_eq!(
            numerical_rank(m.matrix(), DEFAULT_RANK_TOL),
            minor_rank(m.matrix(), DEFAULT_RANK_TOL).unwrap()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ranks_are_scale_invariant(
        dims in dims_strategy(),
        k in 1usize..=3,
        seed in any::<u64>(),
        re in -5.0f64..5.0,
        im in -5.0f64..5.0,
    ) {
        let lambda = c(re, im);
        prop_assume!(lambda.norm() > 1e-3);
        let mut rng = rng(seed);
        let psi = state_with_cut_rank(&mut rng, &dims, 1, k);
        let scaled = psi.scaled(lambda).unwrap();
        for split in 1..dims.len() {
            let cut = prefix_cut(dims.len(), split);
            let r0 = numerical_rank(flatten(&psi, &cut).unwrap().matrix(), DEFAULT_RANK_TOL);
            let r1 = numerical_rank(flatten(&scaled, &cut).unwrap().matrix(), DEFAULT_RANK_TOL);
            prop_assert_eq!(r0, r1);
        }
        if dims == [2, 2] {
            prop_assert_eq!(concurrence(&psi).unwrap() < 1e-9, concurrence(&scaled).unwrap() < 1e-9);
        }
    }

    #[test]
    fn schmidt_decomposition_is_normalized_and_exact(dims in dims_strategy(), k in 1usize..=4, seed in any::<u64>()) {
        let mut rng = rng(seed);
        let psi = state_with_cut_rank(&mut rng, &dims, 1, k);
        let cut = prefix_cut(dims.len(), 1);
        let sd = schmidt_decompose(&psi, &cut).unwrap();
        let total: f64 = sd.sigmas.iter().map(|s| s * s).sum();
        prop_assert!((total - 1.0).abs() < 1e-10);
        let m = flatten(&psi.normalized(), &cut).unwrap();
        let err = (sd.reassemble() - m.matrix()).norm();
        prop_assert!(err < 1e-9, "reconstruction error {}", err);
        prop_assert_eq!(sd.rank(), sd.sigmas.len());
        prop_assert_eq!(sd.rank(), numerical_rank(m.matrix(), DEFAULT_RANK_TOL));
    }

    #[test]
    fn local_invertible_maps_preserve_rank(dims in dims_strategy(), k in 1usize..=3, seed in any::<u64>()) {
        let mut rng = rng(seed);
        let psi = state_with_cut_rank(&mut rng, &dims, 1, k);
        let locals: Vec<CMatrix> = dims.iter().map(|&d| random_matrix(&mut rng, d, d)).collect();
        let moved = psi.apply(&kron_all(&locals)).unwrap();
        for split in 1..dims.len() {
            let cut = prefix_cut(dims.len(), split);
            prop_assert_eq!(
                numerical_rank(flatten(&psi, &cut).unwrap().matrix(), DEFAULT_RANK_TOL),
                numerical_rank(flatten(&moved, &cut).unwrap().matrix(), DEFAULT_RANK_TOL)
            );
        }
    }

    #[test]
    fn incidence_lift_round_trips_with_unique_spans(dims in dims_strategy(), k in 1usize..=3, seed in any::<u64>()) {
        let mut rng = rng(seed);
        let psi = state_with_cut_rank(&mut rng, &dims, 1, k);
        let cut = prefix_cut(dims.len(), 1);
        let lift = incidence_lift(&psi, &cut, DEFAULT_RANK_TOL).unwrap();
        let m = flatten(&psi, &cut).unwrap();
        prop_assert!((lift.reassemble() - m.matrix()).norm() < 1e-9 * m.matrix().norm().max(1.0));
        // a unitary on the B side and a rescaling leave the A-side span alone
        let d_b: usize = dims[1..].iter().product();
        let q = random_matrix(&mut rng, d_b, d_b).qr().q();
        let other = psi
            .apply(&CMatrix::identity(dims[0], dims[0]).kronecker(&q))
            .unwrap()
            .scaled(c(0.3, -1.7))
            .unwrap();
        let lift2 = incidence_lift(&other, &cut, DEFAULT_RANK_TOL).unwrap();
        prop_assert_eq!(lift.rank(), lift2.rank());
        prop_assert!((lift.projector_a() - lift2.projector_a()).norm() < 1e-9);
    }
}

/// Row-reduced constructions of 3 x 3 matrices of each rank.
fn three_by_three_of_rank(rng: &mut rand_chacha::ChaCha8Rng, r: usize) -> CMatrix {
    if r == 0 {
        return CMatrix::zeros(3, 3);
    }
    rank_k_matrix(rng, 3, 3, r)
}

#[test]
fn cofactor_vanishes_exactly_on_rank_at_most_one() {
    let mut rng = rng(99);
    for r in 0..=3 {
        for _ in 0..25 {
            let m = three_by_three_of_rank(&mut rng, r);
            let cof = cofactor_matrix(&m).unwrap();
            let scale = linalg::max_modulus(&m).max(1.0).powi(2);
            let vanishes = linalg::max_modulus(&cof) <= 1e-9 * scale;
            assert_eq!(vanishes, r <= 1, "rank {r}");
            assert_eq!(vanishes, minor_rank(&m, DEFAULT_RANK_TOL).unwrap() <= 1, "rank {r}");
        }
    }
    // integer constructions vanish with no rounding at all
    let rank1 = linalg::real_matrix(&[&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0], &[-1.0, -2.0, -3.0]]);
    assert!(cofactor_matrix(&rank1).unwrap().iter().all(|z| *z == C64::new(0.0, 0.0)));
}

#[test]
fn product_state_has_rank_one_everywhere() {
    let mut rng = rng(5);
    let factors: Vec<Vec<C64>> = [2, 3, 2].iter().map(|&d| random_vec(&mut rng, d)).collect();
    let psi = PureState::product(&factors).unwrap();
    for split in 1..3 {
        let m = flatten(&psi, &prefix_cut(3, split)).unwrap();
        assert_eq!(numerical_rank(m.matrix(), DEFAULT_RANK_TOL), 1);
    }
}
