mod common;

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use common::*;
use egeo_core::cech::{
    check_reduction, class_order, coboundary_solve, is_2cocycle, pgl_cocycle_defect, rescale_lifts, symbol_cover,
    CechCover,
};
use egeo_core::linalg::{CMatrix, C64};
use egeo_core::satake::{
    d_product_oracle, is_222_product, is_22_product, tensor_spectrum, LocalSpectra, SpectralClass,
    DEFAULT_SPECTRAL_TOL,
};
use egeo_core::splitting::{factor_sumset, SplittingType, SumsetFactorization};
use proptest::prelude::*;
use rand::Rng;

/// Transitions `h_a h_b^{-1}` twisted by random `m`-th roots of unity on the
/// torus nerve; `local` draws every `h_a` as a Kronecker product. Each `h_a`
/// is well conditioned, so triple products are scalar to rounding.
fn gauge_cover(seed: u64, local: bool, m: u64) -> CechCover {
    let mut rng = rng(seed);
    let base = symbol_cover(2).unwrap();
    let h: Vec<CMatrix> = (0..9)
        .map(|_| {
            if local {
                well_conditioned(&mut rng, 2).kronecker(&well_conditioned(&mut rng, 2))
            } else {
                well_conditioned(&mut rng, 4)
            }
        })
        .collect();
    let transitions = base
        .pairs()
        .into_iter()
        .map(|(a, b)| {
            let z = C64::from_polar(1.0, TAU * rng.random_range(0..m) as f64 / m as f64);
            ((a, b), &h[a] * h[b].clone().try_inverse().unwrap() * z)
        })
        .collect();
    CechCover { transitions, ..base }
}

fn unit(rng: &mut rand_chacha::ChaCha8Rng) -> C64 {
    C64::from_polar(rng.random_range(0.5..2.0), rng.random_range(0.0..TAU))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn twisted_honest_cocycles_are_coboundaries(seed in any::<u64>(), m in 2u64..=6) {
        let cover = gauge_cover(seed, false, m);
        let c = pgl_cocycle_defect(&cover, Some(m)).unwrap();
        prop_assert!(is_2cocycle(&c, &cover));
        prop_assert_eq!(class_order(&c, &cover).unwrap(), 1);
        let b = coboundary_solve(&c, &cover).unwrap();
        let fixed = rescale_lifts(&cover, &b, m).unwrap();
        let trivial = pgl_cocycle_defect(&fixed, Some(m)).unwrap();
        prop_assert!(trivial.values.values().all(|&e| e == 0));
    }

    #[test]
    fn reducible_covers_respect_the_torsion_bound(seed in any::<u64>()) {
        let cover = gauge_cover(seed, true, 2);
        let rep = check_reduction(&cover, 2, 2, 1e-9).unwrap();
        prop_assert!(rep.reducible);
        let c = pgl_cocycle_defect(&cover, None).unwrap();
        prop_assert_eq!(rep.torsion_bound % class_order(&c, &cover).unwrap(), 0);
    }

    #[test]
    fn symbol_class_survives_any_single_rescaling(pair in 0usize..36, k in 0u64..4, p in 2usize..=3) {
        let cover = symbol_cover(p).unwrap();
        let m = (p * p) as u64;
        let (a, b) = cover.pairs()[pair];
        let mut twisted = cover.clone();
        let g = twisted.transitions[&(a, b)].clone() * C64::from_polar(1.0, TAU * k as f64 / m as f64);
        twisted.transitions.insert((b, a), g.clone().try_inverse().unwrap());
        twisted.transitions.insert((a, b), g);
        let c = pgl_cocycle_defect(&twisted, Some(m)).unwrap();
        prop_assert!(is_2cocycle(&c, &twisted));
        let order = class_order(&c, &twisted).unwrap();
        prop_assert_eq!(order, m);
        prop_assert_eq!(m % order, 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn constructed_sumsets_factor_and_recombine(
        b in prop::collection::vec(0i64..6, 1..=3),
        c in prop::collection::vec(0i64..6, 1..=4),
        t in -10i64..10,
        s in -7i64..7,
    ) {
        let (d_a, d_b) = (b.len(), c.len());
        let a = SumsetFactorization { b, c, t }.recombine();
        let f = factor_sumset(&a, d_a, d_b).unwrap().expect("constructed from a factorization");
        prop_assert_eq!(f.recombine(), a.clone());
        prop_assert_eq!(f.b[0], 0);
        prop_assert_eq!(f.c[0], 0);
        prop_assert!(factor_sumset(&a, d_b, d_a).unwrap().is_some());
        let moved = factor_sumset(&a.shifted(s), d_a, d_b).unwrap().unwrap();
        prop_assert_eq!(moved.t, f.t + s);
    }

    #[test]
    fn sumset_verdict_is_transpose_symmetric(degrees in prop::collection::vec(0i64..5, 6)) {
        let a = SplittingType::new(degrees);
        prop_assert_eq!(
            factor_sumset(&a, 2, 3).unwrap().is_some(),
            factor_sumset(&a, 3, 2).unwrap().is_some()
        );
        if let Some(f) = factor_sumset(&a, 2, 3).unwrap() {
            prop_assert_eq!(f.recombine(), a);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tensor_spectra_pass_the_polynomial_tests(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let l22 = LocalSpectra::new((0..2).map(|_| vec![unit(&mut rng), unit(&mut rng)]).collect()).unwrap();
        prop_assert!(is_22_product(&tensor_spectrum(&l22), DEFAULT_SPECTRAL_TOL).unwrap().0);
        let l222 = LocalSpectra::new((0..3).map(|_| vec![unit(&mut rng), unit(&mut rng)]).collect()).unwrap();
        prop_assert!(is_222_product(&tensor_spectrum(&l222), DEFAULT_SPECTRAL_TOL).unwrap());
    }

    #[test]
    fn oracle_matches_the_22_criterion(seed in any::<u64>(), product in any::<bool>()) {
        let mut rng = rng(seed);
        let s = if product {
            tensor_spectrum(&LocalSpectra::new((0..2).map(|_| vec![unit(&mut rng), unit(&mut rng)]).collect()).unwrap())
        } else {
            SpectralClass::new((0..4).map(|_| unit(&mut rng)).collect()).unwrap()
        };
        let crit = is_22_product(&s, DEFAULT_SPECTRAL_TOL).unwrap().0;
        let oracle = d_product_oracle(&s, &[2, 2], DEFAULT_SPECTRAL_TOL).unwrap().is_some();
        prop_assert_eq!(crit, oracle);
        prop_assert_eq!(crit, product);
    }
}

#[test]
fn rescaling_map_keys_cover_every_pair() {
    let cover = symbol_cover(2).unwrap();
    let zero: BTreeMap<(usize, usize), u64> = cover.pairs().into_iter().map(|p| (p, 0)).collect();
    let same = rescale_lifts(&cover, &zero, 4).unwrap();
    assert_eq!(pgl_cocycle_defect(&same, Some(4)).unwrap(), pgl_cocycle_defect(&cover, Some(4)).unwrap());
}
