mod common;

use common::corpus;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use resonance_core::incidence::{generate, Arrangement, Family};
use resonance_core::resonance::{
    cocycle_space_direct, cocycle_space_via_q, component_of_weight, enumerate_components, generic_weight, h1_dimension,
    random_sum_zero_weight, support_flats, verify_component, ResonanceComponent, Weight,
};
use std::sync::OnceLock;

fn corpus_with_components() -> &'static [(Arrangement, Vec<ResonanceComponent>)] {
    static CELL: OnceLock<Vec<(Arrangement, Vec<ResonanceComponent>)>> = OnceLock::new();
    CELL.get_or_init(|| {
        corpus()
            .into_iter()
            .map(|a| {
                let c = enumerate_components(&a).unwrap();
                (a, c)
            })
            .collect()
    })
}

fn weight_from_component(c: &ResonanceComponent, rng: &mut impl Rng) -> Weight {
    let n = c.basis.ambient();
    loop {
        let mut a = vec![BigInt::zero(); n];
        for v in c.basis.basis() {
            let k = BigInt::from(rng.gen_range(-2..=2));
            for (x, y) in a.iter_mut().zip(v) {
                *x += y * &k;
            }
        }
        let w = Weight::from_big(&a);
        if !w.is_zero() {
            return w;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn direct_system_matches_q_route(seed in any::<u64>(), which in 0usize..6, kind in 0u8..3) {
        let (arr, comps) = &corpus_with_components()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = match kind {
            0 => random_sum_zero_weight(arr.n(), 4, None, &mut rng),
            1 => {
                let f = &arr.primes2()[rng.gen_range(0..arr.primes2().len())];
                random_sum_zero_weight(arr.n(), 4, Some(f.lines()), &mut rng)
            }
            _ => weight_from_component(&comps[rng.gen_range(0..comps.len())], &mut rng),
        };
        let direct = cocycle_space_direct(arr, &w).unwrap();
        let (via_q, _) = cocycle_space_via_q(arr, &w).unwrap();
        prop_assert_eq!(&direct, &via_q);
        prop_assert_eq!(h1_dimension(arr, &w).unwrap(), direct.dim() - 1);
        let a: Vec<BigInt> = resonance_core::linalg::clear_denominators(&w.0);
        prop_assert!(direct.contains(&a));
    }

    #[test]
    fn cocycles_depend_only_on_support(seed in any::<u64>(), which in 0usize..6) {
        let (arr, comps) = &corpus_with_components()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = &comps[rng.gen_range(0..comps.len())];
        let a = weight_from_component(c, &mut rng);
        let b = weight_from_component(c, &mut rng);
        let xa = support_flats(arr, &a).unwrap().map(|x| x.flats().to_vec());
        let xb = support_flats(arr, &b).unwrap().map(|x| x.flats().to_vec());
        if xa == xb {
            prop_assert_eq!(cocycle_space_direct(arr, &a).unwrap(), cocycle_space_direct(arr, &b).unwrap());
        }
    }

    #[test]
    fn cocycle_space_is_stable_inside(seed in any::<u64>(), which in 0usize..6) {
        let (arr, comps) = &corpus_with_components()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = &comps[rng.gen_range(0..comps.len())];
        let a = generic_weight(c, &mut rng).unwrap();
        let z = cocycle_space_direct(arr, &a).unwrap();
        prop_assert_eq!(&z, &c.basis);
        // Any nonzero b in Z(a).
        let b = loop {
            let mut v = vec![BigInt::zero(); arr.n()];
            for basis in z.basis() {
                let k = BigInt::from(rng.gen_range(-3..=3));
                for (x, y) in v.iter_mut().zip(basis) {
                    *x += y * &k;
                }
            }
            if v.iter().any(|x| !x.is_zero()) {
                break Weight(v.into_iter().map(BigRational::from).collect());
            }
        };
        prop_assert_eq!(cocycle_space_direct(arr, &b).unwrap(), z);
    }
}

#[test]
fn components_are_verified_and_recovered() {
    for (arr, comps) in corpus_with_components() {
        for (k, c) in comps.iter().enumerate() {
            verify_component(arr, c, 1000 + k as u64).unwrap();
            assert_eq!(c.dim() + 1, c.affine_blocks.len());
            assert!(c.dim() >= 2);
            // Every flat meets every affine block.
            for f in &c.flats {
                assert!(c.affine_blocks.iter().all(|b| b.iter().any(|&i| f.contains(i))));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(k as u64);
            let w = generic_weight(c, &mut rng).unwrap();
            assert_eq!(component_of_weight(arr, &w).unwrap().as_ref(), Some(c));
        }
    }
}

#[test]
fn monomial_two_components() {
    let arr = generate(&Family::Monomial(2)).unwrap();
    let comps = enumerate_components(&arr).unwrap();
    let bush = comps.iter().find(|c| c.flats.len() == 7).expect("component on all multiple points");
    assert_eq!(bush.support.len(), 9);
    assert_eq!(bush.affine_blocks.len(), 3);
    assert!(bush.affine_blocks.iter().all(|b| b.len() == 3));
    let triples = comps.iter().find(|c| c.flats.len() == 4 && !c.is_local()).expect("component on the triples");
    assert_eq!(triples.support.len(), 6);
    assert!(triples.affine_blocks.iter().all(|b| b.len() == 2));
}
