#![allow(dead_code)]

use rand::Rng;
use resonance_core::incidence::{generate, Arrangement, Family, Flat};
use resonance_core::qforms::FlatCollection;
use resonance_core::realizer::search_latin_systems;

pub fn corpus() -> Vec<Arrangement> {
    let mut out: Vec<Arrangement> =
        [Family::Braid, Family::Monomial(2), Family::Monomial(3), Family::Hessian, Family::DualHessian]
            .iter()
            .map(|f| generate(f).unwrap())
            .collect();
    let perms = search_latin_systems(3, 3, Some(1)).unwrap().remove(0);
    out.push(generate(&Family::Latin { n: 3, perms }).unwrap());
    out
}

/// Random collection of 2..=5-element subsets pairwise meeting in at most
/// one element; the ground set sometimes has uncovered elements.
pub fn random_collection(rng: &mut impl Rng, max_ground: usize) -> FlatCollection {
    let g = rng.gen_range(2..=max_ground);
    let mut flats: Vec<Flat> = Vec::new();
    for _ in 0..rng.gen_range(1..=2 * g) {
        let size = rng.gen_range(2..=g.min(5));
        let mut pts: Vec<usize> = Vec::new();
        while pts.len() < size {
            let p = rng.gen_range(0..g);
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        let f = Flat::new(pts);
        if flats.iter().all(|h| h.meet(&f) <= 1) {
            flats.push(f);
        }
    }
    if rng.gen_bool(0.5) {
        FlatCollection::new((0..g).collect(), flats).unwrap()
    } else {
        FlatCollection::covering(flats).unwrap()
    }
}

/// Classes of pairwise disjoint flats (parallel classes for AG(2,3)).
pub fn parallel_classes(flats: &[Flat]) -> Vec<Vec<Flat>> {
    let mut classes: Vec<Vec<Flat>> = Vec::new();
    for f in flats {
        match classes.iter_mut().find(|c| c.iter().all(|h| h.meet(f) == 0)) {
            Some(c) => c.push(f.clone()),
            None => classes.push(vec![f.clone()]),
        }
    }
    classes
}

pub fn one_based(v: &[Vec<usize>]) -> Vec<Vec<usize>> {
    v.iter().map(|b| b.iter().map(|i| i + 1).collect()).collect()
}
