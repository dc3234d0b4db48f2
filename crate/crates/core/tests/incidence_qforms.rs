mod common;

use common::random_collection;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use resonance_core::incidence::{
    arrangement_from_incidence, flats_from_integer_lines, generate, Arrangement, Family, Flat,
};
use resonance_core::linalg::{determinant, IntMatrix};
use resonance_core::qforms::{build_j, build_q, nullspace_star, nullspace_star_j, FlatCollection};
use resonance_core::Error;

fn pair_count_holds(arr: &Arrangement) -> bool {
    let n = arr.n();
    arr.flats2().iter().map(|f| f.multiplicity() * (f.multiplicity() - 1) / 2).sum::<usize>() == n * (n - 1) / 2
}

/// Multiple points by brute force: maximal sets of lines whose every triple
/// has a vanishing 3x3 determinant.
fn multiple_points_oracle(lines: &[[i64; 3]]) -> Vec<Vec<usize>> {
    let n = lines.len();
    let concurrent = |a: usize, b: usize, c: usize| {
        determinant(&IntMatrix::from_rows(&[lines[a], lines[b], lines[c]])) == BigInt::from(0)
    };
    let mut out: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let mut set = vec![a, b];
            set.extend((0..n).filter(|&c| c != a && c != b && concurrent(a, b, c)));
            set.sort_unstable();
            if set.len() >= 3 && !out.contains(&set) {
                out.push(set);
            }
        }
    }
    out.sort();
    out
}

fn line_strategy() -> impl Strategy<Value = Vec<[i64; 3]>> {
    prop::collection::vec(prop::array::uniform3(-2i64..=2), 2..9)
}

proptest! {
    #[test]
    fn flats_match_determinant_oracle(lines in line_strategy()) {
        match flats_from_integer_lines(&lines) {
            Ok(arr) => {
                prop_assert!(pair_count_holds(&arr));
                let got: Vec<Vec<usize>> = arr.primes2().iter().map(|f| f.lines().to_vec()).collect();
                prop_assert_eq!(got, multiple_points_oracle(&lines));
            }
            Err(Error::ZeroLine { .. }) | Err(Error::DuplicateLine { .. }) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn q_and_j_nullspaces_agree(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_collection(&mut rng, 12);
        let b = build_q(&c);
        prop_assert_eq!(nullspace_star(b.q()), nullspace_star_j(&build_j(&c), c.ground().len()));
    }

    #[test]
    fn q_shape(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_collection(&mut rng, 12);
        let b = build_q(&c);
        let q = b.q();
        let mut block_of = vec![0; q.rows()];
        for (k, block) in b.partition().iter().enumerate() {
            for &i in block {
                block_of[i] = k;
            }
        }
        for i in 0..q.rows() {
            if c.covers() {
                prop_assert!(q[(i, i)] >= 0);
            }
            for j in 0..q.rows() {
                if i != j {
                    prop_assert!(q[(i, j)] == 0 || q[(i, j)] == -1);
                    if block_of[i] != block_of[j] {
                        prop_assert_eq!(q[(i, j)], 0);
                    }
                }
            }
        }
        // Rows of J with two or more ones give back the flats.
        let j = build_j(&c);
        let rebuilt: Vec<Flat> = j
            .iter()
            .filter(|r| r.iter().filter(|&&x| x == 1).count() >= 2)
            .map(|r| Flat::new((0..r.len()).filter(|&k| r[k] == 1).map(|k| c.ground()[k]).collect()))
            .collect();
        let expected: Vec<Flat> = c.flats().iter().filter(|f| f.multiplicity() >= 2).cloned().collect();
        prop_assert_eq!(rebuilt, expected);
    }
}

#[test]
fn corpus_pair_counts() {
    for arr in common::corpus() {
        assert!(pair_count_holds(&arr), "{:?}", arr.name());
    }
}

#[test]
fn braid_two_ways() {
    let by_coeffs = generate(&Family::Braid).unwrap();
    let by_incidence =
        arrangement_from_incidence(6, &[vec![0, 1, 3], vec![0, 2, 4], vec![1, 2, 5], vec![3, 4, 5]]).unwrap();
    assert_eq!(by_coeffs.canonical(), by_incidence.canonical());
    assert_eq!(by_coeffs.flats2().len(), 7);
}

#[test]
fn monomial_counts() {
    for r in 1..=5 {
        let arr = generate(&Family::Monomial(r)).unwrap();
        assert_eq!(arr.n(), 3 * r + 3);
        let big = arr.primes2().iter().filter(|f| f.multiplicity() == r + 2).count();
        let triples = arr.primes2().iter().filter(|f| f.multiplicity() == 3).count();
        if r == 1 {
            assert_eq!((big, triples), (4, 4));
        } else {
            assert_eq!((big, triples), (3, r * r));
        }
        assert!(pair_count_holds(&arr));
    }
    assert_eq!(generate(&Family::Monomial(1)).unwrap().canonical(), generate(&Family::Braid).unwrap().canonical());
}

#[test]
fn hessian_incidence() {
    let arr = generate(&Family::Hessian).unwrap();
    assert_eq!(arr.n(), 12);
    assert_eq!(arr.primes2().len(), 9);
    assert!(arr.primes2().iter().all(|f| f.multiplicity() == 4));
    assert!((0..12).all(|i| arr.primes2().iter().filter(|f| f.contains(i)).count() == 3));
}

#[test]
fn collection_errors() {
    assert!(matches!(FlatCollection::new(vec![0, 1, 2], vec![]), Err(Error::BadCollection(_))));
    let clash = FlatCollection::new(vec![0, 1, 2, 3], vec![Flat::new(vec![0, 1, 2]), Flat::new(vec![0, 1, 3])]);
    assert!(matches!(clash, Err(Error::PairCollision { .. })));
    assert!(matches!(arrangement_from_incidence(3, &[vec![0, 1, 5]]), Err(Error::BadIndex(_))));
}
