use num_bigint::BigInt;
use resonance_core::labelings::{
    bush_affine_test, enumerate_affine_labelings, full_graph_affine_test, labeling_from_nullvector,
    nullvector_from_labeling, up_to_symmetry, Graph,
};
use resonance_core::vinberg::{classify_block, Kind};

fn is_affine(g: &Graph, m: &[i64]) -> bool {
    classify_block(&g.q(m)).unwrap().kind == Kind::Affine
}

fn test_graphs() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 2..=6 {
        out.push((format!("P{n}"), Graph::path(n)));
    }
    for n in 3..=6 {
        out.push((format!("C{n}"), Graph::cycle(n)));
    }
    for l in 2..=4 {
        out.push((format!("S{l}"), Graph::star(l)));
    }
    for n in 2..=4 {
        out.push((format!("K{n}"), Graph::complete(n)));
    }
    out
}

/// Every vector in `[1, bound]^n` in lexicographic order.
fn for_each_vector(n: usize, bound: i64, mut f: impl FnMut(&[i64])) {
    let mut v = vec![1i64; n];
    loop {
        f(&v);
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if v[i] < bound {
                v[i] += 1;
                break;
            }
            v[i] = 1;
        }
    }
}

#[test]
fn enumerations_are_affine_and_locally_complete() {
    for (name, g) in test_graphs() {
        let list = enumerate_affine_labelings(&g).unwrap();
        assert!(!list.is_empty(), "{name}");
        for m in &list {
            assert!(is_affine(&g, m), "{name}: {m:?}");
        }
        let laplace: Vec<i64> = (0..g.n()).map(|v| g.degree(v) as i64).collect();
        assert!(list.contains(&laplace), "{name}: Laplace labeling missing");
        let ones = vec![BigInt::from(1); g.n()];
        assert_eq!(labeling_from_nullvector(&g, &ones).unwrap(), laplace);
        let bound = list.iter().flatten().copied().max().unwrap() + 2;
        if (bound as f64).powi(g.n() as i32) <= 3e5 {
            for_each_vector(g.n(), bound, |m| {
                assert_eq!(is_affine(&g, m), list.binary_search(&m.to_vec()).is_ok(), "{name}: {m:?}");
            });
        }
    }
}

#[test]
fn nullvector_bijection_round_trips() {
    for (name, g) in test_graphs() {
        for m in enumerate_affine_labelings(&g).unwrap() {
            let u = nullvector_from_labeling(&g, &m).unwrap();
            assert_eq!(labeling_from_nullvector(&g, &u).unwrap(), m, "{name}");
        }
    }
}

#[test]
fn complete_graph_counts_match_egyptian_fractions() {
    // Unordered solutions of Σ 1/x_i = 1 in n terms.
    for (n, count) in [(2, 1), (3, 3), (4, 14), (5, 147)] {
        let g = Graph::complete(n);
        let list = enumerate_affine_labelings(&g).unwrap();
        assert!(list.iter().all(|m| full_graph_affine_test(m)));
        assert_eq!(up_to_symmetry(&g, &list).len(), count, "K{n}");
    }
}

#[test]
fn closed_forms_agree_with_classification() {
    for n in 2..=4 {
        let g = Graph::complete(n);
        for_each_vector(n, 7, |m| assert_eq!(full_graph_affine_test(m), is_affine(&g, m), "{m:?}"));
    }
    for leaves in 1..=4 {
        let g = Graph::star(leaves);
        for_each_vector(leaves + 1, 6, |m| {
            let kernel = bush_affine_test(m[0], &m[1..]);
            assert_eq!(kernel.is_some(), is_affine(&g, m), "{m:?}");
            if let Some(u) = kernel {
                assert_eq!(nullvector_from_labeling(&g, m).unwrap(), u);
            }
        });
    }
}

#[test]
fn parallel_and_sequential_agree() {
    use resonance_core::labelings::enumerate_affine_labelings_with;
    use resonance_core::par::Mode;
    let g = Graph::star(4);
    assert_eq!(
        enumerate_affine_labelings_with(&g, Mode::Sequential).unwrap(),
        enumerate_affine_labelings_with(&g, Mode::Parallel).unwrap()
    );
}
