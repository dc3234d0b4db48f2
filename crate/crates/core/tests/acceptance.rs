//! One line per acceptance criterion. Exits nonzero if any criterion fails.

mod common;

use common::{corpus, one_based, parallel_classes, random_collection};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use resonance_core::incidence::{generate, Family, Flat};
use resonance_core::labelings::{enumerate_affine_labelings, up_to_symmetry, Graph};
use resonance_core::linalg::IntMatrix;
use resonance_core::pencils::{blowup_intersection_matrix, compare_roots, equality_case, euler_feasible_k, f_bound};
use resonance_core::qforms::{build_j, build_q, nullspace_star, nullspace_star_j};
use resonance_core::realizer::{
    a2_affine, cartan_of_graph, direct_sum, incidence_isomorphic, jc, realize, realize_up_to_columns, Realization,
    RealizeOptions,
};
use resonance_core::resonance::{
    cocycle_space_direct, cocycle_space_via_q, component_from_collection, enumerate_components, generic_weight,
    random_sum_zero_weight, Weight,
};
use resonance_core::vinberg::{classify_collection, Kind};
use resonance_core::Error;
use std::cmp::Ordering;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;
/// Name, time bound in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn fail(e: Error) -> String {
    e.to_string()
}

fn c1_braid_components() -> Outcome {
    let arr = generate(&Family::Braid).map_err(fail)?;
    let comps = enumerate_components(&arr).map_err(fail)?;
    check(comps.len() == 5, format!("{} components", comps.len()))?;
    check(comps.iter().all(|c| c.dim() == 2), "a component of dimension other than 2")?;
    let local = comps.iter().filter(|c| c.is_local()).count();
    check(local == 4, format!("{local} local components"))?;
    let essential = comps.iter().find(|c| !c.is_local()).expect("one essential");
    let mut blocks = one_based(&essential.affine_blocks);
    blocks.sort();
    check(blocks == vec![vec![1, 6], vec![2, 5], vec![3, 4]], format!("essential blocks {blocks:?}"))?;
    Ok("5 components of dim 2, Π₁ = {{1,6},{2,5},{3,4}}".into())
}

fn scaled(w: Weight, rng: &mut impl Rng) -> Weight {
    let s = BigRational::new(BigInt::from(rng.gen_range(1..=7)), BigInt::from(rng.gen_range(1..=5)));
    Weight(w.0.into_iter().map(|x| x * &s).collect())
}

fn c2_oracle_equivalence() -> Outcome {
    let fams = [Family::Braid, Family::Hessian, Family::DualHessian, Family::Monomial(2), Family::Monomial(3)];
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut resonant = 0;
    for fam in &fams {
        let arr = generate(fam).map_err(fail)?;
        let comps = enumerate_components(&arr).map_err(fail)?;
        for t in 0..100 {
            let w = match t % 4 {
                0 => random_sum_zero_weight(arr.n(), 5, None, &mut rng),
                1 => {
                    let f = &arr.primes2()[rng.gen_range(0..arr.primes2().len())];
                    random_sum_zero_weight(arr.n(), 5, Some(f.lines()), &mut rng)
                }
                2 if !comps.is_empty() => {
                    let c = &comps[rng.gen_range(0..comps.len())];
                    scaled(generic_weight(c, &mut rng).map_err(fail)?, &mut rng)
                }
                _ => {
                    // Sparse integer combination on a component: often nongeneric.
                    let Some(c) = (!comps.is_empty()).then(|| &comps[rng.gen_range(0..comps.len())]) else {
                        continue;
                    };
                    let mut a = vec![BigInt::from(0); arr.n()];
                    for v in c.basis.basis() {
                        let k = BigInt::from(rng.gen_range(-1..=1));
                        for (x, y) in a.iter_mut().zip(v) {
                            *x += y * &k;
                        }
                    }
                    let w = Weight::from_big(&a);
                    if w.is_zero() {
                        continue;
                    }
                    scaled(w, &mut rng)
                }
            };
            let direct = cocycle_space_direct(&arr, &w).map_err(fail)?;
            let (via_q, _) = cocycle_space_via_q(&arr, &w).map_err(fail)?;
            check(direct == via_q, format!("{}: bases differ for weight {:?}", fam.label(), w.0))?;
            resonant += usize::from(direct.dim() >= 2);
        }
    }
    Ok(format!("5 arrangements x 100 weights agree ({resonant} resonant)"))
}

fn published_d4_list() -> Vec<Vec<i64>> {
    [
        [4, 1, 1, 1, 1],
        [3, 2, 2, 1, 1],
        [2, 2, 2, 2, 2],
        [2, 3, 3, 3, 1],
        [2, 6, 3, 2, 1],
        [2, 4, 4, 2, 1],
        [1, 4, 4, 4, 4],
        [1, 3, 4, 4, 6],
        [1, 12, 4, 3, 3],
        [1, 6, 6, 3, 3],
        [1, 12, 12, 3, 2],
        [1, 15, 10, 3, 2],
        [1, 18, 9, 3, 2],
        [1, 24, 8, 3, 2],
        [1, 42, 7, 3, 2],
        [1, 8, 8, 4, 2],
        [1, 12, 6, 4, 2],
        [1, 20, 5, 4, 2],
        [1, 10, 5, 5, 2],
        [1, 6, 6, 6, 2],
    ]
    .iter()
    .map(|v| v.to_vec())
    .collect()
}

fn sort_leaves(mut v: Vec<i64>) -> Vec<i64> {
    v[1..].sort_unstable_by(|a, b| b.cmp(a));
    v
}

fn c3_d4_labelings() -> Outcome {
    let g = Graph::star(4);
    let all = enumerate_affine_labelings(&g).map_err(fail)?;
    let mut got: Vec<Vec<i64>> = up_to_symmetry(&g, &all).into_iter().map(sort_leaves).collect();
    got.sort();
    let mut want: Vec<Vec<i64>> = published_d4_list().into_iter().map(sort_leaves).collect();
    want.sort();
    check(got == want, format!("{} classes, differing from the list", got.len()))?;
    Ok(format!("20 classes ({} labelings before leaf symmetry)", all.len()))
}

fn c4_example_s() -> Outcome {
    let q = IntMatrix::from_rows(&[[1, 0, 0, 0], [0, 3, -1, -1], [0, -1, 3, -1], [0, -1, -1, 3]]);
    let r = realize(&q).map_err(fail)?;
    check(r.is_empty(), format!("{} realizations", r.len()))?;
    Ok("no realizations".into())
}

fn with_ones_column(rows: &[[u8; 4]]) -> Realization {
    // Column 0 is the centre of the star, columns 1..=4 the leaves.
    let mut out: Vec<Vec<u8>> = rows.iter().map(|r| [&[0u8][..], &r[..]].concat()).collect();
    out.extend(std::iter::repeat_n(vec![1, 0, 0, 0, 0], 3));
    Realization::from_rows(out, 5)
}

fn c5_d4_realizations() -> Outcome {
    let q = cartan_of_graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
    let raw = realize(&q).map_err(fail)?;
    let classes = realize_up_to_columns(&q, &RealizeOptions::default()).map_err(fail)?;
    let j1 = with_ones_column(&[
        [1, 1, 1, 1],
        [1, 0, 0, 0],
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
        [0, 0, 0, 1],
    ]);
    let j2 = with_ones_column(&[
        [1, 1, 1, 0],
        [1, 0, 0, 1],
        [1, 0, 0, 0],
        [0, 1, 0, 1],
        [0, 1, 0, 0],
        [0, 0, 1, 1],
        [0, 0, 1, 0],
    ]);
    let j3 = with_ones_column(&[[1, 1, 0, 0], [1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 0, 1], [0, 0, 1, 1]]);
    let listed = [j1, j2, j3];
    check(listed.iter().all(|j| j.q() == q), "a listed matrix does not realize Q")?;
    check(classes.len() == 3, format!("{} classes", classes.len()))?;
    for j in &listed {
        let matches = classes.iter().filter(|c| incidence_isomorphic(c, j)).count();
        check(matches == 1, format!("listed matrix matched {matches} classes"))?;
    }
    for r in &raw {
        check(listed.iter().any(|j| incidence_isomorphic(r, j)), "realization outside the list")?;
    }
    Ok(format!("3 classes = J1, J2, J3 (with the centre's 3 padding rows); {} with labeled leaves", raw.len()))
}

fn c6_a2_blocks() -> Outcome {
    let four = direct_sum(&[a2_affine(), a2_affine(), a2_affine(), a2_affine()]);
    let classes = realize_up_to_columns(&four, &RealizeOptions::default()).map_err(fail)?;
    check(classes.len() == 1, format!("{} classes for four blocks", classes.len()))?;
    check(incidence_isomorphic(&classes[0], &jc()), "four-block realization is not J_C")?;
    let three = direct_sum(&[a2_affine(), a2_affine(), a2_affine()]);
    let raw = realize(&three).map_err(fail)?;
    let first9 = jc().first_columns(9);
    check(!raw.is_empty(), "three blocks not realized")?;
    check(raw.iter().all(|r| incidence_isomorphic(r, &first9)), "three-block realization differs from J_C[1..9]")?;
    Ok(format!("four blocks: 1 class = J_C; three blocks: {} labeled, all = first 9 columns of J_C", raw.len()))
}

fn c7_trichotomy() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut affine = 0;
    for t in 0..1000 {
        let c = random_collection(&mut rng, 12);
        let b = build_q(&c);
        let class = classify_collection(&b).map_err(|e| format!("collection {t}: {e}"))?;
        affine += usize::from(class.is_affine());
        let j = build_j(&c);
        check(
            nullspace_star(b.q()) == nullspace_star_j(&j, c.ground().len()),
            format!("collection {t}: V(Q)* != V(J)*"),
        )?;
    }
    Ok(format!("1000 collections, no violation ({affine} affine type), V(Q)* = V(J)* on all"))
}

fn c8_blowup() -> Outcome {
    let braid = generate(&Family::Braid).map_err(fail)?;
    let hessian = generate(&Family::Hessian).map_err(fail)?;
    let m2 = generate(&Family::Monomial(2)).map_err(fail)?;
    let mut cases: Vec<(&str, _, Vec<Flat>)> =
        vec![("braid", &braid, braid.primes2().to_vec()), ("hessian", &hessian, hessian.primes2().to_vec())];
    let big: Vec<Flat> = m2.primes2().iter().filter(|f| f.multiplicity() == 4).cloned().collect();
    let triples: Vec<Flat> = m2.primes2().iter().filter(|f| f.multiplicity() == 3).cloned().collect();
    cases.push(("monomial(2) bush", &m2, m2.primes2().to_vec()));
    cases.push(("monomial(2) triples", &m2, triples));
    check(big.len() == 3, "monomial(2) shape")?;
    for (name, arr, x) in &cases {
        check(component_from_collection(arr, x.clone()).map_err(fail)?.is_some(), format!("{name}: not a component"))?;
        let form = blowup_intersection_matrix(arr, x).map_err(fail)?;
        check(form.agrees(), format!("{name}: form differs from -Q"))?;
    }
    let hform = blowup_intersection_matrix(&hessian, hessian.primes2()).map_err(fail)?;
    check((0..12).all(|i| hform.matrix[(i, i)] == -2), "hessian diagonal")?;
    Ok("form = -Q on braid, hessian and both monomial(2) collections".into())
}

fn c9_euler() -> Outcome {
    let first: Vec<u64> = (2..=6).map(euler_feasible_k).collect::<Result<_, _>>().map_err(fail)?;
    check(first == vec![3, 4, 4, 4, 5], format!("values {first:?}"))?;
    for n in 2..=1_000_000u64 {
        let k = euler_feasible_k(n).map_err(fail)?;
        check(k <= 5 && k == 6 * (n - 1) / n, format!("n = {n}: k = {k}"))?;
    }
    for n in 2..=1000u64 {
        check(equality_case(n).map_err(fail)? == (n == 2 || n == 3), format!("equality case at n = {n}"))?;
    }
    Ok("k = 3,4,4,4,5 for n = 2..6; k <= 5 up to 10^6; equality iff n in {2,3}".into())
}

fn c10_f_bound() -> Outcome {
    for r in 5..200u64 {
        check(
            compare_roots(r, 2, r + 1, 2).map_err(fail)? == Ordering::Greater,
            format!("root not decreasing at r = {r}"),
        )?;
    }
    let mut prev_hi: Option<BigRational> = None;
    for r in 5..=200u64 {
        let f = f_bound(r, 2).map_err(fail)?;
        let root = f.root.ok_or("missing root")?;
        if let Some(p) = &prev_hi {
            check(root.upper() <= p, format!("intervals overlap at r = {r}"))?;
        }
        prev_hi = Some(root.lower().clone());
    }
    let f = f_bound(10_000, 2).map_err(fail)?;
    let root = f.root.ok_or("missing root")?;
    let five = BigRational::from_integer(5.into());
    let tol = BigRational::new(1.into(), 100.into());
    check(root.lower() > &five && root.upper() - &five < tol, "root at r = 10^4 not within 0.01 above 5")?;
    let r10 = f_bound(10, 2).map_err(fail)?;
    Ok(format!(
        "decreasing on r = 5..200; r = 10^4 root in ({:.6}, {:.6}); r = 10 root in ({:.6}, {:.6})",
        to_f64(root.lower()),
        to_f64(root.upper()),
        to_f64(r10.root.as_ref().unwrap().lower()),
        to_f64(r10.root.as_ref().unwrap().upper())
    ))
}

fn to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

fn c11_hessian() -> Outcome {
    let hessian = generate(&Family::Hessian).map_err(fail)?;
    let comps = enumerate_components(&hessian).map_err(fail)?;
    let local: Vec<_> = comps.iter().filter(|c| c.is_local()).collect();
    check(local.len() == 9 && local.iter().all(|c| c.dim() == 3), "expected 9 local components of dim 3")?;
    let essential = comps.iter().find(|c| {
        c.affine_blocks.len() == 4
            && c.dim() == 3
            && c.affine_blocks.iter().all(|b| b.len() == 3)
            && c.affine_blocks.iter().all(|b| {
                b.iter().all(|&i| {
                    b.iter().all(|&j| {
                        i == j || {
                            let f = hessian.flat_of_pair(i, j);
                            !c.flats.contains(f)
                        }
                    })
                })
            })
    });
    check(essential.is_some(), "no essential component with 4 full-graph blocks of 3 lines")?;
    let dual = generate(&Family::DualHessian).map_err(fail)?;
    let full = build_q(&resonance_core::qforms::FlatCollection::covering(dual.primes2().to_vec()).map_err(fail)?);
    let class = classify_collection(&full).map_err(fail)?;
    check(class.blocks.iter().all(|b| b.kind == Kind::Finite), "dual hessian: full collection not all-finite")?;
    check(
        component_from_collection(&dual, dual.primes2().to_vec()).map_err(fail)?.is_none(),
        "full collection is a component",
    )?;
    let classes = parallel_classes(dual.primes2());
    check(classes.len() == 4, format!("{} parallel classes", classes.len()))?;
    for cl in &classes {
        let rest: Vec<Flat> = dual.primes2().iter().filter(|f| !cl.contains(f)).cloned().collect();
        let comp = component_from_collection(&dual, rest).map_err(fail)?;
        check(comp.is_some(), "a 9-flat collection is not a component")?;
    }
    Ok(format!(
        "hessian: {} components (9 local dim 3, essential 4 x K3); dual: all finite, 4 nine-flat components",
        comps.len()
    ))
}

fn c12_disjointness() -> Outcome {
    let mut pairs = 0;
    for arr in corpus() {
        let comps = enumerate_components(&arr).map_err(fail)?;
        for a in 0..comps.len() {
            for b in a + 1..comps.len() {
                check(
                    comps[a].basis.meets_trivially(&comps[b].basis),
                    format!("{:?}: components {a}, {b} meet", arr.name()),
                )?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} component pairs over the corpus meet only in 0"))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("braid components", 1, c1_braid_components),
        ("direct vs Q-route cocycles", 30, c2_oracle_equivalence),
        ("star-4 affine labelings", 5, c3_d4_labelings),
        ("unrealizable example S", 1, c4_example_s),
        ("D4(1) Cartan realizations", 10, c5_d4_realizations),
        ("A2(1) block realizations", 30, c6_a2_blocks),
        ("trichotomy and V(Q)* = V(J)*", 60, c7_trichotomy),
        ("blow-up intersection form", 1, c8_blowup),
        ("Euler budget for k", 1, c9_euler),
        ("F(r, k) roots", 5, c10_f_bound),
        ("hessian and dual hessian", 60, c11_hessian),
        ("components meet only at 0", 10, c12_disjointness),
    ];
    let mut failed = 0;
    for (i, (name, bound, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(bound);
        let (status, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over the time bound")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} criterion {:>2} {name}: {detail} [{:.2} s, bound {bound} s]", i + 1, elapsed.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 12 criteria passed");
}
