//! Finite / affine / indefinite classification of symmetric blocks with
//! nonpositive off-diagonal entries, by exact symmetric elimination.

use crate::error::{Error, Result};
use crate::linalg::{clear_denominators, primitive, solve, IntMatrix};
use crate::par;
use crate::qforms::BlockMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Finite,
    Affine,
    Indefinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Positive pivots of a complete `LDLᵗ` elimination.
    Finite { pivots: Vec<BigRational> },
    /// Primitive positive kernel vector.
    Affine { kernel: Vec<BigInt> },
    /// Integer vector with `vᵗQv = value < 0`.
    Indefinite { witness: Vec<BigInt>, value: BigInt },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockClass {
    pub kind: Kind,
    pub certificate: Certificate,
}

/// Signature of a real symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// Result of the elimination: inertia plus the data needed for certificates.
struct Elimination {
    inertia: Inertia,
    /// Positive 1×1 pivots taken before the first nonpositive event.
    leading: Vec<(usize, BigRational)>,
    /// First direction with negative value, expressed on the uneliminated
    /// coordinates at the moment it was found.
    negative: Option<Vec<(usize, BigRational)>>,
    /// Indices left when the reduced matrix became zero, if that happened
    /// before any negative direction.
    null_tail: Option<Vec<usize>>,
}

fn to_rational(q: &IntMatrix) -> Vec<Vec<BigRational>> {
    (0..q.rows()).map(|i| q.row(i).iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect()
}

/// Schur-complement elimination. Positive diagonal pivots are taken first;
/// then a negative diagonal pivot; when only zero diagonals remain a nonzero
/// off-diagonal pair is eliminated as a hyperbolic 2×2 block contributing one
/// positive and one negative square.
fn eliminate(q: &IntMatrix) -> Elimination {
    let mut m = to_rational(q);
    let mut alive: Vec<usize> = (0..q.rows()).collect();
    let mut out = Elimination { inertia: Inertia::default(), leading: Vec::new(), negative: None, null_tail: None };
    let mut clean = true;
    while !alive.is_empty() {
        let pos = alive.iter().copied().find(|&i| m[i][i].is_positive());
        let neg = || alive.iter().copied().find(|&i| m[i][i].is_negative());
        if let Some(p) = pos.or_else(neg) {
            let d = m[p][p].clone();
            if d.is_positive() {
                out.inertia.positive += 1;
                if clean {
                    out.leading.push((p, d.clone()));
                }
            } else {
                out.inertia.negative += 1;
                if clean {
                    out.negative = Some(vec![(p, BigRational::one())]);
                    clean = false;
                }
            }
            alive.retain(|&i| i != p);
            for &i in &alive {
                if m[i][p].is_zero() {
                    continue;
                }
                let f = &m[i][p] / &d;
                for &j in &alive {
                    let delta = &f * &m[p][j];
                    m[i][j] -= delta;
                }
            }
            continue;
        }
        let pair = alive
            .iter()
            .enumerate()
            .find_map(|(a, &i)| alive[a + 1..].iter().copied().find(|&j| !m[i][j].is_zero()).map(|j| (i, j)));
        let Some((k, l)) = pair else {
            out.inertia.zero += alive.len();
            if clean {
                out.null_tail = Some(alive.clone());
            }
            break;
        };
        out.inertia.positive += 1;
        out.inertia.negative += 1;
        if clean {
            // (e_k - sign(b) e_l)ᵗ M (e_k - sign(b) e_l) = -2|b|
            let s = if m[k][l].is_positive() { -BigRational::one() } else { BigRational::one() };
            out.negative = Some(vec![(k, BigRational::one()), (l, s)]);
            clean = false;
        }
        // Eliminate the 2×2 block [[0, b], [b, 0]]; its inverse is [[0, 1/b], [1/b, 0]].
        let b = m[k][l].clone();
        alive.retain(|&i| i != k && i != l);
        let rows: Vec<(usize, BigRational, BigRational)> =
            alive.iter().map(|&i| (i, m[i][k].clone(), m[i][l].clone())).collect();
        for (i, ik, il) in &rows {
            for (j, jk, jl) in &rows {
                let delta = (ik * jl + il * jk) / &b;
                m[*i][*j] -= delta;
            }
        }
    }
    out
}

pub fn inertia(q: &IntMatrix) -> Inertia {
    eliminate(q).inertia
}

/// Extends `w`, supported on uneliminated coordinates, by
/// `x_P = -Q_PP⁻¹ Q_PR w` so that `vᵗQv` equals the reduced form on `w`.
fn extend(q: &IntMatrix, leading: &[(usize, BigRational)], w: &[(usize, BigRational)]) -> Vec<BigInt> {
    let n = q.rows();
    let qr = to_rational(q);
    let p: Vec<usize> = leading.iter().map(|(i, _)| *i).collect();
    let mut v = vec![BigRational::zero(); n];
    for (i, c) in w {
        v[*i] = c.clone();
    }
    if !p.is_empty() {
        let a: Vec<Vec<BigRational>> = p.iter().map(|&i| p.iter().map(|&j| qr[i][j].clone()).collect()).collect();
        let rhs: Vec<BigRational> =
            p.iter().map(|&i| -w.iter().map(|(j, c)| &qr[i][*j] * c).sum::<BigRational>()).collect();
        let x = solve(&a, &rhs).expect("leading pivots are positive definite");
        for (k, &i) in p.iter().enumerate() {
            v[i] = x[k].clone();
        }
    }
    clear_denominators(&v)
}

fn check_shape(q: &IntMatrix) -> Result<()> {
    if let Some((i, j)) = q.asymmetry() {
        return Err(Error::NotSymmetric(i, j));
    }
    for i in 0..q.rows() {
        for j in 0..q.cols() {
            if i != j && q[(i, j)] != 0 && q[(i, j)] != -1 {
                return Err(Error::BadOffDiagonal(i, j, q[(i, j)]));
            }
        }
    }
    Ok(())
}

/// Classifies one indecomposable block.
pub fn classify_block(q: &IntMatrix) -> Result<BlockClass> {
    check_shape(q)?;
    let e = eliminate(q);
    if let Some(w) = &e.negative {
        let witness = extend(q, &e.leading, w);
        let value = q.quadratic_form(&witness);
        debug_assert!(value.is_negative());
        return Ok(BlockClass { kind: Kind::Indefinite, certificate: Certificate::Indefinite { witness, value } });
    }
    match e.null_tail.as_deref() {
        None | Some([]) => Ok(BlockClass {
            kind: Kind::Finite,
            certificate: Certificate::Finite { pivots: e.leading.into_iter().map(|(_, d)| d).collect() },
        }),
        Some([z]) => {
            let u = primitive(extend(q, &e.leading, &[(*z, BigRational::one())]));
            let u = if u.iter().all(|x| x.is_negative()) { u.into_iter().map(|x| -x).collect() } else { u };
            if !u.iter().all(|x| x.is_positive()) {
                return Err(Error::InternalTrichotomyError(format!("kernel vector {u:?} is not positive")));
            }
            Ok(BlockClass { kind: Kind::Affine, certificate: Certificate::Affine { kernel: u } })
        }
        Some(tail) => Err(Error::InternalTrichotomyError(format!("nullity {} > 1", tail.len()))),
    }
}

/// True iff `q` is positive definite.
pub fn is_positive_definite(q: &IntMatrix) -> bool {
    let e = eliminate(q);
    e.inertia.positive == q.rows()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every block finite or affine; indices of the affine blocks.
    AffineType { affine: Vec<usize> },
    /// Exactly one indefinite block, all others finite.
    IndefiniteType { indefinite: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollectionClass {
    pub verdict: Verdict,
    /// One entry per block of the partition, in partition order.
    pub blocks: Vec<BlockClass>,
}

impl CollectionClass {
    pub fn is_affine(&self) -> bool {
        matches!(self.verdict, Verdict::AffineType { .. })
    }

    /// Indices of the affine blocks (empty for indefinite collections).
    pub fn affine_blocks(&self) -> &[usize] {
        match &self.verdict {
            Verdict::AffineType { affine } => affine,
            Verdict::IndefiniteType { .. } => &[],
        }
    }
}

pub fn classify_collection(b: &BlockMatrix) -> Result<CollectionClass> {
    classify_collection_with(b, par::Mode::default())
}

pub fn classify_collection_with(b: &BlockMatrix, mode: par::Mode) -> Result<CollectionClass> {
    let blocks: Vec<BlockClass> =
        par::map_result(mode, (0..b.partition().len()).collect(), |k| classify_block(&b.block(k)))?;
    let indefinite: Vec<usize> =
        blocks.iter().enumerate().filter(|(_, c)| c.kind == Kind::Indefinite).map(|(k, _)| k).collect();
    let affine: Vec<usize> =
        blocks.iter().enumerate().filter(|(_, c)| c.kind == Kind::Affine).map(|(k, _)| k).collect();
    let verdict = match indefinite.as_slice() {
        [] => Verdict::AffineType { affine },
        [k] if affine.is_empty() => Verdict::IndefiniteType { indefinite: *k },
        _ => {
            return Err(Error::TrichotomyViolation(format!(
                "{} indefinite and {} affine blocks",
                indefinite.len(),
                affine.len()
            )))
        }
    };
    Ok(CollectionClass { verdict, blocks })
}
