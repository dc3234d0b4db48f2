//! Intersection form on the blow-up and Euler characteristic budgets for
//! pencils whose special fibers carry the blocks of `Q`.
//!
//! All quantities are exact. Roots of the quadratic budgets are reported as
//! rational isolating intervals.

use crate::error::{Error, Result};
use crate::incidence::{Arrangement, Flat};
use crate::linalg::IntMatrix;
use crate::qforms::{build_q, FlatCollection};
use crate::resonance::ResonanceComponent;
use crate::vinberg::{classify_block, Kind};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

/// Intersection numbers of proper transforms after blowing up the points of
/// `X`, next to `-Q(X)` computed over all lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupForm {
    pub matrix: IntMatrix,
    pub minus_q: IntMatrix,
}

impl BlowupForm {
    pub fn agrees(&self) -> bool {
        self.matrix == self.minus_q
    }
}

pub fn blowup_intersection_matrix(arr: &Arrangement, flats: &[Flat]) -> Result<BlowupForm> {
    for f in flats {
        if !arr.primes2().contains(f) {
            return Err(Error::FlatNotInArrangement(f.one_based()));
        }
    }
    let n = arr.n();
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = 1 - flats.iter().filter(|f| f.contains(i)).count() as i64;
        for j in 0..n {
            if i != j {
                m[(i, j)] = if flats.contains(arr.flat_of_pair(i, j)) { 0 } else { 1 };
            }
        }
    }
    let minus_q = build_q(&FlatCollection::new((0..n).collect(), flats.to_vec())?).q().neg();
    Ok(BlowupForm { matrix: m, minus_q })
}

/// Euler number of a fiber made of `n` lines through the blown-up points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FiberEuler {
    /// `2n - n(n-1)/2`: `n` lines meeting pairwise in simple points.
    #[default]
    Corrected,
    /// `2n - n(n+1)/2`.
    Printed,
}

fn fiber_euler(n: i128, f: FiberEuler) -> i128 {
    match f {
        FiberEuler::Corrected => 2 * n - n * (n - 1) / 2,
        FiberEuler::Printed => 2 * n - n * (n + 1) / 2,
    }
}

/// `E₁ = 3 + n²`.
pub fn e1(n: u64) -> i128 {
    3 + (n as i128) * (n as i128)
}

/// `E₂ = (2 - k)(3n - n²) + k · e(fiber)`.
pub fn e2(n: u64, k: u64, f: FiberEuler) -> i128 {
    let (n, k) = (n as i128, k as i128);
    (2 - k) * (3 * n - n * n) + k * fiber_euler(n, f)
}

/// Largest `k` with `E₂ <= E₁`, or `None` when every `k` qualifies.
pub fn max_feasible_k(n: u64, f: FiberEuler) -> Result<Option<u64>> {
    if n < 2 {
        return Err(Error::BadParam(format!("need n >= 2, got {n}")));
    }
    // E₂ - E₁ = c0 + k * c1 with c0 = E₂(k=0) - E₁.
    let c0 = e2(n, 0, f) - e1(n);
    let c1 = e2(n, 1, f) - e2(n, 0, f);
    if c1 <= 0 {
        return Ok(None);
    }
    Ok(Some((-c0).div_euclid(c1) as u64))
}

/// `floor(6(n-1)/n)`.
pub fn euler_feasible_k(n: u64) -> Result<u64> {
    Ok(max_feasible_k(n, FiberEuler::Corrected)?.expect("bounded for the corrected formula"))
}

/// `E₁ = E₂` at `k = n + 1`.
pub fn equality_case(n: u64) -> Result<bool> {
    if n < 2 {
        return Err(Error::BadParam(format!("need n >= 2, got {n}")));
    }
    Ok(e1(n) == e2(n, n + 1, FiberEuler::Corrected))
}

/// Location of a real root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Root {
    Exact(BigRational),
    /// Open interval of width below `10⁻⁶` containing an irrational root.
    Interval(BigRational, BigRational),
}

impl Root {
    pub fn lower(&self) -> &BigRational {
        match self {
            Root::Exact(x) | Root::Interval(x, _) => x,
        }
    }

    pub fn upper(&self) -> &BigRational {
        match self {
            Root::Exact(x) | Root::Interval(_, x) => x,
        }
    }
}

/// Integer values of `d >= 1` with `E₂ <= E₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasible {
    /// `{1, …, max}` (empty when `max = 0`).
    UpTo(u64),
    /// Every `d >= 1` except the listed ones.
    AllExcept(Vec<u64>),
}

impl Feasible {
    pub fn contains(&self, d: u64) -> bool {
        d >= 1
            && match self {
                Feasible::UpTo(m) => d <= *m,
                Feasible::AllExcept(ex) => !ex.contains(&d),
            }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FBound {
    pub r: u64,
    pub k: u64,
    /// `E₂ - E₁ = a d² + b d + c`, as `[a, b, c]`.
    pub coeffs: [BigRational; 3],
    /// The positive root past which `E₂ > E₁`, when the leading coefficient is positive.
    pub root: Option<Root>,
    pub feasible: Feasible,
    /// `(r + 1) · ⌈root⌉`.
    pub line_bound: Option<u64>,
}

/// Doubled integer coefficients `(A, B, C)` of `2(E₂ - E₁)`.
fn doubled(r: u64, k: u64) -> (BigInt, BigInt, BigInt) {
    let (r, k) = (BigInt::from(r), BigInt::from(k));
    let a = &r - 4;
    let b = BigInt::from(12) - &r - BigInt::from(2) * &k * &r;
    (a, b, BigInt::from(-6))
}

fn eval(a: &BigInt, b: &BigInt, c: &BigInt, x: &BigRational) -> BigRational {
    let (a, b, c) = (BigRational::from(a.clone()), BigRational::from(b.clone()), BigRational::from(c.clone()));
    (a * x + b) * x + c
}

fn rational_roots(a: &BigInt, b: &BigInt, disc: &BigInt) -> Option<(BigRational, BigRational)> {
    let s = disc.sqrt();
    if &s * &s != *disc {
        return None;
    }
    let two_a = BigRational::from(a * 2);
    let r1 = BigRational::from(-b - &s) / &two_a;
    let r2 = BigRational::from(-b + &s) / &two_a;
    Some(if r1 <= r2 { (r1, r2) } else { (r2, r1) })
}

pub fn f_bound(r: u64, k: u64) -> Result<FBound> {
    if r < 1 || k < 1 {
        return Err(Error::BadParam(format!("need r >= 1 and k >= 1, got r = {r}, k = {k}")));
    }
    let (a, b, c) = doubled(r, k);
    let half = |x: &BigInt| BigRational::new(x.clone(), BigInt::from(2));
    let coeffs = [half(&a), half(&b), half(&c)];
    let disc = &b * &b - BigInt::from(4) * &a * &c;
    let (root, feasible) = match a.sign() {
        num_bigint::Sign::Plus => {
            // f(0) < 0 and a > 0: exactly one positive root.
            let f = |d: &BigInt| eval(&a, &b, &c, &BigRational::from(d.clone()));
            let mut hi = BigInt::one();
            while !f(&hi).is_positive() {
                hi *= 2;
            }
            let mut lo = BigInt::zero();
            while &hi - &lo > BigInt::one() {
                let mid: BigInt = (&lo + &hi) / 2;
                if f(&mid).is_positive() {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            // lo = floor(root) since f(lo) <= 0 < f(lo + 1)
            let root = match rational_roots(&a, &b, &disc) {
                Some((_, r2)) => Root::Exact(r2),
                None => {
                    let (mut l, mut h) = (BigRational::from(lo.clone()), BigRational::from(hi.clone()));
                    let width = BigRational::new(BigInt::one(), BigInt::from(1_000_000));
                    while &h - &l >= width {
                        let mid = (&l + &h) / BigRational::from(BigInt::from(2));
                        if eval(&a, &b, &c, &mid).is_positive() {
                            h = mid;
                        } else {
                            l = mid;
                        }
                    }
                    Root::Interval(l, h)
                }
            };
            (Some(root), Feasible::UpTo(lo.to_u64().expect("root fits in u64")))
        }
        num_bigint::Sign::NoSign => {
            // b d + c with c < 0
            if b.is_positive() {
                let x = BigRational::new(-c.clone(), b.clone());
                (Some(Root::Exact(x.clone())), Feasible::UpTo(x.floor().to_integer().to_u64().unwrap_or(0)))
            } else {
                (None, Feasible::AllExcept(Vec::new()))
            }
        }
        num_bigint::Sign::Minus => {
            // Concave with f(0) < 0: positive only strictly between two positive roots.
            let mut excluded = Vec::new();
            if !disc.is_negative() && b.is_positive() {
                let s = disc.sqrt() + 1;
                let upper = (-&b - s) / (&a * 2) + 1;
                let mut d = BigInt::one();
                while d <= upper {
                    if eval(&a, &b, &c, &BigRational::from(d.clone())).is_positive() {
                        excluded.push(d.to_u64().expect("small"));
                    }
                    d += 1;
                }
            }
            (None, Feasible::AllExcept(excluded))
        }
    };
    let line_bound = root.as_ref().map(|rt| {
        let ceil = match rt {
            Root::Exact(x) => x.ceil().to_integer(),
            Root::Interval(l, _) => l.floor().to_integer() + 1,
        };
        (BigInt::from(r + 1) * ceil).to_u64().expect("line bound fits in u64")
    });
    Ok(FBound { r, k, coeffs, root, feasible, line_bound })
}

/// Sign of `u + v√d` for `d >= 0`.
fn sign_with_sqrt(u: &BigRational, v: &BigRational, d: &BigInt) -> Ordering {
    let su = u.cmp(&BigRational::zero());
    let sv = if d.is_zero() { Ordering::Equal } else { v.cmp(&BigRational::zero()) };
    if sv == Ordering::Equal || su == sv {
        return if su == Ordering::Equal { sv } else { su };
    }
    if su == Ordering::Equal {
        return sv;
    }
    match (u * u).cmp(&(v * v * BigRational::from(d.clone()))) {
        Ordering::Greater => su,
        Ordering::Less => sv,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Exact comparison of the positive roots of two budgets with `r >= 5`.
pub fn compare_roots(r1: u64, k1: u64, r2: u64, k2: u64) -> Result<Ordering> {
    if r1 < 5 || r2 < 5 || k1 < 1 || k2 < 1 {
        return Err(Error::BadParam("root comparison needs r >= 5 and k >= 1".into()));
    }
    let (a1, b1, c1) = doubled(r1, k1);
    let (a2, b2, c2) = doubled(r2, k2);
    // ρ₁ < ρ₂ iff f₂(ρ₁) < 0. Reduce f₂(ρ₁) with ρ₁² = -(b₁ρ₁ + c₁)/a₁.
    let q = |x: &BigInt| BigRational::from(x.clone());
    let alpha = q(&b2) - q(&a2) * q(&b1) / q(&a1);
    let beta = q(&c2) - q(&a2) * q(&c1) / q(&a1);
    // ρ₁ = (-b₁ + √D₁) / (2a₁)
    let d1 = &b1 * &b1 - BigInt::from(4) * &a1 * &c1;
    let two_a1 = q(&a1) * BigRational::from(BigInt::from(2));
    let u = &alpha * (-q(&b1)) / &two_a1 + beta;
    let v = alpha / two_a1;
    Ok(sign_with_sqrt(&u, &v, &d1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    /// `|Π|`.
    pub blocks: usize,
    /// `|Π₁|`.
    pub affine_blocks: usize,
    /// Lines per block of `Π`.
    pub block_sizes: Vec<usize>,
    /// Common size of the affine blocks, if uniform.
    pub uniform: Option<usize>,
    /// `max_feasible_k` for the uniform size.
    pub k_budget: Option<u64>,
    pub consistent: bool,
    /// The budget is attained by `|Π₁|`.
    pub tight: bool,
    /// Affine blocks whose part of `Q` is positive semidefinite.
    pub affine_psd: bool,
}

/// Compares the block structure of a component with the Euler budget.
pub fn block_fiber_consistency(arr: &Arrangement, comp: &ResonanceComponent) -> Result<FiberReport> {
    let sizes: Vec<usize> = comp.blocks.iter().map(Vec::len).collect();
    let affine: Vec<usize> = comp.affine_blocks.iter().map(Vec::len).collect();
    let uniform = affine.first().copied().filter(|&s| affine.iter().all(|&t| t == s));
    let k_budget = match uniform {
        Some(s) if s >= 2 => Some(euler_feasible_k(s as u64)?),
        _ => None,
    };
    let consistent = k_budget.is_none_or(|k| comp.affine_blocks.len() as u64 <= k);
    let tight = k_budget == Some(comp.affine_blocks.len() as u64);
    let form = blowup_intersection_matrix(arr, &comp.flats)?;
    let mut affine_psd = true;
    for block in &comp.affine_blocks {
        let q = form.matrix.principal(block).neg();
        affine_psd &= classify_block(&q)?.kind == Kind::Affine;
    }
    Ok(FiberReport {
        blocks: comp.blocks.len(),
        affine_blocks: comp.affine_blocks.len(),
        block_sizes: sizes,
        uniform,
        k_budget,
        consistent,
        tight,
        affine_psd,
    })
}
