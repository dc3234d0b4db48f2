//! Degree-one cocycles `Z(a)` of the Orlik-Solomon algebra and the
//! irreducible components of the resonance variety `R₁`.
//!
//! Two independent routes compute `Z(a)`: [`cocycle_space_direct`] solves the
//! local linear system flat by flat, [`cocycle_space_via_q`] goes through the
//! null space of `Q(X(a))`. They must agree on every weight.

use crate::error::{Error, Result};
use crate::incidence::{Arrangement, Flat};
use crate::linalg::{clear_denominators, Subspace};
use crate::par::{self, Mode};
use crate::qforms::{build_q, nullspace_star, FlatCollection};
use crate::vinberg::{classify_collection_with, Kind};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A point of `A₁`, one rational coordinate per line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight(pub Vec<BigRational>);

impl Weight {
    pub fn from_integers(v: &[i64]) -> Self {
        Weight(v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
    }

    pub fn from_big(v: &[BigInt]) -> Self {
        Weight(v.iter().map(|x| BigRational::from_integer(x.clone())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    fn sum_over(&self, lines: &[usize]) -> BigRational {
        lines.iter().map(|&i| &self.0[i]).sum()
    }

    fn vanishes_on(&self, lines: &[usize]) -> bool {
        lines.iter().all(|&i| self.0[i].is_zero())
    }
}

fn check_weight(arr: &Arrangement, w: &Weight, nonzero: bool) -> Result<()> {
    if w.0.len() != arr.n() {
        return Err(Error::WeightLength { expected: arr.n(), got: w.0.len() });
    }
    let s: BigRational = w.0.iter().sum();
    if !s.is_zero() {
        return Err(Error::NotSumZero(s.to_string()));
    }
    if nonzero && w.is_zero() {
        return Err(Error::ZeroWeight);
    }
    Ok(())
}

/// `X(a)` on `I(a)`: multiple points where `a` sums to zero without
/// vanishing identically. `None` when there are no such points.
pub fn support_flats(arr: &Arrangement, w: &Weight) -> Result<Option<FlatCollection>> {
    check_weight(arr, w, false)?;
    let flats: Vec<Flat> = arr
        .primes2()
        .iter()
        .filter(|f| w.sum_over(f.lines()).is_zero() && !w.vanishes_on(f.lines()))
        .cloned()
        .collect();
    if flats.is_empty() {
        return Ok(None);
    }
    FlatCollection::covering(flats).map(Some)
}

/// `Z(a)` from the flat-by-flat linear system.
pub fn cocycle_space_direct(arr: &Arrangement, w: &Weight) -> Result<Subspace> {
    check_weight(arr, w, true)?;
    let n = arr.n();
    let a = clear_denominators(&w.0);
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for f in arr.flats2() {
        let lines = f.lines();
        let sum: BigInt = lines.iter().map(|&i| &a[i]).sum();
        let active = f.multiplicity() >= 3 && sum.is_zero() && lines.iter().any(|&i| !a[i].is_zero());
        if active {
            let mut row = vec![BigInt::zero(); n];
            for &i in lines {
                row[i] = BigInt::from(1);
            }
            rows.push(row);
        } else {
            for (k, &i) in lines.iter().enumerate() {
                for &j in &lines[k + 1..] {
                    if a[i].is_zero() && a[j].is_zero() {
                        continue;
                    }
                    let mut row = vec![BigInt::zero(); n];
                    row[j] = a[i].clone();
                    row[i] = -a[j].clone();
                    rows.push(row);
                }
            }
        }
    }
    Ok(crate::linalg::kernel_of_rows(rows, n))
}

/// How `Z(a)` was decided on the `Q` route.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SupportVerdict {
    /// `X(a)` is empty.
    Empty,
    /// `a` is nonzero on a line outside `I(a)`.
    Escapes,
    Indefinite,
    Affine {
        affine_blocks: usize,
    },
}

/// `Z(a)` through `Q(X(a))`, with the degenerate branches collapsing to the
/// line spanned by `a`.
pub fn cocycle_space_via_q(arr: &Arrangement, w: &Weight) -> Result<(Subspace, SupportVerdict)> {
    cocycle_space_via_q_with(arr, w, Mode::Sequential)
}

fn cocycle_space_via_q_with(arr: &Arrangement, w: &Weight, mode: Mode) -> Result<(Subspace, SupportVerdict)> {
    check_weight(arr, w, true)?;
    let n = arr.n();
    let line_of_a = || Subspace::span(n, vec![clear_denominators(&w.0)]);
    let Some(c) = support_flats(arr, w)? else {
        return Ok((line_of_a(), SupportVerdict::Empty));
    };
    if (0..n).any(|j| !c.ground().contains(&j) && !w.0[j].is_zero()) {
        return Ok((line_of_a(), SupportVerdict::Escapes));
    }
    let b = build_q(&c);
    let class = classify_collection_with(&b, mode)?;
    if !class.is_affine() {
        return Ok((line_of_a(), SupportVerdict::Indefinite));
    }
    let v = nullspace_star(b.q()).zero_extend(c.ground(), n);
    Ok((v, SupportVerdict::Affine { affine_blocks: class.affine_blocks().len() }))
}

/// `dim H¹(A, a) = dim Z(a) - 1`.
pub fn h1_dimension(arr: &Arrangement, w: &Weight) -> Result<usize> {
    let (z, _) = cocycle_space_via_q(arr, w)?;
    Ok(z.dim() - 1)
}

/// An irreducible component of `R₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResonanceComponent {
    /// The collection `X`, sorted.
    pub flats: Vec<Flat>,
    /// `I(X)`.
    pub support: Vec<usize>,
    /// Every block of `Π(X)`, as line indices.
    pub blocks: Vec<Vec<usize>>,
    /// The affine blocks `Π₁(X)`, as line indices.
    pub affine_blocks: Vec<Vec<usize>>,
    /// `V(X)*` inside `A₁`.
    pub basis: Subspace,
}

impl ResonanceComponent {
    /// Dimension of the component, `|Π₁| - 1`.
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// `dim H¹(A, a)` for a generic `a` on the component.
    pub fn h1_dim(&self) -> usize {
        self.dim() - 1
    }

    /// A component whose collection is a single flat.
    pub fn is_local(&self) -> bool {
        self.flats.len() == 1
    }
}

/// Checks conditions (i)-(iii) of the component characterization for a
/// collection of multiple points and builds the component when they hold.
pub fn component_from_collection(arr: &Arrangement, flats: Vec<Flat>) -> Result<Option<ResonanceComponent>> {
    component_from_collection_with(arr, flats, Mode::Sequential)
}

fn component_from_collection_with(
    arr: &Arrangement,
    mut flats: Vec<Flat>,
    mode: Mode,
) -> Result<Option<ResonanceComponent>> {
    flats.sort();
    let c = FlatCollection::covering(flats)?;
    let b = build_q(&c);
    let class = classify_collection_with(&b, mode)?;
    let affine = class.affine_blocks();
    if !class.is_affine() || affine.len() < 3 {
        return Ok(None);
    }
    let non_affine: Vec<usize> = (0..b.partition().len())
        .filter(|k| class.blocks[*k].kind != Kind::Affine)
        .flat_map(|k| b.block_labels(k))
        .collect();
    if c.flats().iter().any(|f| f.lines().iter().all(|i| non_affine.contains(i))) {
        return Ok(None);
    }
    let basis = nullspace_star(b.q()).zero_extend(c.ground(), arr.n());
    let blocks = (0..b.partition().len()).map(|k| b.block_labels(k)).collect();
    let affine_blocks = affine.iter().map(|&k| b.block_labels(k)).collect();
    Ok(Some(ResonanceComponent {
        flats: c.flats().to_vec(),
        support: c.ground().to_vec(),
        blocks,
        affine_blocks,
        basis,
    }))
}

#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    /// Refuse arrangements with more multiple points than this.
    pub max_flats: usize,
    pub mode: Mode,
    pub seed: u64,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { max_flats: 24, mode: Mode::default(), seed: 0 }
    }
}

/// All irreducible components of `R₁`, sorted by their collections.
pub fn enumerate_components(arr: &Arrangement) -> Result<Vec<ResonanceComponent>> {
    enumerate_components_with(arr, &EnumerateOptions::default())
}

pub fn enumerate_components_with(arr: &Arrangement, opts: &EnumerateOptions) -> Result<Vec<ResonanceComponent>> {
    let primes = arr.primes2();
    let m = primes.len();
    if m > opts.max_flats {
        return Err(Error::SearchBudgetExceeded(format!(
            "{m} multiple points exceed the exhaustive limit of {}",
            opts.max_flats
        )));
    }
    if m == 0 {
        return Ok(Vec::new());
    }
    // Subsets are split into chunks by their top bits; each chunk is scanned
    // sequentially.
    let split = m.min(8);
    let low_bits = m - split;
    let chunks: Vec<u64> = (0..1u64 << split).collect();
    let found: Vec<Vec<ResonanceComponent>> = par::map_result(opts.mode, chunks, |hi| {
        let mut out = Vec::new();
        for lo in 0..1u64 << low_bits {
            let mask = (hi << low_bits) | lo;
            if mask == 0 {
                continue;
            }
            let flats: Vec<Flat> = (0..m).filter(|k| mask >> k & 1 == 1).map(|k| primes[k].clone()).collect();
            if let Some(c) = component_from_collection_with(arr, flats, Mode::Sequential)? {
                out.push(c);
            }
        }
        Ok(out)
    })?;
    let mut comps: Vec<ResonanceComponent> = found.into_iter().flatten().collect();
    comps.sort_by(|a, b| a.flats.cmp(&b.flats));
    let checked = par::map_result(opts.mode, comps.iter().enumerate().collect(), |(k, c)| {
        verify_component(arr, c, opts.seed.wrapping_add(k as u64))
    })?;
    debug_assert_eq!(checked.len(), comps.len());
    Ok(comps)
}

/// Random weight on the component, nonzero on every flat of `X`.
pub fn generic_weight(c: &ResonanceComponent, rng: &mut impl Rng) -> Result<Weight> {
    let mut bound: i64 = 8;
    for _ in 0..50 {
        let coeffs: Vec<i64> = (0..c.dim()).map(|_| rng.gen_range(-bound..=bound)).collect();
        let mut a = vec![BigInt::zero(); c.basis.ambient()];
        for (v, &k) in c.basis.basis().iter().zip(&coeffs) {
            for (x, y) in a.iter_mut().zip(v) {
                *x += y * k;
            }
        }
        if c.flats.iter().all(|f| f.lines().iter().any(|&i| !a[i].is_zero())) {
            return Ok(Weight::from_big(&a));
        }
        bound = bound.saturating_mul(2);
    }
    Err(Error::VerificationFailed("no generic weight found after 50 attempts".into()))
}

/// Picks a generic weight on the component and checks that it recovers the
/// collection and the cocycle space.
pub fn verify_component(arr: &Arrangement, c: &ResonanceComponent, seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = generic_weight(c, &mut rng)?;
    let x = support_flats(arr, &w)?.map(|x| x.flats().to_vec()).unwrap_or_default();
    if x != c.flats {
        return Err(Error::VerificationFailed(format!(
            "generic weight recovers {} flats instead of {}",
            x.len(),
            c.flats.len()
        )));
    }
    if cocycle_space_direct(arr, &w)? != c.basis {
        return Err(Error::VerificationFailed("cocycle space differs from V(X)*".into()));
    }
    Ok(())
}

/// The component containing `a`, if `H¹(A, a) ≠ 0`.
pub fn component_of_weight(arr: &Arrangement, w: &Weight) -> Result<Option<ResonanceComponent>> {
    let (z, verdict) = cocycle_space_via_q(arr, w)?;
    if z.dim() < 2 {
        return Ok(None);
    }
    debug_assert!(matches!(verdict, SupportVerdict::Affine { .. }));
    let x = support_flats(arr, w)?.expect("nonempty support for a resonant weight");
    let comp = component_from_collection(arr, x.flats().to_vec())?
        .ok_or_else(|| Error::VerificationFailed("support of a resonant weight is not a component".into()))?;
    debug_assert_eq!(comp.basis, z);
    Ok(Some(comp))
}

/// Random sum-zero integer weight with entries in `[-bound, bound]`,
/// optionally supported on a subset of lines.
pub fn random_sum_zero_weight(n: usize, bound: i64, support: Option<&[usize]>, rng: &mut impl Rng) -> Weight {
    let idx: Vec<usize> = support.map_or_else(|| (0..n).collect(), <[usize]>::to_vec);
    loop {
        let mut v = vec![BigRational::zero(); n];
        for &i in &idx {
            let num = rng.gen_range(-bound..=bound);
            let den = rng.gen_range(1..=3);
            v[i] = BigRational::new(num.into(), BigInt::from(den));
        }
        let s: BigRational = v.iter().sum();
        let last = *idx.last().expect("nonempty support");
        v[last] -= s;
        let w = Weight(v);
        if !w.is_zero() {
            return w;
        }
    }
}
