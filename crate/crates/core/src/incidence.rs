//! Line arrangements in the projective plane and their rank-2 flats.
//!
//! Lines are indexed from 0 internally; every text format and every printed
//! report uses 1-based indices.

use crate::error::{Error, Result};
use crate::linalg::primitive;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// A line `ax + by + cz = 0`, or an abstract line of a matroid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Line {
    coeffs: Option<[BigInt; 3]>,
}

impl Line {
    pub fn abstract_line() -> Self {
        Line { coeffs: None }
    }

    /// Canonical integer form: denominators cleared, content 1, first nonzero
    /// entry positive. `None` for the zero triple.
    pub fn from_rational(c: &[BigRational; 3]) -> Option<Self> {
        if c.iter().all(|x| x.is_zero()) {
            return None;
        }
        let l = c.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let ints: Vec<BigInt> = c.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
        let p = primitive(ints);
        Some(Line { coeffs: Some([p[0].clone(), p[1].clone(), p[2].clone()]) })
    }

    pub fn coeffs(&self) -> Option<&[BigInt; 3]> {
        self.coeffs.as_ref()
    }
}

/// A rank-2 flat: the set of lines through one intersection point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flat {
    lines: Vec<usize>,
}

impl Flat {
    /// Sorts and deduplicates the given line indices.
    pub fn new(mut lines: Vec<usize>) -> Self {
        lines.sort_unstable();
        lines.dedup();
        Flat { lines }
    }

    pub fn lines(&self) -> &[usize] {
        &self.lines
    }

    pub fn multiplicity(&self) -> usize {
        self.lines.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.lines.binary_search(&i).is_ok()
    }

    /// Number of common lines.
    pub fn meet(&self, other: &Flat) -> usize {
        let (mut a, mut b, mut n) = (0, 0, 0);
        while a < self.lines.len() && b < other.lines.len() {
            match self.lines[a].cmp(&other.lines[b]) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    n += 1;
                    a += 1;
                    b += 1;
                }
            }
        }
        n
    }

    /// 1-based line indices, for display.
    pub fn one_based(&self) -> Vec<usize> {
        self.lines.iter().map(|i| i + 1).collect()
    }
}

/// A line arrangement together with its rank-2 flats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    lines: Vec<Line>,
    flats2: Vec<Flat>,
    primes2: Vec<Flat>,
    /// `pair_flat[i][j]`: index into `flats2` of the flat through lines i, j.
    pair_flat: Vec<Vec<usize>>,
    name: Option<String>,
}

impl Arrangement {
    fn assemble(lines: Vec<Line>, mut flats2: Vec<Flat>, name: Option<String>) -> Self {
        flats2.sort();
        let n = lines.len();
        let mut pair_flat = vec![vec![usize::MAX; n]; n];
        for (k, f) in flats2.iter().enumerate() {
            for (a, &i) in f.lines().iter().enumerate() {
                for &j in &f.lines()[a + 1..] {
                    pair_flat[i][j] = k;
                    pair_flat[j][i] = k;
                }
            }
        }
        let primes2 = flats2.iter().filter(|f| f.multiplicity() >= 3).cloned().collect();
        Arrangement { lines, flats2, primes2, pair_flat, name }
    }

    pub fn n(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    /// All rank-2 flats, including double points, sorted lexicographically.
    pub fn flats2(&self) -> &[Flat] {
        &self.flats2
    }

    /// Flats of multiplicity at least 3.
    pub fn primes2(&self) -> &[Flat] {
        &self.primes2
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn is_abstract(&self) -> bool {
        self.lines.iter().any(|l| l.coeffs().is_none())
    }

    /// The unique rank-2 flat containing lines `i != j`.
    pub fn flat_of_pair(&self, i: usize, j: usize) -> &Flat {
        &self.flats2[self.pair_flat[i][j]]
    }

    /// Canonical form used to compare arrangements that differ only in
    /// how they were built: line count and sorted flats.
    pub fn canonical(&self) -> (usize, Vec<Flat>) {
        (self.n(), self.flats2.clone())
    }
}

/// Builds an arrangement from rational line equations, computing every
/// intersection point exactly.
pub fn flats_from_rational_lines(coeffs: &[[BigRational; 3]]) -> Result<Arrangement> {
    if coeffs.len() < 2 {
        return Err(Error::TooFewLines(coeffs.len()));
    }
    let lines: Vec<Line> = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| Line::from_rational(c).ok_or(Error::ZeroLine { index: i + 1 }))
        .collect::<Result<_>>()?;
    let mut by_point: BTreeMap<Vec<BigInt>, Vec<usize>> = BTreeMap::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let a = lines[i].coeffs().unwrap();
            let b = lines[j].coeffs().unwrap();
            // The common point of two lines is the cross product of their
            // coefficient vectors; zero iff the lines are proportional.
            let p = vec![&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]];
            if p.iter().all(|x| x.is_zero()) {
                return Err(Error::DuplicateLine { first: i + 1, second: j + 1 });
            }
            let entry = by_point.entry(primitive(p)).or_default();
            entry.push(i);
            entry.push(j);
        }
    }
    let flats = by_point.into_values().map(Flat::new).collect();
    Ok(Arrangement::assemble(lines, flats, None))
}

/// Convenience wrapper for integer coefficient triples.
pub fn flats_from_integer_lines(coeffs: &[[i64; 3]]) -> Result<Arrangement> {
    let rats: Vec<[BigRational; 3]> =
        coeffs.iter().map(|c| c.map(|x| BigRational::from_integer(BigInt::from(x)))).collect();
    flats_from_rational_lines(&rats)
}

/// Builds an abstract arrangement from its multiple points. Every line pair
/// not covered by a given flat becomes a double point.
pub fn arrangement_from_incidence(n: usize, flats: &[Vec<usize>]) -> Result<Arrangement> {
    if n < 2 {
        return Err(Error::TooFewLines(n));
    }
    let mut given = Vec::with_capacity(flats.len());
    for f in flats {
        if let Some(&bad) = f.iter().find(|&&i| i >= n) {
            return Err(Error::BadIndex(format!("line {} out of range 1..={n}", bad + 1)));
        }
        let flat = Flat::new(f.clone());
        if flat.multiplicity() != f.len() {
            return Err(Error::BadIndex(format!("repeated line in flat {:?}", flat.one_based())));
        }
        if flat.multiplicity() < 3 {
            return Err(Error::BadIndex(format!("flat {:?} has fewer than 3 lines", flat.one_based())));
        }
        given.push(flat);
    }
    for a in 0..given.len() {
        for b in a + 1..given.len() {
            if given[a].meet(&given[b]) >= 2 {
                return Err(Error::PairCollision { first: given[a].one_based(), second: given[b].one_based() });
            }
        }
    }
    let mut covered = vec![vec![false; n]; n];
    for f in &given {
        for &i in f.lines() {
            for &j in f.lines() {
                covered[i][j] = true;
            }
        }
    }
    let mut all = given;
    for i in 0..n {
        for j in i + 1..n {
            if !covered[i][j] {
                all.push(Flat::new(vec![i, j]));
            }
        }
    }
    Ok(Arrangement::assemble(vec![Line::abstract_line(); n], all, None))
}

/// Named arrangement families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `xyz(x-y)(x-z)(y-z)`.
    Braid,
    /// Combinatorics of `xyz(xʳ-yʳ)(xʳ-zʳ)(yʳ-zʳ)`.
    Monomial(usize),
    /// 12 lines, 9 quadruple points: lines and points of AG(2,3).
    Hessian,
    /// 9 lines, 12 triple points: points and lines of AG(2,3).
    DualHessian,
    /// Matroid of a Latin-square realization; see [`crate::realizer`].
    Latin { n: usize, perms: Vec<Vec<Vec<usize>>> },
}

impl Family {
    pub fn label(&self) -> String {
        match self {
            Family::Braid => "braid".into(),
            Family::Monomial(r) => format!("monomial({r})"),
            Family::Hessian => "hessian".into(),
            Family::DualHessian => "dual_hessian".into(),
            Family::Latin { n, perms } => format!("latin(n={n}, blocks={})", perms.len() + 1),
        }
    }
}

pub fn generate(family: &Family) -> Result<Arrangement> {
    let arr = match family {
        Family::Braid => {
            flats_from_integer_lines(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, 0], [1, 0, -1], [0, 1, -1]])?
        }
        Family::Monomial(r) => monomial(*r)?,
        Family::Hessian => {
            let (points, lines) = affine_plane_3();
            let flats: Vec<Vec<usize>> =
                (0..points).map(|p| (0..lines.len()).filter(|&l| lines[l].contains(&p)).collect()).collect();
            arrangement_from_incidence(lines.len(), &flats)?
        }
        Family::DualHessian => {
            let (points, lines) = affine_plane_3();
            arrangement_from_incidence(points, &lines)?
        }
        Family::Latin { n, perms } => {
            let real = crate::realizer::realization_from_latin_squares(*n, perms)?;
            let flats: Vec<Vec<usize>> = real
                .rows()
                .iter()
                .map(|row| row.iter().enumerate().filter(|(_, &b)| b == 1).map(|(i, _)| i).collect())
                .collect();
            arrangement_from_incidence(real.cols(), &flats)?
        }
    };
    Ok(arr.with_name(family.label()))
}

/// Lines: x, y, z, then x - ζⁱy, x - ζʲz, y - ζᵏz for i, j, k in 0..r.
fn monomial(r: usize) -> Result<Arrangement> {
    if r == 0 {
        return Err(Error::BadParam("monomial family needs r >= 1".into()));
    }
    let (x, y, z) = (0, 1, 2);
    let a = |i: usize| 3 + i;
    let b = |j: usize| 3 + r + j;
    let c = |k: usize| 3 + 2 * r + k;
    let mut flats = vec![
        [x, y].into_iter().chain((0..r).map(a)).collect::<Vec<_>>(),
        [x, z].into_iter().chain((0..r).map(b)).collect(),
        [y, z].into_iter().chain((0..r).map(c)).collect(),
    ];
    // x = ζⁱy and x = ζʲz meet on y = ζ^(j-i) z.
    for i in 0..r {
        for j in 0..r {
            flats.push(vec![a(i), b(j), c((j + r - i) % r)]);
        }
    }
    arrangement_from_incidence(3 + 3 * r, &flats)
}

/// Points of AG(2,3) are `3u + v`; returns the point count and the 12 lines,
/// grouped by parallel class.
fn affine_plane_3() -> (usize, Vec<Vec<usize>>) {
    let pt = |u: usize, v: usize| 3 * (u % 3) + (v % 3);
    let mut lines = Vec::new();
    for c in 0..3 {
        lines.push((0..3).map(|v| pt(c, v)).collect());
    }
    for slope in 0..3 {
        for c in 0..3 {
            lines.push((0..3).map(|u| pt(u, slope * u + c)).collect());
        }
    }
    (9, lines)
}
