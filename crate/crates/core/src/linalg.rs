//! Exact dense linear algebra over the integers and rationals.
//!
//! Subspaces are always stored in a canonical form (reduced row echelon form
//! of a spanning set, every row scaled to a primitive integer vector whose
//! pivot is positive), so two subspaces are equal iff their bases compare
//! equal.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense integer matrix, row-major.
///
/// Entries of the matrices handled here are bounded by the number of flats of
/// an arrangement, so they are stored as `i64` and promoted to `BigInt` or
/// `BigRational` inside every elimination routine.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from rows; panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged matrix rows");
            data.extend_from_slice(r.as_ref());
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Principal submatrix on the given (ordered) indices.
    pub fn principal(&self, idx: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m[(a, b)] = self[(i, j)];
            }
        }
        m
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    /// First asymmetric position, if any.
    pub fn asymmetry(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self[(i, j)] != self[(j, i)] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// `self * v` for an integer vector.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).filter(|(a, _)| **a != 0).map(|(a, x)| x * BigInt::from(*a)).sum())
            .collect()
    }

    /// Quadratic form `vᵗ M v`.
    pub fn quadratic_form(&self, v: &[BigInt]) -> BigInt {
        self.apply(v).iter().zip(v).map(|(a, b)| a * b).sum()
    }

    fn big_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|&x| BigInt::from(x)).collect()).collect()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Divides `v` by the gcd of its entries and makes the first nonzero entry
/// positive. The zero vector is returned unchanged.
pub fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v;
    }
    let negate = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in v.iter_mut() {
        *x = &*x / &g;
        if negate {
            *x = -&*x;
        }
    }
    v
}

/// Clears denominators of a rational vector and returns the primitive integer
/// vector on the same ray (up to sign, see [`primitive`]).
pub fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    primitive(v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect())
}

/// Fraction-free Gauss-Jordan reduction in place. Rows are kept primitive
/// after every update. Returns the pivot columns, one per nonzero row; the
/// reduced matrix has exactly those rows first.
fn reduce(rows: &mut Vec<Vec<BigInt>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot_row = primitive(std::mem::take(&mut rows[r]));
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            let p = pivot_row[c].clone();
            let updated: Vec<BigInt> = rows[i].iter().zip(&pivot_row).map(|(x, y)| x * &p - y * &f).collect();
            rows[i] = primitive(updated);
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Canonical representation of a linear subspace of `Qⁿ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<BigInt>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    /// The span of arbitrary integer vectors, canonicalized.
    pub fn span(ambient: usize, vectors: Vec<Vec<BigInt>>) -> Self {
        let mut rows: Vec<Vec<BigInt>> = vectors.into_iter().inspect(|v| assert_eq!(v.len(), ambient)).collect();
        reduce(&mut rows, ambient);
        Subspace { ambient, basis: rows }
    }

    pub fn span_rational(ambient: usize, vectors: &[Vec<BigRational>]) -> Self {
        Self::span(ambient, vectors.iter().map(|v| clear_denominators(v)).collect())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rank_big(rows, self.ambient) == self.dim()
    }

    /// Dimension of `self + other`.
    pub fn sum_dim(&self, other: &Subspace) -> usize {
        assert_eq!(self.ambient, other.ambient);
        let rows = self.basis.iter().chain(&other.basis).cloned().collect();
        rank_big(rows, self.ambient)
    }

    /// True iff the two subspaces meet only at the origin.
    pub fn meets_trivially(&self, other: &Subspace) -> bool {
        self.sum_dim(other) == self.dim() + other.dim()
    }

    /// Embeds into a larger ambient space: coordinate `k` goes to `positions[k]`.
    pub fn zero_extend(&self, positions: &[usize], ambient: usize) -> Subspace {
        assert_eq!(positions.len(), self.ambient);
        let vecs = self
            .basis
            .iter()
            .map(|b| {
                let mut v = vec![BigInt::zero(); ambient];
                for (k, &p) in positions.iter().enumerate() {
                    v[p] = b[k].clone();
                }
                v
            })
            .collect();
        Subspace::span(ambient, vecs)
    }
}

fn rank_big(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> usize {
    reduce(&mut rows, ncols).len()
}

/// Rank of an integer matrix.
pub fn rank(m: &IntMatrix) -> usize {
    rank_big(m.big_rows(), m.cols())
}

/// Null space `{x : rows · x = 0}` of an integer system with `ncols` unknowns.
pub fn kernel_of_rows(rows: Vec<Vec<BigInt>>, ncols: usize) -> Subspace {
    let mut rows = rows;
    let pivots = reduce(&mut rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let l = pivots.iter().enumerate().fold(BigInt::one(), |l, (r, &c)| l.lcm(&rows[r][c]));
    let vecs = free
        .iter()
        .map(|&f| {
            let mut v = vec![BigInt::zero(); ncols];
            v[f] = l.clone();
            for (r, &c) in pivots.iter().enumerate() {
                // rows[r][c] * x_c + rows[r][f] * x_f = 0
                v[c] = -(&rows[r][f] * &l) / &rows[r][c];
            }
            v
        })
        .collect();
    Subspace::span(ncols, vecs)
}

/// Null space of an integer matrix.
pub fn kernel(m: &IntMatrix) -> Subspace {
    kernel_of_rows(m.big_rows(), m.cols())
}

/// Solves `a x = b` for a nonsingular square rational system.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut aug: Vec<Vec<BigRational>> =
        a.iter().zip(b).map(|(row, bi)| row.iter().cloned().chain([bi.clone()]).collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !aug[i][c].is_zero())?;
        aug.swap(c, p);
        let inv = aug[c][c].recip();
        for x in aug[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != c && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in c..=n {
                    let d = &aug[c][j] * &f;
                    aug[i][j] -= d;
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n].clone()).collect())
}

/// Determinant of a square integer matrix (Bareiss elimination).
pub fn determinant(m: &IntMatrix) -> BigInt {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut a = m.big_rows();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
