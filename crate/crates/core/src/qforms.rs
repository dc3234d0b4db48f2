//! The incidence matrix `J` of a flat collection, the symmetric matrix
//! `Q = JᵗJ - E`, its graph and its block decomposition.

use crate::error::{Error, Result};
use crate::incidence::Flat;
use crate::linalg::{kernel_of_rows, IntMatrix, Subspace};
use num_bigint::BigInt;

/// An ordered collection of flats over an ordered ground set of line indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatCollection {
    ground: Vec<usize>,
    flats: Vec<Flat>,
}

impl FlatCollection {
    /// Validates: at least one flat, every flat inside the ground set, and
    /// no two flats sharing more than one element.
    pub fn new(ground: Vec<usize>, flats: Vec<Flat>) -> Result<Self> {
        if flats.is_empty() {
            return Err(Error::BadCollection("no flats".into()));
        }
        let mut sorted = ground.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::BadCollection("repeated ground element".into()));
        }
        for f in &flats {
            if let Some(i) = f.lines().iter().find(|i| sorted.binary_search(i).is_err()) {
                return Err(Error::BadCollection(format!("line {} of a flat is not in the ground set", i + 1)));
            }
        }
        for a in 0..flats.len() {
            for b in a + 1..flats.len() {
                if flats[a].meet(&flats[b]) >= 2 {
                    return Err(Error::PairCollision { first: flats[a].one_based(), second: flats[b].one_based() });
                }
            }
        }
        Ok(FlatCollection { ground, flats })
    }

    /// Collection over `I(X)`, the sorted union of the flats.
    pub fn covering(flats: Vec<Flat>) -> Result<Self> {
        let mut ground: Vec<usize> = flats.iter().flat_map(|f| f.lines().iter().copied()).collect();
        ground.sort_unstable();
        ground.dedup();
        Self::new(ground, flats)
    }

    pub fn ground(&self) -> &[usize] {
        &self.ground
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    /// True iff the ground set is the union of the flats.
    pub fn covers(&self) -> bool {
        self.ground.iter().all(|&i| self.flats.iter().any(|f| f.contains(i)))
    }
}

/// `Q` with its graph and partition. Block indices refer to positions in the
/// ground order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMatrix {
    ground: Vec<usize>,
    q: IntMatrix,
    partition: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl BlockMatrix {
    /// Wraps an arbitrary symmetric matrix, deriving the graph (off-diagonal
    /// nonzeros) and its components. Ground labels are `0..n`.
    pub fn from_matrix(q: IntMatrix) -> Result<Self> {
        if let Some((i, j)) = q.asymmetry() {
            return Err(Error::NotSymmetric(i, j));
        }
        let n = q.rows();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                match q[(i, j)] {
                    0 => {}
                    -1 => edges.push((i, j)),
                    v => return Err(Error::BadOffDiagonal(i, j, v)),
                }
            }
        }
        let partition = components(n, &edges);
        Ok(BlockMatrix { ground: (0..n).collect(), q, partition, edges })
    }

    pub fn ground(&self) -> &[usize] {
        &self.ground
    }

    pub fn q(&self) -> &IntMatrix {
        &self.q
    }

    /// Connected components of the graph, each sorted, ordered by first element.
    pub fn partition(&self) -> &[Vec<usize>] {
        &self.partition
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn block(&self, k: usize) -> IntMatrix {
        self.q.principal(&self.partition[k])
    }

    /// A block expressed in ground labels (line indices).
    pub fn block_labels(&self, k: usize) -> Vec<usize> {
        self.partition[k].iter().map(|&p| self.ground[p]).collect()
    }
}

/// Connected components of a graph on `0..n`, sorted.
pub fn components(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}

/// Row X, column i is 1 iff line `ground[i]` lies on flat X.
pub fn build_j(c: &FlatCollection) -> Vec<Vec<u8>> {
    c.flats.iter().map(|f| c.ground.iter().map(|&i| u8::from(f.contains(i))).collect()).collect()
}

pub fn build_q(c: &FlatCollection) -> BlockMatrix {
    let j = build_j(c);
    let n = c.ground.len();
    let mut q = IntMatrix::zeros(n, n);
    for a in 0..n {
        for b in a..n {
            let shared = j.iter().filter(|row| row[a] == 1 && row[b] == 1).count() as i64;
            q[(a, b)] = shared - 1;
            q[(b, a)] = shared - 1;
        }
    }
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if q[(a, b)] == -1 {
                edges.push((a, b));
            }
        }
    }
    let partition = components(n, &edges);
    BlockMatrix { ground: c.ground.clone(), q, partition, edges }
}

/// `{u : m u = 0, Σ uᵢ = 0}` in canonical form.
pub fn nullspace_star(m: &IntMatrix) -> Subspace {
    let mut rows: Vec<Vec<BigInt>> =
        (0..m.rows()).map(|i| m.row(i).iter().map(|&x| BigInt::from(x)).collect()).collect();
    rows.push(vec![BigInt::from(1); m.cols()]);
    kernel_of_rows(rows, m.cols())
}

/// `nullspace_star` of the 0-1 matrix `J`.
pub fn nullspace_star_j(j: &[Vec<u8>], ncols: usize) -> Subspace {
    let mut rows: Vec<Vec<BigInt>> = j.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    rows.push(vec![BigInt::from(1); ncols]);
    kernel_of_rows(rows, ncols)
}
