//! Positive integer labelings `m` of a connected graph for which
//! `Q(m, Γ)` (diagonal `m`, `-1` on edges) is affine, and the bijection with
//! positive kernel vectors `u` satisfying `u_i | Σ_{j ~ i} u_j`.

use crate::error::{Error, Result};
use crate::linalg::{determinant, primitive, IntMatrix};
use crate::par::{self, Mode};
use crate::vinberg::{classify_block, is_positive_definite, Certificate, Kind};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Simple undirected graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<bool>>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![vec![false; n]; n];
        let mut list = Vec::new();
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::BadIndex(format!("edge ({}, {}) outside 1..={n}", a + 1, b + 1)));
            }
            if a == b {
                return Err(Error::BadParam(format!("loop at vertex {}", a + 1)));
            }
            if adj[a][b] {
                return Err(Error::BadParam(format!("repeated edge ({}, {})", a + 1, b + 1)));
            }
            adj[a][b] = true;
            adj[b][a] = true;
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        Ok(Graph { n, edges: list, adj })
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        Graph::new(n, &edges).expect("complete graph")
    }

    /// Star with centre 0 and leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|l| (0, l)).collect();
        Graph::new(leaves + 1, &edges).expect("star")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).expect("path")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n >= 3 {
            edges.push((0, n - 1));
        }
        Graph::new(n, &edges).expect("cycle")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a][b]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&x| x).count()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in 0..self.n {
                if self.adj[v][w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// `Q(m, Γ)`.
    pub fn q(&self, m: &[i64]) -> IntMatrix {
        let mut q = IntMatrix::zeros(self.n, self.n);
        for (i, &mi) in m.iter().enumerate() {
            q[(i, i)] = mi;
        }
        for &(a, b) in &self.edges {
            q[(a, b)] = -1;
            q[(b, a)] = -1;
        }
        q
    }

    /// All vertex permutations preserving adjacency.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        fn rec(g: &Graph, perm: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
            let a = perm.len();
            if a == g.n {
                out.push(perm.clone());
                return;
            }
            for img in 0..g.n {
                if !used[img] && g.degree(img) == g.degree(a) && (0..a).all(|b| g.adj[perm[b]][img] == g.adj[b][a]) {
                    used[img] = true;
                    perm.push(img);
                    rec(g, perm, used, out);
                    perm.pop();
                    used[img] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(self, &mut Vec::new(), &mut vec![false; self.n], &mut out);
        out
    }
}

fn require_connected(g: &Graph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

/// Partial labeling; 0 marks an unassigned vertex. Pairs `(label, vertex)`
/// are assigned in strictly increasing lexicographic order, so every multiset
/// of labels on vertices is reached once.
#[derive(Clone)]
struct Node {
    labels: Vec<i64>,
    last: Option<(i64, usize)>,
    assigned: usize,
}

enum Step {
    Done(Option<Vec<i64>>),
    Branch(Vec<Node>),
}

fn assigned_indices(node: &Node) -> Vec<usize> {
    (0..node.labels.len()).filter(|&i| node.labels[i] != 0).collect()
}

fn floor_completion(g: &Graph, node: &Node, t: i64) -> IntMatrix {
    let m: Vec<i64> = node.labels.iter().map(|&x| if x == 0 { t } else { x }).collect();
    g.q(&m)
}

/// Smallest `t >= from` at which filling every unassigned label with `t`
/// gives a positive definite matrix. Requires the assigned part to be
/// positive definite, which guarantees existence.
fn pd_threshold(g: &Graph, node: &Node, from: i64) -> i64 {
    let pd = |t: i64| is_positive_definite(&floor_completion(g, node, t));
    if pd(from) {
        return from;
    }
    let (mut lo, mut hi) = (from, from.max(1) * 2);
    while !pd(hi) {
        lo = hi;
        hi *= 2;
    }
    // pd(lo) false, pd(hi) true
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pd(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

fn step(g: &Graph, node: &Node) -> Step {
    let n = g.n;
    if node.assigned + 1 == n {
        // det is affine-linear in the last label: det = a * m + b.
        let v = node.labels.iter().position(|&x| x == 0).expect("one unassigned vertex");
        let s = assigned_indices(node);
        let a = determinant(&g.q(&node.labels).principal(&s));
        let b = determinant(&g.q(&node.labels));
        let (m, r) = (-b).div_rem(&a);
        if !r.is_zero() {
            return Step::Done(None);
        }
        let Some(m) = m.to_i64().filter(|&m| m >= 1) else {
            return Step::Done(None);
        };
        if node.last.is_some_and(|last| (m, v) <= last) {
            return Step::Done(None);
        }
        let mut labels = node.labels.clone();
        labels[v] = m;
        let ok = classify_block(&g.q(&labels)).is_ok_and(|c| c.kind == Kind::Affine);
        return Step::Done(ok.then_some(labels));
    }
    let start = node.last.map_or(1, |(t, _)| t);
    let limit = pd_threshold(g, node, start);
    let mut children = Vec::new();
    for t in start..limit {
        for v in 0..n {
            if node.labels[v] != 0 || node.last.is_some_and(|last| (t, v) <= last) {
                continue;
            }
            let mut child = node.clone();
            child.labels[v] = t;
            child.last = Some((t, v));
            child.assigned += 1;
            // Proper principal submatrices of an affine block are positive definite.
            if is_positive_definite(&g.q(&child.labels).principal(&assigned_indices(&child))) {
                children.push(child);
            }
        }
    }
    Step::Branch(children)
}

fn dfs(g: &Graph, node: Node, out: &mut Vec<Vec<i64>>) {
    match step(g, &node) {
        Step::Done(found) => out.extend(found),
        Step::Branch(children) => {
            for c in children {
                dfs(g, c, out);
            }
        }
    }
}

/// All affine labelings of a connected graph, sorted.
pub fn enumerate_affine_labelings(g: &Graph) -> Result<Vec<Vec<i64>>> {
    enumerate_affine_labelings_with(g, Mode::default())
}

pub fn enumerate_affine_labelings_with(g: &Graph, mode: Mode) -> Result<Vec<Vec<i64>>> {
    require_connected(g)?;
    let root = Node { labels: vec![0; g.n], last: None, assigned: 0 };
    let mut out = Vec::new();
    // Expand a couple of levels so the parallel map has enough work items.
    let mut frontier = vec![root];
    for _ in 0..2 {
        let mut next = Vec::new();
        for node in frontier {
            match step(g, &node) {
                Step::Done(found) => out.extend(found),
                Step::Branch(children) => next.extend(children),
            }
        }
        frontier = next;
    }
    let parts = par::map(mode, frontier, |node| {
        let mut local = Vec::new();
        dfs(g, node, &mut local);
        local
    });
    out.extend(parts.into_iter().flatten());
    out.sort();
    out.dedup();
    Ok(out)
}

/// Largest image of `m` under the automorphisms.
pub fn canonical_labeling(m: &[i64], autos: &[Vec<usize>]) -> Vec<i64> {
    autos
        .iter()
        .map(|s| {
            let mut img = vec![0; m.len()];
            for (v, &x) in m.iter().enumerate() {
                img[s[v]] = x;
            }
            img
        })
        .max()
        .unwrap_or_else(|| m.to_vec())
}

/// Orbit representatives under graph automorphisms, sorted.
pub fn up_to_symmetry(g: &Graph, labelings: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let autos = g.automorphisms();
    let mut reps: Vec<Vec<i64>> = labelings.iter().map(|m| canonical_labeling(m, &autos)).collect();
    reps.sort();
    reps.dedup();
    reps
}

/// `m_i = (Σ_{j ~ i} u_j) / u_i`.
pub fn labeling_from_nullvector(g: &Graph, u: &[BigInt]) -> Result<Vec<i64>> {
    require_connected(g)?;
    if u.len() != g.n {
        return Err(Error::NotInN(format!("expected {} entries, got {}", g.n, u.len())));
    }
    if let Some(i) = u.iter().position(|x| !x.is_positive()) {
        return Err(Error::NotInN(format!("entry {} is not positive", i + 1)));
    }
    if u.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x)) != BigInt::one() {
        return Err(Error::NotInN("entries are not coprime".into()));
    }
    let mut m = Vec::with_capacity(g.n);
    for i in 0..g.n {
        let s: BigInt = (0..g.n).filter(|&j| g.adj[i][j]).map(|j| &u[j]).sum();
        let (q, r) = s.div_rem(&u[i]);
        if !r.is_zero() {
            return Err(Error::NotInN(format!("u_{} = {} does not divide {s}", i + 1, u[i])));
        }
        let q = q.to_i64().filter(|&q| q >= 1).ok_or_else(|| Error::NotInN(format!("label {} out of range", i + 1)))?;
        m.push(q);
    }
    Ok(m)
}

/// The primitive positive kernel vector of `Q(m, Γ)`.
pub fn nullvector_from_labeling(g: &Graph, m: &[i64]) -> Result<Vec<BigInt>> {
    require_connected(g)?;
    if m.len() != g.n {
        return Err(Error::BadParam(format!("expected {} labels, got {}", g.n, m.len())));
    }
    match classify_block(&g.q(m))?.certificate {
        Certificate::Affine { kernel } => Ok(kernel),
        _ => Err(Error::NotAffine),
    }
}

/// `Σ 1/(m_i + 1) = 1`: the affine test for labelings of a complete graph.
pub fn full_graph_affine_test(m: &[i64]) -> bool {
    if m.iter().any(|&x| x < 1) {
        return false;
    }
    let s: BigRational = m.iter().map(|&x| BigRational::new(BigInt::one(), BigInt::from(x + 1))).sum();
    s.is_one()
}

/// `m_0 = Σ 1/m_i` for a star with root label `m_0`. When it holds, returns
/// the kernel vector, proportional to `(1, 1/m_1, …, 1/m_n)`.
pub fn bush_affine_test(m0: i64, leaves: &[i64]) -> Option<Vec<BigInt>> {
    if m0 < 1 || leaves.iter().any(|&x| x < 1) {
        return None;
    }
    let s: BigRational = leaves.iter().map(|&x| BigRational::new(BigInt::one(), BigInt::from(x))).sum();
    if s != BigRational::from_integer(BigInt::from(m0)) {
        return None;
    }
    let l = leaves.iter().fold(BigInt::one(), |l, &x| l.lcm(&BigInt::from(x)));
    let mut u = vec![l.clone()];
    u.extend(leaves.iter().map(|&x| &l / BigInt::from(x)));
    Some(primitive(u))
}
