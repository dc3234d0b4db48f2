//! 0-1 realizations `J` of a symmetric matrix, `Q = JᵗJ - E`.
//!
//! Column `i` of a realization has `q_ii + 1` ones, and columns `i != j`
//! share exactly `q_ij + 1` rows. A row with at least two ones is
//! *structural*; a row with a single one is *padding*. Padding rows are only
//! admitted when `Q` is indecomposable: with two or more blocks every row
//! must meet every block.
//!
//! Structural rows cover the pairs `{i, j}` with `q_ij = 0` exactly once, so
//! the search picks the first uncovered pair and branches over every row
//! (clique of still-uncovered pairs) that could cover it. Each set of
//! structural rows is produced exactly once.

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::par::{self, Mode};
use crate::qforms::BlockMatrix;
use crate::vinberg::{classify_block, Kind};
use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering};

/// A realization with rows sorted in descending bit order (column 0 most
/// significant).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Realization {
    rows: Vec<Vec<u8>>,
    cols: usize,
}

impl Realization {
    pub fn from_rows(mut rows: Vec<Vec<u8>>, cols: usize) -> Self {
        rows.sort_unstable_by(|a, b| b.cmp(a));
        Realization { rows, cols }
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn structural_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.iter().filter(|&&b| b == 1).count() >= 2).count()
    }

    pub fn padding_rows(&self) -> usize {
        self.rows.len() - self.structural_rows()
    }

    /// `JᵗJ - E`.
    pub fn q(&self) -> IntMatrix {
        let n = self.cols;
        let mut q = IntMatrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                let shared = self.rows.iter().filter(|r| r[a] == 1 && r[b] == 1).count() as i64;
                q[(a, b)] = shared - 1;
            }
        }
        q
    }

    /// Column `i` as the set of rows holding a one.
    pub fn column(&self, i: usize) -> Vec<usize> {
        (0..self.rows.len()).filter(|&r| self.rows[r][i] == 1).collect()
    }

    /// Maximum number of common rows over all column pairs.
    pub fn max_overlap(&self) -> usize {
        let mut best = 0;
        for a in 0..self.cols {
            for b in a + 1..self.cols {
                best = best.max(self.rows.iter().filter(|r| r[a] == 1 && r[b] == 1).count());
            }
        }
        best
    }

    /// Applies a column permutation: old column `c` moves to `perm[c]`.
    pub fn permute_columns(&self, perm: &[usize]) -> Realization {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = vec![0u8; self.cols];
                for (c, &b) in r.iter().enumerate() {
                    out[perm[c]] = b;
                }
                out
            })
            .collect();
        Realization::from_rows(rows, self.cols)
    }

    /// Restriction to the first `k` columns, dropping rows that become zero.
    pub fn first_columns(&self, k: usize) -> Realization {
        let rows = self.rows.iter().filter(|r| r[..k].contains(&1)).map(|r| r[..k].to_vec()).collect();
        Realization::from_rows(rows, k)
    }
}

#[derive(Clone, Debug)]
pub struct RealizeOptions {
    /// Stop after this many realizations (sequential, deterministic order).
    pub limit: Option<usize>,
    /// Maximum number of search nodes.
    pub budget: u64,
    pub mode: Mode,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        RealizeOptions { limit: None, budget: 50_000_000, mode: Mode::default() }
    }
}

struct Problem {
    n: usize,
    block_of: Vec<usize>,
    blocks: usize,
}

#[derive(Clone)]
struct State {
    deg: Vec<i64>,
    need: Vec<Vec<bool>>,
    rows: Vec<Vec<usize>>,
}

fn validate(q: &IntMatrix) -> Result<BlockMatrix> {
    if !q.is_square() || q.rows() == 0 {
        return Err(Error::BadMatrix("expected a nonempty square matrix".into()));
    }
    let b = BlockMatrix::from_matrix(q.clone()).map_err(|e| Error::BadMatrix(e.to_string()))?;
    if let Some(i) = (0..q.rows()).find(|&i| q[(i, i)] < -1) {
        return Err(Error::BadMatrix(format!("diagonal entry {} is below -1", i + 1)));
    }
    Ok(b)
}

/// Necessary conditions from the transversal inequalities: with two or more
/// blocks, a column outside block `K` meets every column of `K` exactly once
/// and every row meets `K`, so `|K̄| <= |C_j| <= |K|` where `K̄` is any set
/// of pairwise row-disjoint columns of `K`.
fn transversal_bounds_hold(q: &IntMatrix, b: &BlockMatrix) -> bool {
    if b.partition().len() < 2 {
        return true;
    }
    for block in b.partition() {
        let disjoint = greedy_disjoint_family(q, block);
        for j in 0..q.rows() {
            if block.contains(&j) {
                continue;
            }
            let cj = (q[(j, j)] + 1) as usize;
            if cj > block.len() || cj < disjoint {
                return false;
            }
        }
    }
    true
}

/// Size of some family of pairwise row-disjoint columns (`q = -1` pairs).
fn greedy_disjoint_family(q: &IntMatrix, block: &[usize]) -> usize {
    let mut best = 0;
    for &start in block {
        let mut fam = vec![start];
        for &k in block {
            if !fam.contains(&k) && fam.iter().all(|&f| q[(f, k)] == -1) {
                fam.push(k);
            }
        }
        best = best.max(fam.len());
    }
    best
}

/// All realizations of `q` up to row permutation, sorted.
pub fn realize(q: &IntMatrix) -> Result<Vec<Realization>> {
    realize_with(q, &RealizeOptions::default())
}

pub fn realize_with(q: &IntMatrix, opts: &RealizeOptions) -> Result<Vec<Realization>> {
    let b = validate(q)?;
    let n = q.rows();
    let mut block_of = vec![0; n];
    for (k, block) in b.partition().iter().enumerate() {
        for &i in block {
            block_of[i] = k;
        }
    }
    let problem = Problem { n, block_of, blocks: b.partition().len() };
    if !transversal_bounds_hold(q, &b) {
        return Ok(Vec::new());
    }
    let state = State {
        deg: (0..n).map(|i| q[(i, i)] + 1).collect(),
        need: (0..n).map(|i| (0..n).map(|j| i != j && q[(i, j)] == 0).collect()).collect(),
        rows: Vec::new(),
    };
    let nodes = AtomicU64::new(0);
    let mut out = Vec::new();
    if opts.limit.is_some() || opts.mode == Mode::Sequential {
        search(&problem, state, &nodes, opts.budget, opts.limit, &mut out)?;
    } else {
        // Fan out over the rows that can cover the first pair.
        let children = expand(&problem, &state);
        match children {
            None => finish(&problem, &state, &mut out),
            Some(children) => {
                let parts = par::map_result(opts.mode, children, |child| {
                    let mut local = Vec::new();
                    search(&problem, child, &nodes, opts.budget, None, &mut local)?;
                    Ok(local)
                })?;
                out = parts.into_iter().flatten().collect();
            }
        }
    }
    out.sort();
    out.dedup();
    if let Some(k) = opts.limit {
        out.truncate(k);
    }
    debug_assert!(out.iter().all(|r| r.q() == *q && r.max_overlap() <= 1));
    Ok(out)
}

fn first_needed_pair(state: &State) -> Option<(usize, usize)> {
    let n = state.deg.len();
    (0..n).find_map(|i| (i + 1..n).find(|&j| state.need[i][j]).map(|j| (i, j)))
}

/// Child states for every row covering the first uncovered pair; `None` when
/// all pairs are covered.
fn expand(p: &Problem, state: &State) -> Option<Vec<State>> {
    let (i, j) = first_needed_pair(state)?;
    let mut children = Vec::new();
    if state.deg[i] < 1 || state.deg[j] < 1 {
        return Some(children);
    }
    let candidates: Vec<usize> =
        (0..p.n).filter(|&k| k != i && k != j && state.need[i][k] && state.need[j][k] && state.deg[k] >= 1).collect();
    let mut clique = vec![i, j];
    extend_cliques(p, state, &candidates, 0, &mut clique, &mut children);
    Some(children)
}

fn extend_cliques(
    p: &Problem,
    state: &State,
    candidates: &[usize],
    from: usize,
    clique: &mut Vec<usize>,
    out: &mut Vec<State>,
) {
    if let Some(child) = place_row(p, state, clique) {
        out.push(child);
    }
    for idx in from..candidates.len() {
        let k = candidates[idx];
        if clique[2..].iter().all(|&c| state.need[c][k]) {
            clique.push(k);
            extend_cliques(p, state, candidates, idx + 1, clique, out);
            clique.pop();
        }
    }
}

fn place_row(p: &Problem, state: &State, row: &[usize]) -> Option<State> {
    if p.blocks >= 2 {
        let mut seen = vec![false; p.blocks];
        for &c in row {
            seen[p.block_of[c]] = true;
        }
        if seen.contains(&false) {
            return None;
        }
    }
    let mut child = state.clone();
    for (a, &x) in row.iter().enumerate() {
        child.deg[x] -= 1;
        for &y in &row[a + 1..] {
            child.need[x][y] = false;
            child.need[y][x] = false;
        }
    }
    // A column with no ones left cannot cover its remaining pairs.
    for &x in row {
        if child.deg[x] == 0 && child.need[x].contains(&true) {
            return None;
        }
    }
    let mut sorted = row.to_vec();
    sorted.sort_unstable();
    child.rows.push(sorted);
    Some(child)
}

fn finish(p: &Problem, state: &State, out: &mut Vec<Realization>) {
    if p.blocks >= 2 && state.deg.iter().any(|&d| d != 0) {
        return;
    }
    let mut rows: Vec<Vec<u8>> = state
        .rows
        .iter()
        .map(|r| {
            let mut v = vec![0u8; p.n];
            for &c in r {
                v[c] = 1;
            }
            v
        })
        .collect();
    for (i, &d) in state.deg.iter().enumerate() {
        for _ in 0..d {
            let mut v = vec![0u8; p.n];
            v[i] = 1;
            rows.push(v);
        }
    }
    out.push(Realization::from_rows(rows, p.n));
}

fn search(
    p: &Problem,
    state: State,
    nodes: &AtomicU64,
    budget: u64,
    limit: Option<usize>,
    out: &mut Vec<Realization>,
) -> Result<()> {
    if nodes.fetch_add(1, Ordering::Relaxed) >= budget {
        return Err(Error::SearchBudgetExceeded(format!("more than {budget} search nodes")));
    }
    match expand(p, &state) {
        None => finish(p, &state, out),
        Some(children) => {
            for child in children {
                if limit.is_some_and(|k| out.len() >= k) {
                    break;
                }
                search(p, child, nodes, budget, limit, out)?;
            }
        }
    }
    Ok(())
}

/// Column permutations `σ` with `q[σa][σb] = q[a][b]`.
pub fn automorphisms(q: &IntMatrix, cap: usize) -> Result<Vec<Vec<usize>>> {
    let n = q.rows();
    let mut out = Vec::new();
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(
        q: &IntMatrix,
        perm: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<()> {
        let a = perm.len();
        if a == q.rows() {
            if out.len() >= cap {
                return Err(Error::SearchBudgetExceeded(format!("more than {cap} automorphisms")));
            }
            out.push(perm.clone());
            return Ok(());
        }
        for img in 0..q.rows() {
            if used[img] || q[(img, img)] != q[(a, a)] {
                continue;
            }
            if (0..a).all(|b| q[(perm[b], img)] == q[(b, a)]) {
                used[img] = true;
                perm.push(img);
                rec(q, perm, used, out, cap)?;
                perm.pop();
                used[img] = false;
            }
        }
        Ok(())
    }
    rec(q, &mut perm, &mut used, &mut out, cap)?;
    Ok(out)
}

/// Largest column-permuted form of `r` over the given automorphisms.
pub fn canonical_up_to_columns(r: &Realization, autos: &[Vec<usize>]) -> Realization {
    autos.iter().map(|s| r.permute_columns(s)).max().unwrap_or_else(|| r.clone())
}

/// Realizations up to row permutation and automorphisms of `q`.
pub fn realize_up_to_columns(q: &IntMatrix, opts: &RealizeOptions) -> Result<Vec<Realization>> {
    let raw = realize_with(q, opts)?;
    let autos = automorphisms(q, 10_000_000)?;
    // Sweep one orbit per class; every raw realization lies in exactly one.
    let mut remaining: BTreeSet<Realization> = raw.into_iter().collect();
    let mut classes = Vec::new();
    while let Some(r) = remaining.pop_first() {
        let orbit = par::map(opts.mode, autos.clone(), |s| r.permute_columns(&s));
        for img in &orbit {
            remaining.remove(img);
        }
        classes.push(orbit.into_iter().max().unwrap_or(r));
    }
    classes.sort();
    Ok(classes)
}

/// True iff the two 0-1 matrices agree up to row and column permutations.
pub fn incidence_isomorphic(a: &Realization, b: &Realization) -> bool {
    if a.cols != b.cols || a.rows.len() != b.rows.len() {
        return false;
    }
    let (ga, gb) = (a.q(), b.q());
    let n = a.cols;
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(
        a: &Realization,
        b: &Realization,
        ga: &IntMatrix,
        gb: &IntMatrix,
        perm: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let c = perm.len();
        if c == a.cols {
            return a.permute_columns(perm) == *b;
        }
        for img in 0..a.cols {
            if used[img] || gb[(img, img)] != ga[(c, c)] {
                continue;
            }
            if (0..c).all(|d| gb[(perm[d], img)] == ga[(d, c)]) {
                used[img] = true;
                perm.push(img);
                if rec(a, b, ga, gb, perm, used) {
                    return true;
                }
                perm.pop();
                used[img] = false;
            }
        }
        false
    }
    rec(a, b, &ga, &gb, &mut perm, &mut used)
}

/// The 9×12 matrix realizing four `A₂⁽¹⁾` Cartan blocks.
pub fn jc() -> Realization {
    const ROWS: [[u8; 12]; 9] = [
        [1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0],
        [1, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0],
        [1, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1],
        [0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1],
        [0, 1, 0, 0, 1, 0, 0, 0, 1, 1, 0, 0],
        [0, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 0],
        [0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 1, 0],
        [0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 1],
        [0, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 0],
    ];
    Realization::from_rows(ROWS.iter().map(|r| r.to_vec()).collect(), 12)
}

/// True iff the incidence (rows = multiple points, columns = lines) is the
/// first 9, 10, 11 or 12 columns of `J_C` up to row and column permutations.
pub fn embeds_in_jc(incidence: &Realization) -> bool {
    let k = incidence.cols();
    (9..=12).contains(&k) && incidence_isomorphic(incidence, &jc().first_columns(k))
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    p.len() == n && p.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

fn disjoint(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(x, y)| x != y)
}

/// `perms[r][b]` is the permutation of block `r + 1` on row group `b`; the
/// first block is implicit. Rows are indexed `b * n + t`; row `(b, t)` holds
/// column `b` of block 0 and column `perms[r][b][t]` of block `r + 1`.
pub fn realization_from_latin_squares(n: usize, perms: &[Vec<Vec<usize>>]) -> Result<Realization> {
    if n < 2 || perms.is_empty() {
        return Err(Error::BadParam("need n >= 2 and at least two blocks".into()));
    }
    let ell = perms.len() + 1;
    for (r, group) in perms.iter().enumerate() {
        if group.len() != n {
            return Err(Error::BadNormalization(format!(
                "block {} has {} permutations, expected {n}",
                r + 2,
                group.len()
            )));
        }
        for (b, p) in group.iter().enumerate() {
            if !is_permutation(p, n) {
                return Err(Error::BadNormalization(format!("entry ({}, {}) is not a permutation", b + 1, r + 1)));
            }
            let id = p.iter().enumerate().all(|(t, &x)| t == x);
            if (r == 0 || b == 0) && !id {
                return Err(Error::BadNormalization(format!("entry ({}, {}) must be the identity", b + 1, r + 1)));
            }
        }
    }
    for r in 1..perms.len() {
        for b1 in 0..n {
            for b2 in b1 + 1..n {
                if !disjoint(&perms[r][b1], &perms[r][b2]) {
                    return Err(Error::NotDisjoint(format!("rows {} and {} of block {}", b1 + 1, b2 + 1, r + 2)));
                }
            }
        }
    }
    for b in 1..n {
        for r1 in 0..perms.len() {
            for r2 in r1 + 1..perms.len() {
                if !disjoint(&perms[r1][b], &perms[r2][b]) {
                    return Err(Error::NotDisjoint(format!("blocks {} and {} in row {}", r1 + 2, r2 + 2, b + 1)));
                }
            }
        }
    }
    for r1 in 1..perms.len() {
        for r2 in r1 + 1..perms.len() {
            for b2 in 1..n {
                for b1 in 1..b2 {
                    if !orthogonal_step(&perms[r1][b1], &perms[r2][b1], &perms[r1][b2], &perms[r2][b2]) {
                        return Err(Error::NotDisjoint(format!(
                            "blocks {} and {} repeat a pair in rows {} and {}",
                            r1 + 2,
                            r2 + 2,
                            b1 + 1,
                            b2 + 1
                        )));
                    }
                }
            }
        }
    }
    let mut rows = Vec::with_capacity(n * n);
    for b in 0..n {
        for t in 0..n {
            let mut row = vec![0u8; ell * n];
            row[b] = 1;
            for (r, group) in perms.iter().enumerate() {
                row[(r + 1) * n + group[b][t]] = 1;
            }
            rows.push(row);
        }
    }
    Ok(Realization::from_rows(rows, ell * n))
}

/// Permutation arrays for `ℓ = 2 + squares.len()` blocks from Latin squares
/// with entries `1..=n`; each square must have the identity as first row.
pub fn perms_from_latin_squares(n: usize, squares: &[Vec<Vec<usize>>]) -> Result<Vec<Vec<Vec<usize>>>> {
    let identity: Vec<usize> = (0..n).collect();
    let mut perms = vec![vec![identity; n]];
    for sq in squares {
        if sq.len() != n || sq.iter().any(|row| row.len() != n) {
            return Err(Error::BadParam(format!("Latin square must be {n}x{n}")));
        }
        if sq.iter().flatten().any(|&x| x == 0 || x > n) {
            return Err(Error::BadParam(format!("Latin square entries must lie in 1..={n}")));
        }
        let group: Vec<Vec<usize>> = sq.iter().map(|row| row.iter().map(|x| x - 1).collect()).collect();
        for c in 0..n {
            let col: Vec<usize> = group.iter().map(|row| row[c]).collect();
            if !is_permutation(&col, n) {
                return Err(Error::BadParam(format!("column {} of the Latin square repeats a value", c + 1)));
            }
        }
        perms.push(group);
    }
    Ok(perms)
}

/// Squares `x` and `y` take pairs `(x1[t], y1[t])` in one row group and
/// `(x2[t], y2[t])` in another; orthogonality forbids a repeated pair.
fn orthogonal_step(x1: &[usize], y1: &[usize], x2: &[usize], y2: &[usize]) -> bool {
    let mut seen = vec![usize::MAX; x1.len()];
    for (&x, &y) in x1.iter().zip(y1) {
        seen[x] = y;
    }
    x2.iter().zip(y2).all(|(&x, &y)| seen[x] != y)
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            cur.swap(j, k - 1);
        }
    }
    heap(n, &mut cur, &mut out);
    out.sort();
    out.dedup();
    out
}

/// Normalized permutation arrays for `ell` blocks of size `n`, in
/// lexicographic order, at most `limit` of them.
pub fn search_latin_systems(n: usize, ell: usize, limit: Option<usize>) -> Result<Vec<Vec<Vec<Vec<usize>>>>> {
    if n < 2 || ell < 2 {
        return Err(Error::BadParam("need n >= 2 and at least two blocks".into()));
    }
    if n > 6 {
        return Err(Error::BadParam("permutation search is limited to n <= 6".into()));
    }
    let all = all_permutations(n);
    let identity: Vec<usize> = (0..n).collect();
    let mut perms: Vec<Vec<Vec<usize>>> = vec![vec![identity.clone(); n]];
    for _ in 2..ell {
        let mut g = vec![Vec::new(); n];
        g[0] = identity.clone();
        perms.push(g);
    }
    let mut out = Vec::new();
    // Cells (r, b) for r >= 1, b >= 1, filled row group by row group.
    let cells: Vec<(usize, usize)> = (1..n).flat_map(|b| (1..ell - 1).map(move |r| (r, b))).collect();
    fn rec(
        k: usize,
        cells: &[(usize, usize)],
        all: &[Vec<usize>],
        perms: &mut Vec<Vec<Vec<usize>>>,
        out: &mut Vec<Vec<Vec<Vec<usize>>>>,
        limit: Option<usize>,
    ) {
        if limit.is_some_and(|l| out.len() >= l) {
            return;
        }
        let Some(&(r, b)) = cells.get(k) else {
            out.push(perms.clone());
            return;
        };
        for p in all {
            let ok = (0..b).all(|b2| disjoint(&perms[r][b2], p))
                && (0..r).all(|r2| disjoint(&perms[r2][b], p))
                && (1..r).all(|r2| (1..b).all(|b2| orthogonal_step(&perms[r2][b2], &perms[r][b2], &perms[r2][b], p)));
            if ok {
                perms[r][b] = p.clone();
                rec(k + 1, cells, all, perms, out, limit);
            }
        }
        perms[r][b] = Vec::new();
    }
    rec(0, &cells, &all, &mut perms, &mut out, limit);
    Ok(out)
}

/// Outcome of the full-graph block check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullGraphReport {
    /// Common block size.
    pub n: usize,
    pub blocks: usize,
    /// `|Π| = n + 1`: realizations come from Latin squares.
    pub maximal: bool,
    pub violations: Vec<String>,
}

impl FullGraphReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

fn is_full_graph(q: &IntMatrix, block: &[usize]) -> bool {
    block.iter().all(|&a| block.iter().all(|&b| a == b || q[(a, b)] == -1))
}

/// Checks the conclusions that hold for realizable matrices with at least two
/// affine full-graph blocks: uniform block size `n`, all diagonals `n - 1`,
/// and at most `n + 1` blocks.
pub fn full_graph_theorem_check(q: &IntMatrix) -> Result<FullGraphReport> {
    let b = validate(q)?;
    let mut full = Vec::new();
    for (k, block) in b.partition().iter().enumerate() {
        if block.len() >= 2 && is_full_graph(q, block) && classify_block(&b.block(k))?.kind == Kind::Affine {
            full.push(k);
        }
    }
    if full.len() < 2 {
        return Err(Error::Inapplicable("fewer than two affine full-graph blocks of size >= 2".into()));
    }
    let n = b.partition()[full[0]].len();
    let mut violations = Vec::new();
    for block in b.partition() {
        if block.len() != n {
            violations.push(format!("block of size {} differs from n = {n}", block.len()));
        }
    }
    for i in 0..q.rows() {
        if q[(i, i)] != n as i64 - 1 {
            violations.push(format!("diagonal entry {} is {}, expected {}", i + 1, q[(i, i)], n - 1));
        }
    }
    let blocks = b.partition().len();
    if blocks > n + 1 {
        violations.push(format!("{blocks} blocks exceed n + 1 = {}", n + 1));
    }
    Ok(FullGraphReport { n, blocks, maximal: blocks == n + 1, violations })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanVerdict {
    pub realizable: bool,
    pub reason: String,
}

/// Realizability of matrices with at least three affine blocks, all of them
/// affine Cartan matrices (every diagonal entry 2).
pub fn cartan_case_classify(q: &IntMatrix) -> Result<CartanVerdict> {
    let b = validate(q)?;
    if (0..q.rows()).any(|i| q[(i, i)] != 2) {
        return Err(Error::Inapplicable("not every diagonal entry is 2".into()));
    }
    let kinds: Vec<Kind> =
        (0..b.partition().len()).map(|k| classify_block(&b.block(k)).map(|c| c.kind)).collect::<Result<_>>()?;
    let affine = kinds.iter().filter(|&&k| k == Kind::Affine).count();
    if affine < 3 {
        return Err(Error::Inapplicable(format!("{affine} affine blocks, need at least 3")));
    }
    if kinds.contains(&Kind::Indefinite) {
        return Ok(CartanVerdict { realizable: false, reason: "an indefinite block is present".into() });
    }
    let blocks = b.partition().len();
    if blocks > 4 {
        return Ok(CartanVerdict { realizable: false, reason: format!("{blocks} blocks, at most 4 allowed") });
    }
    for (k, block) in b.partition().iter().enumerate() {
        let lines: Vec<usize> = block.iter().map(|i| i + 1).collect();
        if kinds[k] == Kind::Affine && block.len() != 3 {
            return Ok(CartanVerdict { realizable: false, reason: format!("affine block is not A2(1): {lines:?}") });
        }
        // A finite block has at most two columns of weight 3, so it cannot meet all 9 rows.
        if kinds[k] == Kind::Finite {
            return Ok(CartanVerdict {
                realizable: false,
                reason: format!("finite block {lines:?} would need rows that miss it"),
            });
        }
    }
    Ok(CartanVerdict { realizable: true, reason: format!("{affine} A2(1) blocks, {blocks} blocks in total") })
}

/// Direct sum of symmetric blocks.
pub fn direct_sum(blocks: &[IntMatrix]) -> IntMatrix {
    let n: usize = blocks.iter().map(IntMatrix::rows).sum();
    let mut q = IntMatrix::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                q[(off + i, off + j)] = b[(i, j)];
            }
        }
        off += b.rows();
    }
    q
}

/// Cartan matrix of a graph: 2 on the diagonal, -1 on edges.
pub fn cartan_of_graph(n: usize, edges: &[(usize, usize)]) -> IntMatrix {
    let mut q = IntMatrix::zeros(n, n);
    for i in 0..n {
        q[(i, i)] = 2;
    }
    for &(a, b) in edges {
        q[(a, b)] = -1;
        q[(b, a)] = -1;
    }
    q
}

pub fn a2_affine() -> IntMatrix {
    cartan_of_graph(3, &[(0, 1), (1, 2), (0, 2)])
}
