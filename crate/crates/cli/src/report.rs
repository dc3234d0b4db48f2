//! Output records. Every record serializes to JSON and deserializes back to
//! an equal value; rationals and big integers are strings, indices of lines
//! and vertices are 1-based.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use resonance_core::incidence::{Arrangement, Flat};
use resonance_core::io::format_rational;
use resonance_core::linalg::Subspace;
use resonance_core::pencils::{FBound, Feasible, FiberReport, Root};
use resonance_core::qforms::BlockMatrix;
use resonance_core::realizer::{CartanVerdict, FullGraphReport, Realization};
use resonance_core::resonance::{ResonanceComponent, SupportVerdict, Weight};
use resonance_core::vinberg::{Certificate, CollectionClass, Kind, Verdict};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

pub trait Report: Serialize {
    fn text(&self) -> String;

    fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records serialize") + "\n"
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn flats_1(flats: &[Flat]) -> Vec<Vec<usize>> {
    flats.iter().map(Flat::one_based).collect()
}

fn big_strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn basis_strings(s: &Subspace) -> Vec<Vec<String>> {
    s.basis().iter().map(|v| big_strings(v)).collect()
}

fn set(v: &[usize]) -> String {
    format!("{{{}}}", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn sets(v: &[Vec<usize>]) -> String {
    v.iter().map(|s| set(s)).collect::<Vec<_>>().join(" ")
}

fn row(v: &[String]) -> String {
    format!("({})", v.join(", "))
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::Finite => "finite",
        Kind::Affine => "affine",
        Kind::Indefinite => "indefinite",
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct FlatsReport {
    pub lines: usize,
    /// Every rank-2 flat.
    pub flats2: Vec<Vec<usize>>,
    /// Flats of multiplicity at least 3.
    pub multiple_points: Vec<Vec<usize>>,
}

impl FlatsReport {
    pub fn new(arr: &Arrangement) -> Self {
        FlatsReport { lines: arr.n(), flats2: flats_1(arr.flats2()), multiple_points: flats_1(arr.primes2()) }
    }
}

impl Report for FlatsReport {
    fn text(&self) -> String {
        let doubles = self.flats2.len() - self.multiple_points.len();
        let mut s = format!("lines: {}\nrank-2 flats: {} ({} double points)\n", self.lines, self.flats2.len(), doubles);
        let _ = writeln!(s, "multiple points: {}", self.multiple_points.len());
        for f in &self.multiple_points {
            let _ = writeln!(s, "  {}", set(f));
        }
        s
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct WeightReport {
    pub weight: Vec<String>,
    /// `X(a)`; `null` when no multiple point carries a sum-zero restriction.
    pub support: Option<Vec<Vec<usize>>>,
    /// `empty`, `escapes`, `indefinite` or `affine`.
    pub verdict: String,
    pub affine_blocks: Option<usize>,
    /// Basis of `Z(a)`.
    pub cocycles: Vec<Vec<String>>,
    pub h1: usize,
}

impl WeightReport {
    pub fn new(w: &Weight, x: Option<&[Flat]>, verdict: SupportVerdict, z: &Subspace) -> Self {
        let (name, blocks) = match verdict {
            SupportVerdict::Empty => ("empty", None),
            SupportVerdict::Escapes => ("escapes", None),
            SupportVerdict::Indefinite => ("indefinite", None),
            SupportVerdict::Affine { affine_blocks } => ("affine", Some(affine_blocks)),
        };
        WeightReport {
            weight: w.0.iter().map(format_rational).collect(),
            support: x.map(flats_1),
            verdict: name.into(),
            affine_blocks: blocks,
            cocycles: basis_strings(z),
            h1: z.dim() - 1,
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ResonanceReport {
    pub weights: Vec<WeightReport>,
}

impl Report for ResonanceReport {
    fn text(&self) -> String {
        let mut s = String::new();
        for (i, w) in self.weights.iter().enumerate() {
            let _ = writeln!(s, "weight {}: {}", i + 1, row(&w.weight));
            match &w.support {
                Some(x) => {
                    let _ = writeln!(s, "  X(a): {}", sets(x));
                }
                None => s.push_str("  X(a): none\n"),
            }
            match w.affine_blocks {
                Some(k) => {
                    let _ = writeln!(s, "  verdict: affine, {k} affine blocks");
                }
                None => {
                    let _ = writeln!(s, "  verdict: {}", w.verdict);
                }
            }
            let _ = writeln!(s, "  dim H1: {}", w.h1);
            for v in &w.cocycles {
                let _ = writeln!(s, "  Z(a) basis: {}", row(v));
            }
        }
        s
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ComponentReport {
    pub flats: Vec<Vec<usize>>,
    pub support: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
    pub affine_blocks: Vec<Vec<usize>>,
    pub dim: usize,
    pub basis: Vec<Vec<String>>,
    /// A point of the component off every other component.
    pub generic_point: Vec<String>,
}

impl ComponentReport {
    pub fn new(c: &ResonanceComponent, w: &Weight) -> Self {
        ComponentReport {
            flats: flats_1(&c.flats),
            support: one_based(&c.support),
            blocks: c.blocks.iter().map(|b| one_based(b)).collect(),
            affine_blocks: c.affine_blocks.iter().map(|b| one_based(b)).collect(),
            dim: c.dim(),
            basis: basis_strings(&c.basis),
            generic_point: w.0.iter().map(format_rational).collect(),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ComponentsReport {
    pub lines: usize,
    pub components: Vec<ComponentReport>,
}

impl Report for ComponentsReport {
    fn text(&self) -> String {
        let local = self.components.iter().filter(|c| c.flats.len() == 1).count();
        let mut s = format!("{} components ({} local)\n", self.components.len(), local);
        for (i, c) in self.components.iter().enumerate() {
            let _ = writeln!(s, "component {}: dim {}", i + 1, c.dim);
            let _ = writeln!(s, "  flats: {}", sets(&c.flats));
            let _ = writeln!(s, "  blocks: {}", sets(&c.blocks));
            let _ = writeln!(s, "  affine blocks: {}", sets(&c.affine_blocks));
            for v in &c.basis {
                let _ = writeln!(s, "  basis: {}", row(v));
            }
        }
        s
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum CertificateReport {
    Finite { pivots: Vec<String> },
    Affine { kernel: Vec<String> },
    Indefinite { witness: Vec<String>, value: String },
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct BlockReport {
    pub indices: Vec<usize>,
    pub kind: String,
    pub certificate: CertificateReport,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CartanReport {
    pub realizable: bool,
    pub reason: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct FullGraphCheck {
    pub n: usize,
    pub blocks: usize,
    pub maximal: bool,
    pub violations: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ClassifyReport {
    pub size: usize,
    pub blocks: Vec<BlockReport>,
    /// `affine` or `indefinite`.
    pub verdict: String,
    /// 1-based positions in `blocks`.
    pub affine_blocks: Vec<usize>,
    /// Present when there are at least three affine blocks with diagonal 2.
    pub cartan: Option<CartanReport>,
    /// Present when at least two affine blocks are full graphs.
    pub full_graph: Option<FullGraphCheck>,
}

impl ClassifyReport {
    pub fn new(
        b: &BlockMatrix,
        class: &CollectionClass,
        cartan: Option<&CartanVerdict>,
        full: Option<&FullGraphReport>,
    ) -> Self {
        let blocks = class
            .blocks
            .iter()
            .enumerate()
            .map(|(k, bc)| BlockReport {
                indices: one_based(&b.partition()[k]),
                kind: kind_name(bc.kind).into(),
                certificate: match &bc.certificate {
                    Certificate::Finite { pivots } => {
                        CertificateReport::Finite { pivots: pivots.iter().map(format_rational).collect() }
                    }
                    Certificate::Affine { kernel } => CertificateReport::Affine { kernel: big_strings(kernel) },
                    Certificate::Indefinite { witness, value } => {
                        CertificateReport::Indefinite { witness: big_strings(witness), value: value.to_string() }
                    }
                },
            })
            .collect();
        let verdict = match class.verdict {
            Verdict::AffineType { .. } => "affine",
            Verdict::IndefiniteType { .. } => "indefinite",
        };
        ClassifyReport {
            size: b.q().rows(),
            blocks,
            verdict: verdict.into(),
            affine_blocks: one_based(class.affine_blocks()),
            cartan: cartan.map(|c| CartanReport { realizable: c.realizable, reason: c.reason.clone() }),
            full_graph: full.map(|f| FullGraphCheck {
                n: f.n,
                blocks: f.blocks,
                maximal: f.maximal,
                violations: f.violations.clone(),
            }),
        }
    }
}

impl Report for ClassifyReport {
    fn text(&self) -> String {
        let mut s = String::new();
        for (i, b) in self.blocks.iter().enumerate() {
            let cert = match &b.certificate {
                CertificateReport::Finite { pivots } => format!("pivots {}", row(pivots)),
                CertificateReport::Affine { kernel } => format!("kernel {}", row(kernel)),
                CertificateReport::Indefinite { witness, value } => format!("witness {} gives {value}", row(witness)),
            };
            let _ = writeln!(s, "block {} {}: {}, {}", i + 1, set(&b.indices), b.kind, cert);
        }
        let _ = writeln!(s, "verdict: {} type, {} affine blocks", self.verdict, self.affine_blocks.len());
        if let Some(c) = &self.cartan {
            let word = if c.realizable { "realizable" } else { "unrealizable" };
            let _ = writeln!(s, "cartan case: {word} ({})", c.reason);
        }
        if let Some(f) = &self.full_graph {
            let status = if f.violations.is_empty() { "passes".to_string() } else { f.violations.join("; ") };
            let _ = writeln!(s, "full-graph check: n = {}, {} blocks, {status}", f.n, f.blocks);
        }
        s
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct LabelingsReport {
    pub vertices: usize,
    pub up_to_symmetry: bool,
    pub labelings: Vec<Vec<i64>>,
}

impl Report for LabelingsReport {
    fn text(&self) -> String {
        let qual = if self.up_to_symmetry { " up to symmetry" } else { "" };
        let mut s = format!("{} affine labelings{qual}\n", self.labelings.len());
        for m in &self.labelings {
            let _ = writeln!(s, "{}", m.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
        }
        s
    }
}

fn matrix_text(rows: &[Vec<u8>]) -> String {
    rows.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ") + "\n").collect()
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct RealizeReport {
    pub columns: usize,
    pub up_to_columns: bool,
    /// Each realization as its rows, in canonical (descending) order.
    pub realizations: Vec<Vec<Vec<u8>>>,
}

impl RealizeReport {
    pub fn new(columns: usize, up_to_columns: bool, list: &[Realization]) -> Self {
        RealizeReport { columns, up_to_columns, realizations: list.iter().map(|r| r.rows().to_vec()).collect() }
    }
}

impl Report for RealizeReport {
    fn text(&self) -> String {
        if self.realizations.is_empty() {
            return "no realizations\n".into();
        }
        let qual = if self.up_to_columns { " up to column symmetry" } else { "" };
        let mut s = format!("{} realizations{qual}\n", self.realizations.len());
        for (i, rows) in self.realizations.iter().enumerate() {
            let _ = writeln!(s, "realization {}: {} rows", i + 1, rows.len());
            s.push_str(&matrix_text(rows));
        }
        s
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct LatinReport {
    pub n: usize,
    pub blocks: usize,
    /// `perms[r][b]`: 1-based permutation of block `r + 2` on row group `b + 1`.
    pub perms: Option<Vec<Vec<Vec<usize>>>>,
    pub rows: Option<Vec<Vec<u8>>>,
    pub full_graph: Option<FullGraphCheck>,
}

impl LatinReport {
    pub fn none(n: usize, blocks: usize) -> Self {
        LatinReport { n, blocks, perms: None, rows: None, full_graph: None }
    }

    pub fn new(n: usize, blocks: usize, perms: &[Vec<Vec<usize>>], r: &Realization, f: &FullGraphReport) -> Self {
        LatinReport {
            n,
            blocks,
            perms: Some(perms.iter().map(|g| g.iter().map(|p| one_based(p)).collect()).collect()),
            rows: Some(r.rows().to_vec()),
            full_graph: Some(FullGraphCheck {
                n: f.n,
                blocks: f.blocks,
                maximal: f.maximal,
                violations: f.violations.clone(),
            }),
        }
    }
}

impl Report for LatinReport {
    fn text(&self) -> String {
        let (Some(perms), Some(rows)) = (&self.perms, &self.rows) else {
            return format!("no system of {} blocks for n = {}\n", self.blocks, self.n);
        };
        let mut s = format!("n = {}, {} blocks, {} rows\n", self.n, self.blocks, rows.len());
        for (r, g) in perms.iter().enumerate() {
            let groups: Vec<String> =
                g.iter().map(|p| p.iter().map(ToString::to_string).collect::<Vec<_>>().join("")).collect();
            let _ = writeln!(s, "block {}: {}", r + 2, groups.join(" "));
        }
        s.push_str(&matrix_text(rows));
        if let Some(f) = &self.full_graph {
            let status = if f.violations.is_empty() { "passes".to_string() } else { f.violations.join("; ") };
            let _ = writeln!(s, "full-graph check: {status}");
        }
        s
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct KForNReport {
    pub n: u64,
    pub k_max: u64,
    /// Same bound from the uncorrected fiber formula; `null` when it gives none.
    pub k_max_printed_formula: Option<u64>,
    /// Whether the Euler characteristics can be equal.
    pub equality: bool,
}

impl Report for KForNReport {
    fn text(&self) -> String {
        let printed = self.k_max_printed_formula.map_or("none".to_string(), |k| k.to_string());
        format!(
            "n = {}: k <= {}\nuncorrected formula: {printed}\nequality possible: {}\n",
            self.n,
            self.k_max,
            if self.equality { "yes" } else { "no" }
        )
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct RootReport {
    pub exact: bool,
    pub lower: String,
    pub upper: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct FBoundReport {
    pub r: u64,
    pub k: u64,
    /// `[a, b, c]` of `a d² + b d + c`.
    pub coeffs: Vec<String>,
    pub root: Option<RootReport>,
    /// Largest feasible degree when the feasible set is bounded.
    pub feasible_up_to: Option<u64>,
    /// Excluded degrees when the feasible set is unbounded.
    pub feasible_all_except: Option<Vec<u64>>,
    pub line_bound: Option<u64>,
}

impl FBoundReport {
    pub fn new(f: &FBound) -> Self {
        let (up_to, except) = match &f.feasible {
            Feasible::UpTo(m) => (Some(*m), None),
            Feasible::AllExcept(v) => (None, Some(v.clone())),
        };
        FBoundReport {
            r: f.r,
            k: f.k,
            coeffs: f.coeffs.iter().map(format_rational).collect(),
            root: f.root.as_ref().map(|root| RootReport {
                exact: matches!(root, Root::Exact(_)),
                lower: format_rational(root.lower()),
                upper: format_rational(root.upper()),
            }),
            feasible_up_to: up_to,
            feasible_all_except: except,
            line_bound: f.line_bound,
        }
    }
}

impl Report for FBoundReport {
    fn text(&self) -> String {
        let [a, b, c] = [&self.coeffs[0], &self.coeffs[1], &self.coeffs[2]];
        let mut s = format!("r = {}, k = {}\nE2 - E1 = ({a}) d^2 + ({b}) d + ({c})\n", self.r, self.k);
        match &self.root {
            Some(r) if r.exact => {
                let _ = writeln!(s, "root: {}", r.lower);
            }
            Some(r) => {
                let approx =
                    resonance_core::io::parse_rational(&r.lower, 0).ok().and_then(|x| x.to_f64()).unwrap_or(f64::NAN);
                let _ = writeln!(s, "root in ({}, {}), about {approx:.6}", r.lower, r.upper);
            }
            None => s.push_str("root: none\n"),
        }
        if let Some(m) = self.feasible_up_to {
            let _ = writeln!(s, "feasible degrees: 1..={m}");
        }
        if let Some(ex) = &self.feasible_all_except {
            let ex: Vec<String> = ex.iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "feasible degrees: all except [{}]", ex.join(", "));
        }
        if let Some(l) = self.line_bound {
            let _ = writeln!(s, "line bound: {l}");
        }
        s
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub component: usize,
    pub flats: Vec<Vec<usize>>,
    pub blocks: usize,
    pub affine_blocks: usize,
    pub block_sizes: Vec<usize>,
    pub uniform: Option<usize>,
    pub k_budget: Option<u64>,
    pub consistent: bool,
    pub tight: bool,
    pub affine_psd: bool,
    /// The blow-up intersection form equals `-Q`.
    pub form_is_minus_q: bool,
}

impl CheckReport {
    pub fn new(index: usize, c: &ResonanceComponent, f: &FiberReport, agrees: bool) -> Self {
        CheckReport {
            component: index,
            flats: flats_1(&c.flats),
            blocks: f.blocks,
            affine_blocks: f.affine_blocks,
            block_sizes: f.block_sizes.clone(),
            uniform: f.uniform,
            k_budget: f.k_budget,
            consistent: f.consistent,
            tight: f.tight,
            affine_psd: f.affine_psd,
            form_is_minus_q: agrees,
        }
    }
}

impl Report for CheckReport {
    fn text(&self) -> String {
        let opt = |x: Option<String>| x.unwrap_or_else(|| "none".into());
        let sizes: Vec<String> = self.block_sizes.iter().map(ToString::to_string).collect();
        format!(
            "component {}: {}\nblocks: {} ({} affine), sizes [{}]\nuniform affine size: {}\nfiber budget: {}\nconsistent: {}\ntight: {}\naffine blocks semidefinite: {}\nblow-up form = -Q: {}\n",
            self.component,
            sets(&self.flats),
            self.blocks,
            self.affine_blocks,
            sizes.join(", "),
            opt(self.uniform.map(|u| u.to_string())),
            opt(self.k_budget.map(|k| k.to_string())),
            self.consistent,
            self.tight,
            self.affine_psd,
            self.form_is_minus_q
        )
    }
}
