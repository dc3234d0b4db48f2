//! The `resonance` command line. [`run`] parses arguments, dispatches to
//! `resonance-core` and writes either text or JSON (see [`report`]).

pub mod report;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use report::*;
use resonance_core::incidence::{generate, Arrangement, Family};
use resonance_core::io;
use resonance_core::labelings::{enumerate_affine_labelings_with, up_to_symmetry};
use resonance_core::par::Mode;
use resonance_core::pencils::{
    block_fiber_consistency, blowup_intersection_matrix, equality_case, euler_feasible_k, f_bound, max_feasible_k,
    FiberEuler,
};
use resonance_core::qforms::BlockMatrix;
use resonance_core::realizer::{
    cartan_case_classify, full_graph_theorem_check, perms_from_latin_squares, realization_from_latin_squares,
    realize_up_to_columns, realize_with, search_latin_systems, RealizeOptions,
};
use resonance_core::resonance::{
    cocycle_space_via_q, enumerate_components_with, generic_weight, support_flats, EnumerateOptions,
};
use resonance_core::vinberg::classify_collection_with;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "resonance", version, about = "Exact first resonance varieties of line arrangements")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized steps (generic points on components).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Node budget for backtracking searches.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Run data-parallel kernels on this many threads (0 = all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank-2 flats and multiple points.
    Flats { arrangement: PathBuf },
    /// X(a), block verdict and dim H¹ for each weight in a file.
    Resonance {
        arrangement: PathBuf,
        #[arg(long)]
        weights: PathBuf,
    },
    /// All irreducible components of R₁.
    Components {
        arrangement: PathBuf,
        /// Refuse arrangements with more multiple points than this.
        #[arg(long, default_value_t = 24)]
        max_flats: usize,
    },
    /// Block types of a symmetric matrix.
    Classify {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Affine labelings of a graph.
    Labelings {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        up_to_symmetry: bool,
    },
    /// 0-1 realizations J of Q = JᵗJ - E.
    Realize {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
        /// One realization per class under column symmetries of Q.
        #[arg(long)]
        up_to_columns: bool,
    },
    /// Realization built from Latin squares.
    Latin {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count_blocks: usize,
        /// Latin squares to use instead of searching.
        #[arg(long)]
        squares: Option<PathBuf>,
    },
    /// Pencil bounds.
    Bounds(BoundsArgs),
    /// Write an arrangement file for a named family.
    Generate {
        #[arg(value_parser = ["braid", "monomial", "hessian", "dual-hessian", "latin"])]
        family: String,
        /// Exponent for `monomial`.
        #[arg(long)]
        r: Option<usize>,
        /// Square order for `latin`.
        #[arg(long)]
        n: Option<usize>,
        /// Number of blocks for `latin`.
        #[arg(long)]
        count_blocks: Option<usize>,
        /// Latin squares for `latin`.
        #[arg(long)]
        squares: Option<PathBuf>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct BoundsArgs {
    /// Largest number of fibers allowed by the Euler characteristic.
    #[arg(long, value_name = "N")]
    k_for_n: Option<u64>,
    /// Root of the degree bound for r and k.
    #[arg(long, num_args = 2, value_names = ["R", "K"])]
    f: Option<Vec<u64>>,
    /// Fiber consistency of a component: arrangement file and 1-based index.
    #[arg(long, num_args = 2, value_names = ["ARRANGEMENT", "INDEX"])]
    check: Option<Vec<String>>,
}

#[derive(Debug)]
enum Failure {
    Domain(String),
    Usage(String),
}

impl From<resonance_core::Error> for Failure {
    fn from(e: resonance_core::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Runs the command line; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return 2;
            }
            let _ = write!(out, "{text}");
            return 0;
        }
    };
    let mode = configure_threads(cli.global.threads);
    let ctx = Ctx { json: cli.global.json, seed: cli.global.seed, budget: cli.global.budget, mode };
    match dispatch(&ctx, cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            2
        }
    }
}

fn configure_threads(threads: Option<usize>) -> Mode {
    let Some(t) = threads else {
        return Mode::Sequential;
    };
    #[cfg(feature = "parallel")]
    {
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
        if t == 1 {
            Mode::Sequential
        } else {
            Mode::Parallel
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = t;
        Mode::Sequential
    }
}

struct Ctx {
    json: bool,
    seed: u64,
    budget: Option<u64>,
    mode: Mode,
}

impl Ctx {
    fn emit<R: Report>(&self, out: &mut dyn Write, r: &R) -> Outcome {
        let text = if self.json { r.json() } else { r.text() };
        out.write_all(text.as_bytes()).map_err(|e| Failure::Domain(format!("cannot write output: {e}")))
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

/// Reads and parses a file, prefixing errors with its path.
fn load<T>(path: &Path, parse: impl FnOnce(&str) -> resonance_core::Result<T>) -> Result<T, Failure> {
    let text = read(path)?;
    parse(&text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn dispatch(ctx: &Ctx, command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Flats { arrangement } => {
            let arr = load(&arrangement, io::parse_arrangement)?;
            ctx.emit(out, &FlatsReport::new(&arr))
        }
        Command::Resonance { arrangement, weights } => {
            let arr = load(&arrangement, io::parse_arrangement)?;
            let ws = load(&weights, io::parse_weights)?;
            let mut reports = Vec::with_capacity(ws.len());
            for w in &ws {
                let x = support_flats(&arr, w)?;
                let (z, verdict) = cocycle_space_via_q(&arr, w)?;
                reports.push(WeightReport::new(w, x.as_ref().map(|c| c.flats()), verdict, &z));
            }
            ctx.emit(out, &ResonanceReport { weights: reports })
        }
        Command::Components { arrangement, max_flats } => {
            let arr = load(&arrangement, io::parse_arrangement)?;
            let opts = EnumerateOptions { max_flats, mode: ctx.mode, seed: ctx.seed };
            let comps = enumerate_components_with(&arr, &opts)?;
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
            let mut reports = Vec::with_capacity(comps.len());
            for c in &comps {
                let w = generic_weight(c, &mut rng)?;
                reports.push(ComponentReport::new(c, &w));
            }
            ctx.emit(out, &ComponentsReport { lines: arr.n(), components: reports })
        }
        Command::Classify { matrix } => {
            let q = load(&matrix, io::parse_matrix)?;
            let b = BlockMatrix::from_matrix(q.clone())?;
            let class = classify_collection_with(&b, ctx.mode)?;
            let cartan = cartan_case_classify(&q).ok();
            let full_graph = full_graph_theorem_check(&q).ok();
            ctx.emit(out, &ClassifyReport::new(&b, &class, cartan.as_ref(), full_graph.as_ref()))
        }
        Command::Labelings { graph, up_to_symmetry: sym } => {
            let g = load(&graph, io::parse_graph)?;
            let mut list = enumerate_affine_labelings_with(&g, ctx.mode)?;
            if sym {
                list = up_to_symmetry(&g, &list);
            }
            ctx.emit(out, &LabelingsReport { vertices: g.n(), up_to_symmetry: sym, labelings: list })
        }
        Command::Realize { matrix, limit, up_to_columns } => {
            let q = load(&matrix, io::parse_matrix)?;
            let mut opts = RealizeOptions { limit, mode: ctx.mode, ..Default::default() };
            if let Some(b) = ctx.budget {
                opts.budget = b;
            }
            let list = if up_to_columns { realize_up_to_columns(&q, &opts)? } else { realize_with(&q, &opts)? };
            ctx.emit(out, &RealizeReport::new(q.rows(), up_to_columns, &list))
        }
        Command::Latin { n, count_blocks, squares } => {
            let perms = match squares {
                Some(path) => {
                    let (m, sq) = load(&path, io::parse_latin_squares)?;
                    if m != n {
                        return Err(Failure::Domain(format!("squares have order {m}, --n is {n}")));
                    }
                    if sq.len() + 2 != count_blocks {
                        return Err(Failure::Domain(format!(
                            "{} squares give {} blocks, --count-blocks is {count_blocks}",
                            sq.len(),
                            sq.len() + 2
                        )));
                    }
                    perms_from_latin_squares(n, &sq)?
                }
                None => match search_latin_systems(n, count_blocks, Some(1))?.into_iter().next() {
                    Some(p) => p,
                    None => {
                        return ctx.emit(out, &LatinReport::none(n, count_blocks));
                    }
                },
            };
            let r = realization_from_latin_squares(n, &perms)?;
            let check = full_graph_theorem_check(&r.q())?;
            ctx.emit(out, &LatinReport::new(n, count_blocks, &perms, &r, &check))
        }
        Command::Bounds(b) => bounds(ctx, b, out),
        Command::Generate { family, r, n, count_blocks, squares, output } => {
            let fam = match family.as_str() {
                "braid" => Family::Braid,
                "monomial" => Family::Monomial(r.ok_or_else(|| Failure::Usage("monomial needs --r".into()))?),
                "hessian" => Family::Hessian,
                "dual-hessian" => Family::DualHessian,
                _ => {
                    let n = n.ok_or_else(|| Failure::Usage("latin needs --n".into()))?;
                    let perms = match (squares, count_blocks) {
                        (Some(path), _) => {
                            let (m, sq) = load(&path, io::parse_latin_squares)?;
                            if m != n {
                                return Err(Failure::Domain(format!("squares have order {m}, --n is {n}")));
                            }
                            perms_from_latin_squares(n, &sq)?
                        }
                        (None, Some(ell)) => search_latin_systems(n, ell, Some(1))?
                            .into_iter()
                            .next()
                            .ok_or_else(|| Failure::Domain(format!("no Latin system with {ell} blocks for n = {n}")))?,
                        (None, None) => return Err(Failure::Usage("latin needs --squares or --count-blocks".into())),
                    };
                    Family::Latin { n, perms }
                }
            };
            let arr = generate(&fam)?;
            let text = io::write_arrangement(&arr);
            match output {
                Some(path) => {
                    std::fs::write(&path, text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
                }
                None => {
                    out.write_all(text.as_bytes()).map_err(|e| Failure::Domain(format!("cannot write output: {e}")))
                }
            }
        }
    }
}

fn bounds(ctx: &Ctx, b: BoundsArgs, out: &mut dyn Write) -> Outcome {
    if let Some(n) = b.k_for_n {
        let report = KForNReport {
            n,
            k_max: euler_feasible_k(n)?,
            k_max_printed_formula: max_feasible_k(n, FiberEuler::Printed)?,
            equality: equality_case(n)?,
        };
        return ctx.emit(out, &report);
    }
    if let Some(rk) = b.f {
        return ctx.emit(out, &FBoundReport::new(&f_bound(rk[0], rk[1])?));
    }
    let check = b.check.expect("clap enforces one of the bound modes");
    let arr: Arrangement = load(Path::new(&check[0]), io::parse_arrangement)?;
    let index: usize = check[1]
        .parse()
        .ok()
        .filter(|&i| i >= 1)
        .ok_or_else(|| Failure::Usage(format!("component index must be a positive integer, got `{}`", check[1])))?;
    let opts = EnumerateOptions { mode: ctx.mode, seed: ctx.seed, ..Default::default() };
    let comps = enumerate_components_with(&arr, &opts)?;
    let c = comps
        .get(index - 1)
        .ok_or_else(|| Failure::Domain(format!("component {index} requested, arrangement has {}", comps.len())))?;
    let fiber = block_fiber_consistency(&arr, c)?;
    let form = blowup_intersection_matrix(&arr, &c.flats)?;
    ctx.emit(out, &CheckReport::new(index, c, &fiber, form.agrees()))
}
