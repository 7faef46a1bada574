use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cliquegap::cliquesolver::{self, DenseGraph, SolveOptions, DEFAULT_BUDGET};
use cliquegap::gf::PrimeField;
use cliquegap::graphio::{self, attach_labels, LabelMode};
use cliquegap::harness::{self, GeneratorSpec, InstanceKind, Suite};
use cliquegap::product::hprod::parse_hprod;
use cliquegap::product::{gap_experiment, GapOptions, ProductGraph, Variant, DEFAULT_NODE_BUDGET};
use cliquegap::sidon::{self, CandidateOrder};

#[derive(Parser)]
#[command(name = "cliquegap", version, about = "Gap-producing reduction for multi-colored k-Clique")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Adaptive,
    Guaranteed,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Basic,
    Improved,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Basic => Variant::Basic,
            VariantArg::Improved => Variant::Improved,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    PlantedYes,
    NoInstance,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Build a t-term linearly independent set and print it as JSON.
    Sidon {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        t: usize,
        /// Fixed dimension.
        #[arg(long, conflicts_with = "adaptive")]
        d: Option<usize>,
        /// Search for the smallest dimension that works (default without --d).
        #[arg(long)]
        adaptive: bool,
        /// Seed for the candidate order; lexicographic when absent.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Label an mccq instance and build the product graph.
    Reduce {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long, value_enum, default_value = "adaptive")]
        mode: Mode,
        /// Write the explicit graph in hprod format.
        #[arg(long, requires = "out")]
        materialize: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest node count to materialize.
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Exact maximum clique of an hprod, mccq or DIMACS graph.
    Solve {
        #[arg(long)]
        input: PathBuf,
        /// Only decide whether a clique larger than this exists.
        #[arg(long)]
        bound: Option<usize>,
        /// Largest vertex count to search.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Reduce one instance, solve it exactly and report the gap checks.
    Gap {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long, value_enum, default_value = "adaptive")]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Run an experiment suite; exits nonzero unless every check passes.
    Verify {
        #[arg(long)]
        suite: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate a multi-colored instance in mccq format.
    Generate {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        edge_prob: f64,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn field(q: u32) -> Result<PrimeField> {
    PrimeField::new(q).with_context(|| format!("--q {q}"))
}

fn label_mode(mode: Mode) -> LabelMode {
    match mode {
        Mode::Adaptive => LabelMode::Adaptive,
        Mode::Guaranteed => LabelMode::Guaranteed,
    }
}

fn order(seed: Option<u64>) -> CandidateOrder {
    seed.map_or(CandidateOrder::Lexicographic, CandidateOrder::Seeded)
}

fn print(v: &Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn sidon_cmd(n: usize, q: u32, t: usize, d: Option<usize>, seed: Option<u64>) -> Result<()> {
    let f = field(q)?;
    let c = match d {
        Some(d) => sidon::greedy_construct(n, f, t, d, order(seed))?,
        None => sidon::adaptive_construct(n, f, t, order(seed))?,
    };
    let vs = c.set.vectors();
    let independent = sidon::verify_t_independent(vs, t)?.holds();
    let sidon_ok = if t >= 4 { Some(sidon::is_linear_sidon(vs)?.is_none()) } else { None };
    print(&json!({
        "n": n,
        "q": q,
        "t": t,
        "d": c.set.dim(),
        "vectors": vs.iter().map(|v| v.to_digit_string()).collect::<Vec<_>>(),
        "certificate": {
            "t_independent": independent,
            "linear_sidon": sidon_ok,
            "candidates": c.stats.candidates,
            "span_tests": c.stats.span_tests,
        },
    }))
}

#[allow(clippy::too_many_arguments)]
fn reduce_cmd(
    input: &Path,
    q: u32,
    variant: Variant,
    mode: Mode,
    materialize: bool,
    out: Option<&Path>,
    budget: u64,
    seed: Option<u64>,
) -> Result<()> {
    let start = Instant::now();
    let g = graphio::parse_mccq(&read(input)?).with_context(|| format!("parsing {}", input.display()))?;
    let lg = attach_labels(g, field(q)?, variant.required_arity(), label_mode(mode), order(seed))?;
    let p = ProductGraph::new(lg, variant)?;
    let mut summary = json!({
        "instance": input.display().to_string(),
        "q": q,
        "k": p.k(),
        "n": p.labeled().graph().n(),
        "d": p.d(),
        "variant": variant,
        "nodes": p.node_count().to_string(),
        "labels": p.labeled().labels().iter().map(|v| v.to_digit_string()).collect::<Vec<_>>(),
    });
    if materialize {
        let h = p.materialize(budget)?;
        let out = out.expect("clap enforces --out");
        write(out, &h.to_hprod())?;
        summary["edges"] = json!(h.graph.edge_count());
        summary["out"] = json!(out.display().to_string());
    }
    summary["runtime_ms"] = json!(ms(start));
    print(&summary)
}

fn solve_cmd(input: &Path, bound: Option<usize>, budget: usize) -> Result<()> {
    let text = read(input)?;
    let header = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with("c "))
        .unwrap_or("");
    let g: DenseGraph = match header.split_whitespace().nth(1) {
        Some("hprod") => parse_hprod(&text)?.graph,
        Some("mccq") => {
            let g = graphio::parse_mccq(&text)?;
            DenseGraph::from_edges(g.n(), g.edges().iter().copied())?
        }
        Some("edge" | "col") => {
            let g = graphio::parse_dimacs(&text)?;
            DenseGraph::from_edges(g.n, g.edges.iter().copied())?
        }
        _ => bail!("{}: unrecognized header {header:?}", input.display()),
    };
    let start = Instant::now();
    let one_based = |w: &[usize]| w.iter().map(|v| v + 1).collect::<Vec<_>>();
    match bound {
        Some(b) => {
            let d = cliquesolver::exceeds(&g, b, budget)?;
            print(&json!({
                "bound": b,
                "exceeds": d.exceeds,
                "witness": one_based(&d.witness),
                "nodes_expanded": d.nodes_expanded,
                "runtime_ms": ms(start),
            }))
        }
        None => {
            let r = cliquesolver::max_clique(&g, SolveOptions { ub_hint: None, budget })?;
            print(&json!({
                "omega": r.size,
                "witness": one_based(&r.witness),
                "nodes_expanded": r.nodes_expanded,
                "runtime_ms": ms(start),
            }))
        }
    }
}

fn gap_cmd(input: &Path, q: u32, variant: Variant, mode: Mode, budget: u64) -> Result<bool> {
    let g = graphio::parse_mccq(&read(input)?).with_context(|| format!("parsing {}", input.display()))?;
    let opts = GapOptions {
        mode: label_mode(mode),
        order: CandidateOrder::Lexicographic,
        node_budget: budget,
    };
    let r = gap_experiment(&input.display().to_string(), &g, field(q)?, variant, opts)?;
    print(&serde_json::to_value(&r)?)?;
    Ok(r.passed())
}

fn verify_cmd(suite_path: &Path, out: &Path) -> Result<bool> {
    let suite = Suite::from_json(&read(suite_path)?).with_context(|| format!("loading {}", suite_path.display()))?;
    let base = suite_path.parent().unwrap_or(Path::new("."));
    let report = harness::run_suite(&suite, base)?;
    write(out, &serde_json::to_string_pretty(&report)?)?;
    let s = &report.summary;
    eprintln!(
        "{} experiments, {} errors; completeness {}/{}; soundness {}/{}; gap ratio >= q on {}/{} pairs",
        s.total, s.errors, s.r1_passed, s.r1_checked, s.r2_passed, s.r2_checked, s.ratios_at_least_q, s.ratios_checked
    );
    if let Some(slope) = report.timing_slope {
        eprintln!("reduction time log-log slope {slope:.2}");
    }
    Ok(report.all_passed())
}

fn generate_cmd(kind: KindArg, n: usize, k: usize, seed: u64, edge_prob: f64, out: Option<&Path>) -> Result<()> {
    let kind = match kind {
        KindArg::PlantedYes => InstanceKind::PlantedYes,
        KindArg::NoInstance => InstanceKind::NoInstance,
        KindArg::Random => InstanceKind::Random,
    };
    let g = harness::generate_instance(&GeneratorSpec { kind, n, k, seed, edge_prob })?;
    match out {
        Some(path) => write(path, &g.to_mccq()),
        None => {
            print!("{}", g.to_mccq());
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Sidon { n, q, t, d, adaptive: _, seed } => sidon_cmd(n, q, t, d, seed).map(|_| true),
        Command::Reduce {
            input,
            q,
            variant,
            mode,
            materialize,
            out,
            budget,
            seed,
        } => reduce_cmd(&input, q, variant.into(), mode, materialize, out.as_deref(), budget, seed).map(|_| true),
        Command::Solve { input, bound, budget } => solve_cmd(&input, bound, budget).map(|_| true),
        Command::Gap {
            input,
            q,
            variant,
            mode,
            budget,
        } => gap_cmd(&input, q, variant.into(), mode, budget),
        Command::Verify { suite, out } => verify_cmd(&suite, &out),
        Command::Generate {
            kind,
            n,
            k,
            seed,
            edge_prob,
            out,
        } => generate_cmd(kind, n, k, seed, edge_prob, out.as_deref()).map(|_| true),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
