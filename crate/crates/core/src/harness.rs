//! Instance generators and experiment suites.
//!
//! A suite is a JSON document listing explicit experiments, generated
//! families and an optional timing sweep:
//!
//! ```json
//! {
//!   "experiments": [
//!     {"name": "tri", "source": {"type": "file", "path": "tri.mccq"}, "q": 2, "variant": "improved"}
//!   ],
//!   "families": [
//!     {"name": "small", "kinds": ["planted-yes", "no-instance"], "n": [4, 5], "k": [3],
//!      "q": [2], "variants": ["basic", "improved"], "count": 3, "seed": 1}
//!   ],
//!   "timing": {"n": [4, 8, 16], "q": 2, "k": [2, 3, 4], "variant": "basic", "repeats": 3, "seed": 7}
//! }
//! ```
//!
//! Results depend only on the suite and its seeds, apart from timings.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::PrimeField;
use crate::graphio::{self, attach_labels, ColoredGraph, GraphError, LabelMode};
use crate::product::{gap_experiment, GapOptions, GapReport, ProductError, ProductGraph, Variant, DEFAULT_NODE_BUDGET};
use crate::sidon::CandidateOrder;

/// No-instance generation gives up after this many rejected samples.
pub const NO_INSTANCE_RETRIES: usize = 1024;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error("no {k}-clique-free instance on {n} vertices found in {attempts} attempts")]
    Exhausted { n: usize, k: usize, attempts: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceKind {
    /// A random instance with a multi-colored k-clique planted in it.
    PlantedYes,
    /// A random instance rejected until it has no multi-colored k-clique.
    NoInstance,
    /// A random instance, unconditioned.
    Random,
}

fn default_edge_prob() -> f64 {
    0.5
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub kind: InstanceKind,
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    /// Probability of each edge between different colors.
    #[serde(default = "default_edge_prob")]
    pub edge_prob: f64,
}

/// Vertex `v` gets color `v mod k + 1`, so every class is nonempty.
fn random_graph(n: usize, k: usize, p: f64, rng: &mut ChaCha8Rng, planted: &[usize]) -> Result<ColoredGraph, GraphError> {
    let colors: Vec<usize> = (0..n).map(|v| v % k + 1).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if colors[u] == colors[v] {
                continue;
            }
            let forced = planted.contains(&u) && planted.contains(&v);
            // draw even when forced so the stream does not depend on the plant
            let coin = rng.gen_bool(p);
            if forced || coin {
                edges.push((u, v));
            }
        }
    }
    ColoredGraph::new(k, colors, edges)
}

/// Generates a multi-colored instance on `n` vertices with `k` colors.
pub fn generate_instance(spec: &GeneratorSpec) -> Result<ColoredGraph, HarnessError> {
    let GeneratorSpec { kind, n, k, seed, edge_prob } = *spec;
    if k == 0 || k > n {
        return Err(HarnessError::Config(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
    }
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(HarnessError::Config(format!("edge probability {edge_prob} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        InstanceKind::Random => Ok(random_graph(n, k, edge_prob, &mut rng, &[])?),
        InstanceKind::PlantedYes => {
            let plant: Vec<usize> = (0..k)
                .map(|i| {
                    let class_size = (n - i).div_ceil(k);
                    i + k * rng.gen_range(0..class_size)
                })
                .collect();
            Ok(random_graph(n, k, edge_prob, &mut rng, &plant)?)
        }
        InstanceKind::NoInstance => {
            let mut p = edge_prob;
            for attempt in 0..NO_INSTANCE_RETRIES {
                if attempt > 0 && attempt % 64 == 0 {
                    p /= 2.0;
                }
                let g = random_graph(n, k, p, &mut rng, &[])?;
                if graphio::has_k_clique(&g).is_none() {
                    return Ok(g);
                }
            }
            Err(HarnessError::Exhausted {
                n,
                k,
                attempts: NO_INSTANCE_RETRIES,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFormat {
    #[default]
    Mccq,
    /// Plain graph, colored by the standard k-fold blow-up.
    Dimacs,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum InstanceSource {
    File {
        path: String,
        #[serde(default)]
        format: GraphFormat,
        /// Clique size for DIMACS input.
        #[serde(default)]
        k: Option<usize>,
    },
    Generator(GeneratorSpec),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeName {
    #[default]
    Adaptive,
    Guaranteed,
    Fixed,
}

fn default_node_budget() -> u64 {
    DEFAULT_NODE_BUDGET
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    pub source: InstanceSource,
    pub q: u32,
    pub variant: Variant,
    #[serde(default)]
    pub mode: ModeName,
    /// Label dimension; required with mode `fixed` and rejected otherwise.
    #[serde(default)]
    pub dim: Option<usize>,
    /// Seed for the candidate order; lexicographic when absent.
    #[serde(default)]
    pub order_seed: Option<u64>,
    #[serde(default = "default_node_budget")]
    pub node_budget: u64,
}

impl ExperimentConfig {
    pub fn field(&self) -> Result<PrimeField, HarnessError> {
        PrimeField::new(self.q).map_err(|e| HarnessError::Config(format!("{}: {e}", self.name)))
    }

    pub fn label_mode(&self) -> Result<LabelMode, HarnessError> {
        match (self.mode, self.dim) {
            (ModeName::Adaptive, None) => Ok(LabelMode::Adaptive),
            (ModeName::Guaranteed, None) => Ok(LabelMode::Guaranteed),
            (ModeName::Fixed, Some(d)) if d > 0 => Ok(LabelMode::Fixed(d)),
            (ModeName::Fixed, _) => Err(HarnessError::Config(format!("{}: mode fixed needs a positive dim", self.name))),
            (_, Some(_)) => Err(HarnessError::Config(format!("{}: dim is only valid with mode fixed", self.name))),
        }
    }

    pub fn order(&self) -> CandidateOrder {
        self.order_seed.map_or(CandidateOrder::Lexicographic, CandidateOrder::Seeded)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        self.field()?;
        self.label_mode()?;
        Ok(())
    }

    /// Loads or generates the instance; file paths are relative to `base`.
    pub fn instance(&self, base: &Path) -> Result<ColoredGraph, HarnessError> {
        match &self.source {
            InstanceSource::Generator(spec) => generate_instance(spec),
            InstanceSource::File { path, format, k } => {
                let full = base.join(path);
                let text = std::fs::read_to_string(&full).map_err(|e| HarnessError::Io {
                    path: full.display().to_string(),
                    msg: e.to_string(),
                })?;
                match (format, k) {
                    (GraphFormat::Mccq, None) => Ok(graphio::parse_mccq(&text)?),
                    (GraphFormat::Dimacs, Some(k)) => Ok(graphio::multicolor_preprocess(&graphio::parse_dimacs(&text)?, *k)?),
                    (GraphFormat::Mccq, Some(_)) => Err(HarnessError::Config(format!("{}: k is read from the mccq header", self.name))),
                    (GraphFormat::Dimacs, None) => Err(HarnessError::Config(format!("{}: dimacs input needs k", self.name))),
                }
            }
        }
    }
}

fn one() -> usize {
    1
}

/// A grid of generated experiments: every combination of kind, `n`, `k`,
/// `q` and variant, `count` times. Instance `i` at a given `(kind, n, k)`
/// is the same graph for every `q` and variant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Family {
    pub name: String,
    pub kinds: Vec<InstanceKind>,
    pub n: Vec<usize>,
    pub k: Vec<usize>,
    pub q: Vec<u32>,
    pub variants: Vec<Variant>,
    #[serde(default = "one")]
    pub count: usize,
    pub seed: u64,
    #[serde(default = "default_edge_prob")]
    pub edge_prob: f64,
    #[serde(default = "default_node_budget")]
    pub node_budget: u64,
}

fn mix(mut x: u64) -> u64 {
    // splitmix64 finalizer
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

impl Family {
    pub fn expand(&self) -> Vec<ExperimentConfig> {
        let mut out = Vec::new();
        for &kind in &self.kinds {
            for &n in &self.n {
                for &k in self.k.iter().filter(|&&k| k <= n) {
                    for i in 0..self.count {
                        let seed = mix(self.seed ^ mix(kind as u64 ^ mix(n as u64 ^ mix(k as u64 ^ mix(i as u64)))));
                        let spec = GeneratorSpec {
                            kind,
                            n,
                            k,
                            seed,
                            edge_prob: self.edge_prob,
                        };
                        for &q in &self.q {
                            for &variant in &self.variants {
                                let tag = serde_json::to_value(kind).unwrap();
                                out.push(ExperimentConfig {
                                    name: format!("{}/{}/n{n}-k{k}-{i}/q{q}-{variant}", self.name, tag.as_str().unwrap()),
                                    source: InstanceSource::Generator(spec.clone()),
                                    q,
                                    variant,
                                    mode: ModeName::Adaptive,
                                    dim: None,
                                    order_seed: None,
                                    node_budget: self.node_budget,
                                });
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Reduction timings over a grid of `(n, k)` at a fixed `q`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimingConfig {
    pub n: Vec<usize>,
    pub q: u32,
    pub k: Vec<usize>,
    pub variant: Variant,
    #[serde(default = "one")]
    pub repeats: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Suite {
    #[serde(default)]
    pub experiments: Vec<ExperimentConfig>,
    #[serde(default)]
    pub families: Vec<Family>,
    #[serde(default)]
    pub timing: Option<TimingConfig>,
}

impl Suite {
    pub fn from_json(text: &str) -> Result<Self, HarnessError> {
        let suite: Suite = serde_json::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        for e in suite.all_experiments() {
            e.validate()?;
        }
        if let Some(t) = &suite.timing {
            PrimeField::new(t.q).map_err(|e| HarnessError::Config(format!("timing: {e}")))?;
            if t.repeats == 0 {
                return Err(HarnessError::Config("timing: repeats must be positive".into()));
            }
        }
        Ok(suite)
    }

    /// Explicit experiments followed by expanded families, in file order.
    pub fn all_experiments(&self) -> Vec<ExperimentConfig> {
        let mut all = self.experiments.clone();
        all.extend(self.families.iter().flat_map(Family::expand));
        all
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentOutcome {
    pub name: String,
    pub kind: Option<InstanceKind>,
    pub report: Option<GapReport>,
    pub error: Option<String>,
}

/// One matched Yes/No pair at equal `(n, k, q, variant)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapRatio {
    pub yes: String,
    pub no: String,
    pub q: u32,
    pub omega_yes: usize,
    pub omega_no: usize,
    /// `omega_yes / max(omega_no, 1)`.
    pub ratio: f64,
    pub at_least_q: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingPoint {
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub d: usize,
    /// `n + q^k`.
    pub size: u64,
    pub h_nodes: u64,
    /// Median over the repeats of labeling plus materialization.
    pub reduce_ms: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub errors: usize,
    pub r1_checked: usize,
    pub r1_passed: usize,
    pub r2_checked: usize,
    pub r2_passed: usize,
    pub ratios_checked: usize,
    pub ratios_at_least_q: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub experiments: Vec<ExperimentOutcome>,
    pub summary: Summary,
    pub gap_ratios: Vec<GapRatio>,
    pub timing: Vec<TimingPoint>,
    /// Least-squares slope of `ln reduce_ms` against `ln size`. A
    /// qualitative trend indicator, not an asymptotic bound.
    pub timing_slope: Option<f64>,
}

impl SuiteReport {
    /// Whether every experiment ran and every completeness and soundness
    /// check passed.
    pub fn all_passed(&self) -> bool {
        let s = &self.summary;
        s.errors == 0 && s.r1_checked == s.r1_passed && s.r2_checked == s.r2_passed
    }
}

/// Runs one experiment.
pub fn run_experiment(config: &ExperimentConfig, base: &Path) -> Result<GapReport, HarnessError> {
    config.validate()?;
    let g = config.instance(base)?;
    let opts = GapOptions {
        mode: config.label_mode()?,
        order: config.order(),
        node_budget: config.node_budget,
    };
    Ok(gap_experiment(&config.name, &g, config.field()?, config.variant, opts)?)
}

/// Pairs the i-th Yes with the i-th No result in each `(n, k, q, variant)`
/// group.
pub fn gap_ratios(outcomes: &[ExperimentOutcome]) -> Vec<GapRatio> {
    type Key = (usize, usize, u32, Variant);
    let mut groups: BTreeMap<Key, (Vec<&GapReport>, Vec<&GapReport>)> = BTreeMap::new();
    for o in outcomes {
        let Some(r) = &o.report else { continue };
        let (yes, no) = groups.entry((r.n, r.k, r.q, r.variant)).or_default();
        match o.kind {
            Some(InstanceKind::PlantedYes) => yes.push(r),
            Some(InstanceKind::NoInstance) => no.push(r),
            _ => {}
        }
    }
    let mut out = Vec::new();
    for (yes, no) in groups.values() {
        for (y, n) in yes.iter().zip(no) {
            let ratio = y.omega_h as f64 / n.omega_h.max(1) as f64;
            out.push(GapRatio {
                yes: y.instance.clone(),
                no: n.instance.clone(),
                q: y.q,
                omega_yes: y.omega_h,
                omega_no: n.omega_h,
                ratio,
                at_least_q: y.omega_h >= y.q as usize * n.omega_h.max(1),
            });
        }
    }
    out
}

/// Times the reduction on planted instances for every `(n, k)` with
/// `k <= n`.
pub fn timing_sweep(config: &TimingConfig) -> Result<Vec<TimingPoint>, HarnessError> {
    let field = PrimeField::new(config.q).map_err(|e| HarnessError::Config(e.to_string()))?;
    let mut points = Vec::new();
    for &n in &config.n {
        for &k in config.k.iter().filter(|&&k| k <= n) {
            let g = generate_instance(&GeneratorSpec {
                kind: InstanceKind::PlantedYes,
                n,
                k,
                seed: mix(config.seed ^ mix(n as u64 ^ mix(k as u64))),
                edge_prob: default_edge_prob(),
            })?;
            let mut samples = Vec::with_capacity(config.repeats);
            let mut shape = (0, 0);
            for _ in 0..config.repeats.max(1) {
                let start = Instant::now();
                let lg = attach_labels(g.clone(), field, config.variant.required_arity(), LabelMode::Adaptive, CandidateOrder::Lexicographic)?;
                let p = ProductGraph::new(lg, config.variant)?;
                let h = p.materialize(DEFAULT_NODE_BUDGET)?;
                samples.push(start.elapsed().as_secs_f64() * 1e3);
                shape = (p.d(), h.graph.n() as u64);
            }
            samples.sort_by(f64::total_cmp);
            points.push(TimingPoint {
                n,
                k,
                q: config.q,
                d: shape.0,
                size: n as u64 + (config.q as u64).pow(k as u32),
                h_nodes: shape.1,
                reduce_ms: samples[samples.len() / 2],
            });
        }
    }
    Ok(points)
}

/// Least-squares slope of `ln reduce_ms` against `ln size`; `None` with
/// fewer than two distinct sizes.
pub fn loglog_slope(points: &[TimingPoint]) -> Option<f64> {
    let xy: Vec<(f64, f64)> = points
        .iter()
        .map(|p| ((p.size as f64).ln(), p.reduce_ms.max(1e-6).ln()))
        .collect();
    let n = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / n;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 1e-12).then(|| sxy / sxx)
}

/// Runs every experiment in parallel, then the timing sweep sequentially.
/// A failing experiment is recorded and the rest continue.
pub fn run_suite(suite: &Suite, base: &Path) -> Result<SuiteReport, HarnessError> {
    let configs = suite.all_experiments();
    let experiments: Vec<ExperimentOutcome> = configs
        .par_iter()
        .map(|c| {
            let kind = match &c.source {
                InstanceSource::Generator(spec) => Some(spec.kind),
                InstanceSource::File { .. } => None,
            };
            match run_experiment(c, base) {
                Ok(report) => ExperimentOutcome {
                    name: c.name.clone(),
                    kind,
                    report: Some(report),
                    error: None,
                },
                Err(e) => ExperimentOutcome {
                    name: c.name.clone(),
                    kind,
                    report: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();

    let mut summary = Summary {
        total: experiments.len(),
        ..Summary::default()
    };
    for o in &experiments {
        match &o.report {
            None => summary.errors += 1,
            Some(r) => {
                if let Some(ok) = r.r1_pass {
                    summary.r1_checked += 1;
                    summary.r1_passed += ok as usize;
                }
                if let Some(ok) = r.r2_pass {
                    summary.r2_checked += 1;
                    summary.r2_passed += ok as usize;
                }
            }
        }
    }
    let gap_ratios = gap_ratios(&experiments);
    summary.ratios_checked = gap_ratios.len();
    summary.ratios_at_least_q = gap_ratios.iter().filter(|g| g.at_least_q).count();

    let timing = match &suite.timing {
        Some(t) => timing_sweep(t)?,
        None => Vec::new(),
    };
    let timing_slope = loglog_slope(&timing);
    Ok(SuiteReport {
        experiments,
        summary,
        gap_ratios,
        timing,
        timing_slope,
    })
}
