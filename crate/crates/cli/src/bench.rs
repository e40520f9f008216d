//! Warm-start benchmark: Feasibility Jump on satisfiable 3-coloring instances,
//! started once from the all-zero point and once from a perturbed known
//! coloring.

use chainfeas::datagen::{sample_instance, SampleOptions, Scale};
use chainfeas::encode::encode_kcoloring;
use chainfeas::exact::{exact_color, Budget, Outcome};
use chainfeas::fjump::{fj_search, FjConfig};
use chainfeas::graph::Graph;
use chainfeas::instance::{Instance, Task};
use chainfeas::rng::{derive_seed, seeded};
use chainfeas::solution::Coloring;
use rand::seq::index;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Write as _;
use std::time::Duration;

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub count: usize,
    pub perturbation: f64,
    pub k: usize,
    pub max_iterations: u64,
    pub time_limit: Option<Duration>,
    pub seed: u64,
    pub scale: Scale,
    pub jobs: usize,
    /// Instances drawn before giving up on filling `count`.
    pub max_draws: u64,
    /// Node budget for certifying colorability.
    pub exact_nodes: u64,
}

impl BenchConfig {
    pub fn new(count: usize, seed: u64) -> Self {
        BenchConfig {
            count,
            perturbation: 0.1,
            k: 3,
            max_iterations: 1_000_000,
            time_limit: None,
            seed,
            scale: Scale::Desk,
            jobs: 1,
            max_draws: (count as u64).saturating_mul(50).max(1000),
            exact_nodes: 2_000_000,
        }
    }
}

/// A certified satisfiable instance with a known coloring.
#[derive(Debug, Clone)]
pub struct SatInstance {
    pub index: u64,
    pub graph: Graph,
    pub coloring: Coloring,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub index: u64,
    pub n: usize,
    pub edges: usize,
    pub recolored: usize,
    pub zero_iters: u64,
    pub zero_ok: bool,
    pub warm_iters: u64,
    pub warm_ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub instances: usize,
    pub draws: u64,
    pub perturbation: f64,
    pub max_iterations: u64,
    pub zero_success_rate: f64,
    pub warm_success_rate: f64,
    /// Failed runs count at the iteration cap.
    pub zero_median_iters: f64,
    pub warm_median_iters: f64,
    /// zero / warm; absent when the warm median is zero.
    pub speedup: Option<f64>,
    /// warm / zero; absent when the zero median is zero.
    pub ratio: Option<f64>,
    #[serde(skip)]
    pub rows: Vec<BenchRow>,
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
}

/// Draws coloring instances `0, 1, ...` and keeps the first `count` that the
/// exact search proves `k`-colorable, in draw order.
pub fn sat_instances(cfg: &BenchConfig) -> (Vec<SatInstance>, u64) {
    let opts = SampleOptions {
        scale: cfg.scale,
        k: cfg.k,
        ..Default::default()
    };
    let pool = pool(cfg.jobs);
    let batch = (pool.current_num_threads() * 8).max(16) as u64;
    let mut out = Vec::with_capacity(cfg.count);
    let mut draws = 0;
    let mut next = 0;
    while out.len() < cfg.count && next < cfg.max_draws {
        let end = (next + batch).min(cfg.max_draws);
        let found: Vec<Option<SatInstance>> = pool.install(|| {
            (next..end)
                .into_par_iter()
                .map(|index| {
                    let sampled = sample_instance(Task::Kcoloring, derive_seed(cfg.seed, index), &opts).ok()?;
                    let Instance::Kcoloring { graph, k } = sampled.instance else {
                        unreachable!()
                    };
                    match exact_color(&graph, k, Budget::nodes(cfg.exact_nodes)).outcome {
                        Outcome::Feasible { solution } => Some(SatInstance {
                            index,
                            graph,
                            coloring: solution,
                        }),
                        _ => None,
                    }
                })
                .collect()
        });
        for f in found {
            if out.len() == cfg.count {
                break;
            }
            draws += 1;
            out.extend(f);
        }
        next = end;
    }
    (out, draws)
}

/// Recolors `round(rate * n)` distinct vertices, each to a different color
/// drawn uniformly from the other `k - 1`.
pub fn perturb<R: Rng>(coloring: &[usize], k: usize, rate: f64, rng: &mut R) -> (Coloring, usize) {
    let n = coloring.len();
    let flips = ((rate * n as f64).round() as usize).min(n);
    let mut out = coloring.to_vec();
    if k < 2 {
        return (out, 0);
    }
    for v in index::sample(rng, n, flips) {
        let c = rng.gen_range(0..k - 1);
        out[v] = if c >= out[v] { c + 1 } else { c };
    }
    (out, flips)
}

fn median(mut xs: Vec<u64>) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.sort_unstable();
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m] as f64
    } else {
        (xs[m - 1] + xs[m]) as f64 / 2.0
    }
}

pub fn run_on(cfg: &BenchConfig, set: &[SatInstance], draws: u64) -> BenchReport {
    let pool = pool(cfg.jobs);
    let rows: Vec<BenchRow> = pool.install(|| {
        set.par_iter()
            .map(|inst| {
                let seed = derive_seed(cfg.seed ^ 0x9e37_79b9_7f4a_7c15, inst.index);
                let enc = encode_kcoloring(&inst.graph, cfg.k);
                let fj = FjConfig {
                    max_iterations: cfg.max_iterations,
                    seed,
                    time_limit: cfg.time_limit,
                    ..Default::default()
                };
                let zero = fj_search(&enc.model, &enc.model.lower_assignment(), &fj);
                let (warm_coloring, recolored) = perturb(&inst.coloring, cfg.k, cfg.perturbation, &mut seeded(seed));
                let warm = fj_search(&enc.model, &enc.encode_solution(&warm_coloring), &fj);
                let iters = |ok: bool, it: u64| if ok { it } else { cfg.max_iterations };
                BenchRow {
                    index: inst.index,
                    n: inst.graph.n(),
                    edges: inst.graph.num_edges(),
                    recolored,
                    zero_iters: iters(zero.is_feasible(), zero.iterations),
                    zero_ok: zero.is_feasible(),
                    warm_iters: iters(warm.is_feasible(), warm.iterations),
                    warm_ok: warm.is_feasible(),
                }
            })
            .collect()
    });
    let total = rows.len().max(1) as f64;
    let zero_median = median(rows.iter().map(|r| r.zero_iters).collect());
    let warm_median = median(rows.iter().map(|r| r.warm_iters).collect());
    BenchReport {
        instances: rows.len(),
        draws,
        perturbation: cfg.perturbation,
        max_iterations: cfg.max_iterations,
        zero_success_rate: rows.iter().filter(|r| r.zero_ok).count() as f64 / total,
        warm_success_rate: rows.iter().filter(|r| r.warm_ok).count() as f64 / total,
        zero_median_iters: zero_median,
        warm_median_iters: warm_median,
        speedup: (warm_median > 0.0).then(|| zero_median / warm_median),
        ratio: (zero_median > 0.0).then(|| warm_median / zero_median),
        rows,
    }
}

pub fn run_bench(cfg: &BenchConfig) -> BenchReport {
    let (set, draws) = sat_instances(cfg);
    run_on(cfg, &set, draws)
}

pub fn rows_csv(rows: &[BenchRow]) -> String {
    let mut s = String::from("index,n,edges,recolored,zero_iters,zero_ok,warm_iters,warm_ok\n");
    for r in rows {
        writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            r.index, r.n, r.edges, r.recolored, r.zero_iters, r.zero_ok, r.warm_iters, r.warm_ok
        )
        .unwrap();
    }
    s
}
