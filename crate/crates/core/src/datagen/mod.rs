//! Instance sampling, labeling, and rendering of instruction/input/output
//! records.

mod label;
mod render;
mod sample;
mod stats;

pub use label::{label_instance, Label, LabelBudget, Provenance};
pub use render::{input_text, instruction, parse_record_instance, render_record, Record, RecordMeta};
pub use sample::{sample_instance, InstanceSpec, SampleOptions, Sampled, Scale, RESAMPLE_LIMIT};
pub use stats::{dataset_stats, Balancer, DatasetStats, SIZE_BUCKET};

use crate::graph::GraphError;
use crate::instance::Task;
use crate::rng::derive_seed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DatagenError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("no valid instance after {0} resamples")]
    ResampleLimit(usize),
    #[error("embedding spec has no hardware graph")]
    MissingHardware,
    #[error("malformed record: {0}")]
    Record(String),
    #[error("thread pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerateConfig {
    pub task: Task,
    pub count: usize,
    pub master_seed: u64,
    pub sample: SampleOptions,
    pub budget: LabelBudget,
    /// Target satisfiable fraction; `None` keeps whatever comes.
    pub balance: Option<f64>,
    /// Upper bound on instances drawn.
    pub max_draws: u64,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
}

impl GenerateConfig {
    pub fn new(task: Task, count: usize, master_seed: u64) -> Self {
        GenerateConfig {
            task,
            count,
            master_seed,
            sample: SampleOptions::default(),
            budget: LabelBudget::default(),
            balance: None,
            max_draws: (count as u64).saturating_mul(20).max(100),
            jobs: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerateReport {
    pub records: Vec<Record>,
    /// Instances consumed, including dropped and rejected ones.
    pub draws: u64,
    pub dropped: u64,
    pub rejected: u64,
}

/// Samples, labels and renders instances `0, 1, 2, ...` with seeds
/// `derive_seed(master_seed, index)` until `count` records are kept or
/// `max_draws` is reached. Labeling runs in parallel; acceptance is decided
/// in index order, so the output does not depend on the thread count.
pub fn generate_dataset(cfg: &GenerateConfig) -> Result<GenerateReport, DatagenError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| DatagenError::Pool(e.to_string()))?;
    let batch = (pool.current_num_threads() * 4).max(8) as u64;
    let mut balancer = Balancer::new(cfg.count, cfg.balance);
    let mut report = GenerateReport {
        records: Vec::new(),
        draws: 0,
        dropped: 0,
        rejected: 0,
    };
    let mut next = 0u64;
    while !balancer.is_full() && next < cfg.max_draws {
        let end = (next + batch).min(cfg.max_draws);
        let results: Vec<Result<Option<Record>, DatagenError>> = pool.install(|| {
            (next..end)
                .into_par_iter()
                .map(|index| one_record(cfg, index))
                .collect()
        });
        for result in results {
            if balancer.is_full() {
                break;
            }
            report.draws += 1;
            match result? {
                None => report.dropped += 1,
                Some(rec) => {
                    if balancer.offer(rec.meta.label.is_sat()) {
                        report.records.push(rec);
                    } else {
                        report.rejected += 1;
                    }
                }
            }
        }
        next = end;
    }
    Ok(report)
}

fn one_record(cfg: &GenerateConfig, index: u64) -> Result<Option<Record>, DatagenError> {
    let seed = derive_seed(cfg.master_seed, index);
    let sampled = sample_instance(cfg.task, seed, &cfg.sample)?;
    let label = label_instance(&sampled.instance, &cfg.budget, seed);
    Ok(render_record(&sampled.instance, &label, Some(&sampled.spec), Some(index)))
}
