use super::DatagenError;
use crate::graph::{Graph, GraphFamily, GraphSpec};
use crate::instance::{Instance, Task};
use crate::rng::seeded;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub const RESAMPLE_LIMIT: usize = 1000;

/// Parameter ranges. `Desk` keeps instances small enough for exact labels;
/// `Full` uses the complete ranges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    #[default]
    Desk,
    Full,
}

impl Scale {
    /// Vertex range of coloring graphs.
    pub fn coloring_n(self) -> (usize, usize) {
        match self {
            Scale::Desk => (10, 60),
            Scale::Full => (10, 300),
        }
    }

    /// Side range of Chimera hardware (`m` and `n` drawn independently).
    pub fn chimera_side(self) -> (usize, usize) {
        match self {
            Scale::Desk => (1, 2),
            Scale::Full => (1, 4),
        }
    }

    /// Vertex range of random hardware graphs.
    pub fn hardware_n(self) -> (usize, usize) {
        match self {
            Scale::Desk => (20, 40),
            Scale::Full => (20, 100),
        }
    }
}

/// Everything needed to rebuild an instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub task: Task,
    pub problem: GraphSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hardware: Option<GraphSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain_limit: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn materialize(&self) -> Result<Instance, DatagenError> {
        let problem = self.problem.generate()?;
        Ok(match self.task {
            Task::Embedding => Instance::Embedding {
                problem,
                hardware: self
                    .hardware
                    .as_ref()
                    .ok_or(DatagenError::MissingHardware)?
                    .generate()?,
                chain_limit: self.chain_limit.unwrap_or(3),
            },
            Task::Kcoloring => Instance::Kcoloring {
                graph: problem,
                k: self.k.unwrap_or(3),
            },
            Task::Mincoloring => Instance::Mincoloring { graph: problem },
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleOptions {
    pub scale: Scale,
    pub chain_limit: usize,
    pub k: usize,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions {
            scale: Scale::Desk,
            chain_limit: 3,
            k: 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Sampled {
    pub spec: InstanceSpec,
    pub instance: Instance,
}

/// Draws one instance. The result depends only on `(task, seed, options)`.
pub fn sample_instance(task: Task, seed: u64, opts: &SampleOptions) -> Result<Sampled, DatagenError> {
    let mut rng = seeded(seed);
    match task {
        Task::Embedding => sample_embedding(&mut rng, seed, opts),
        Task::Kcoloring | Task::Mincoloring => sample_coloring(task, &mut rng, seed, opts),
    }
}

fn sample_coloring(
    task: Task,
    rng: &mut ChaCha8Rng,
    seed: u64,
    opts: &SampleOptions,
) -> Result<Sampled, DatagenError> {
    let (lo, hi) = opts.scale.coloring_n();
    for _ in 0..RESAMPLE_LIMIT {
        let n = rng.gen_range(lo..=hi);
        let d = rng.gen_range(3.0..=5.2);
        let spec = GraphSpec::new(GraphFamily::erdos_renyi_avg_degree(n, d), rng.gen()).without_isolated();
        let graph = spec.generate()?;
        // dropping isolated vertices must not leave the range
        if graph.n() < lo {
            continue;
        }
        let (k, instance) = match task {
            Task::Kcoloring => (Some(opts.k), Instance::Kcoloring { graph, k: opts.k }),
            _ => (None, Instance::Mincoloring { graph }),
        };
        return Ok(Sampled {
            spec: InstanceSpec {
                task,
                problem: spec,
                hardware: None,
                chain_limit: None,
                k,
                seed,
            },
            instance,
        });
    }
    Err(DatagenError::ResampleLimit(RESAMPLE_LIMIT))
}

/// Largest even value `<= k`, at least 2.
fn even_at_most(k: usize) -> usize {
    (k - k % 2).max(2)
}

fn sample_hardware(rng: &mut ChaCha8Rng, scale: Scale) -> Result<(GraphSpec, Graph), DatagenError> {
    if rng.gen_bool(0.5) {
        let (lo, hi) = scale.chimera_side();
        let family = GraphFamily::Chimera {
            m: rng.gen_range(lo..=hi),
            n: rng.gen_range(lo..=hi),
            t: 4,
        };
        let spec = GraphSpec::new(family, 0);
        let g = spec.generate()?;
        return Ok((spec, g));
    }
    let (lo, hi) = scale.hardware_n();
    let n = rng.gen_range(lo..=hi);
    match rng.gen_range(0..3) {
        0 => {
            let p = rng.gen_range(0.4..=0.7);
            for _ in 0..RESAMPLE_LIMIT {
                let spec = GraphSpec::new(GraphFamily::ErdosRenyi { n, p }, rng.gen());
                let g = spec.generate()?;
                if g.is_connected() {
                    return Ok((spec, g));
                }
            }
            Err(DatagenError::ResampleLimit(RESAMPLE_LIMIT))
        }
        1 => {
            let mut d = *[6, 8, 10, 12].choose(rng).unwrap();
            d = d.min(n - 1);
            if (n * d) % 2 == 1 {
                d -= 1;
            }
            let spec = GraphSpec::new(GraphFamily::RandomRegular { n, d }, rng.gen());
            let g = spec.generate()?;
            Ok((spec, g))
        }
        _ => {
            let k = even_at_most((*[6, 8, 10, 12].choose(rng).unwrap()).min(n - 1));
            let beta = rng.gen_range(0.05..=0.2);
            let spec = GraphSpec::new(GraphFamily::WattsStrogatz { n, k, beta }, rng.gen());
            let g = spec.generate()?;
            Ok((spec, g))
        }
    }
}

fn sample_problem_family(rng: &mut ChaCha8Rng, n: usize) -> GraphFamily {
    match rng.gen_range(0..4) {
        0 => GraphFamily::ErdosRenyi {
            n,
            p: rng.gen_range(0.1..=0.6),
        },
        1 => GraphFamily::BarabasiAlbert {
            n,
            m: rng.gen_range(3..=8.min(n - 1)),
        },
        2 => {
            let k = (*[2, 4, 6, 8, 10].choose(rng).unwrap()).min(n - 1);
            GraphFamily::WattsStrogatz {
                n,
                k: even_at_most(k),
                beta: rng.gen_range(0.05..=0.3),
            }
        }
        _ => {
            let mut d = (*[4, 6, 8, 10].choose(rng).unwrap()).min(n - 1);
            if (n * d) % 2 == 1 {
                d -= 1;
            }
            GraphFamily::RandomRegular { n, d }
        }
    }
}

fn sample_embedding(rng: &mut ChaCha8Rng, seed: u64, opts: &SampleOptions) -> Result<Sampled, DatagenError> {
    // hardware is drawn once so the Chimera share is not skewed by rejection
    let (hw_spec, hardware) = sample_hardware(rng, opts.scale)?;
    let nh = hardware.n();
    let lo = 6.max(nh / 5).min(nh);
    for _ in 0..RESAMPLE_LIMIT {
        let n = rng.gen_range(lo..=nh);
        let spec = GraphSpec::new(sample_problem_family(rng, n), rng.gen());
        let problem = spec.generate()?;
        if problem.n() > nh || problem.num_edges() > hardware.num_edges() {
            continue;
        }
        return Ok(Sampled {
            spec: InstanceSpec {
                task: Task::Embedding,
                problem: spec,
                hardware: Some(hw_spec),
                chain_limit: Some(opts.chain_limit),
                k: None,
                seed,
            },
            instance: Instance::Embedding {
                problem,
                hardware,
                chain_limit: opts.chain_limit,
            },
        });
    }
    Err(DatagenError::ResampleLimit(RESAMPLE_LIMIT))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_json_is_exact() {
        // float parameters must survive JSON bit for bit, or a reloaded spec
        // can regenerate a different graph
        let opts = SampleOptions::default();
        for seed in 0..200 {
            let s = sample_instance(Task::Kcoloring, seed, &opts).unwrap();
            let back: InstanceSpec = serde_json::from_str(&serde_json::to_string(&s.spec).unwrap()).unwrap();
            assert_eq!(back, s.spec);
        }
    }

    #[test]
    fn deterministic() {
        let opts = SampleOptions::default();
        for task in [Task::Embedding, Task::Kcoloring, Task::Mincoloring] {
            let a = sample_instance(task, 42, &opts).unwrap();
            let b = sample_instance(task, 42, &opts).unwrap();
            assert_eq!(a.instance, b.instance);
            assert_eq!(a.spec, b.spec);
            assert_eq!(a.spec.materialize().unwrap(), a.instance);
        }
    }

    #[test]
    fn embedding_pairs_respect_trivial_bounds() {
        let opts = SampleOptions::default();
        for seed in 0..200 {
            let s = sample_instance(Task::Embedding, seed, &opts).unwrap();
            let Instance::Embedding { problem, hardware, .. } = &s.instance else {
                unreachable!()
            };
            assert!(problem.n() <= hardware.n());
            assert!(problem.num_edges() <= hardware.num_edges());
            assert!(problem.n() >= 6.min(hardware.n()));
            if let GraphFamily::ErdosRenyi { .. } = s.spec.hardware.as_ref().unwrap().family {
                assert!(hardware.is_connected());
            }
        }
    }

    #[test]
    fn coloring_sizes_in_range() {
        for scale in [Scale::Desk, Scale::Full] {
            let opts = SampleOptions { scale, ..Default::default() };
            let (lo, hi) = scale.coloring_n();
            for seed in 0..300 {
                let s = sample_instance(Task::Kcoloring, seed, &opts).unwrap();
                let n = s.instance.primary_graph().n();
                assert!((lo..=hi).contains(&n), "{n}");
                assert!((0..n).all(|v| s.instance.primary_graph().degree(v) > 0));
            }
        }
    }
}
