use crate::graph::Graph;
use crate::rng::seeded;
use crate::solution::Embedding;
use crate::verify::{verify_embedding, EmbeddingViolation};
use rand::seq::index::sample;
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Phase2Config {
    /// Consecutive non-improving rounds before stopping.
    pub patience: usize,
    pub candidate_cap: usize,
    pub probe_cap: usize,
    /// Vertices sampled per chain when building deletion moves.
    pub per_chain: usize,
    pub seed: u64,
    pub time_limit: Option<Duration>,
}

impl Default for Phase2Config {
    fn default() -> Self {
        Phase2Config {
            patience: 40,
            candidate_cap: 60,
            probe_cap: 20,
            per_chain: 4,
            seed: 0,
            time_limit: None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Phase2Error {
    #[error("input embedding is not valid ({} violations)", .0.len())]
    Infeasible(Vec<EmbeddingViolation>),
}

/// Shrinks chains of a valid embedding by single-vertex deletions that keep
/// it valid. The result is valid and uses no more vertices than the input.
pub fn fj_phase2(
    problem: &Graph,
    hardware: &Graph,
    chain_limit: usize,
    embedding: &Embedding,
    config: &Phase2Config,
) -> Result<Embedding, Phase2Error> {
    fj_phase2_observed(problem, hardware, chain_limit, embedding, config, |_| {})
}

/// As [`fj_phase2`], calling `on_accept` with the embedding after each
/// accepted deletion.
pub fn fj_phase2_observed<F>(
    problem: &Graph,
    hardware: &Graph,
    chain_limit: usize,
    embedding: &Embedding,
    config: &Phase2Config,
    mut on_accept: F,
) -> Result<Embedding, Phase2Error>
where
    F: FnMut(&Embedding),
{
    verify_embedding(problem, hardware, chain_limit, embedding).map_err(Phase2Error::Infeasible)?;
    let mut rng = seeded(config.seed);
    let start = Instant::now();
    let mut current = embedding.clone();
    let mut order: Vec<usize> = current.iter().map(|(i, _)| i).collect();
    let mut stale = 0;

    while stale < config.patience {
        if config.time_limit.is_some_and(|t| start.elapsed() >= t) {
            break;
        }
        // deletion moves (problem vertex, hardware vertex)
        order.shuffle(&mut rng);
        let mut moves = Vec::new();
        'build: for &i in &order {
            let chain = current.chain(i).unwrap();
            if chain.len() < 2 {
                continue;
            }
            for p in sample(&mut rng, chain.len(), config.per_chain.min(chain.len())) {
                if moves.len() == config.candidate_cap {
                    break 'build;
                }
                moves.push((i, chain[p]));
            }
        }
        if moves.is_empty() {
            break;
        }
        let probes = sample(&mut rng, moves.len(), config.probe_cap.min(moves.len()));
        let mut improved = false;
        for p in probes {
            let (i, h) = moves[p];
            let mut trial = current.clone();
            trial.chain_mut(i).unwrap().retain(|&v| v != h);
            if verify_embedding(problem, hardware, chain_limit, &trial).is_ok() {
                current = trial;
                on_accept(&current);
                improved = true;
                break;
            }
        }
        if improved {
            stale = 0;
        } else {
            stale += 1;
        }
    }
    // every accepted move strictly shrinks, so the last state is the best
    Ok(current)
}
