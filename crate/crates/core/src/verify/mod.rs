//! Solution verifiers, the candidate-answer grammar, and Best-of-N selection.
//!
//! Verification only looks at the graphs; it never consults a chain family,
//! so it is independent of enumeration caps and model construction.

mod candidate;
mod select;

pub use candidate::{parse_candidate, render_answer, Candidate, Claim};
pub use select::{best_of_n, best_of_n_with, default_objective, Basis, Chosen, Decision, SelectError, Verdict};

use crate::graph::Graph;
use crate::instance::Instance;
use crate::solution::{colors_used, Embedding, Solution};
use serde::Serialize;
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum EmbeddingViolation {
    /// Problem vertex without a chain, or with an empty one.
    Missing { vertex: usize },
    /// Chain entry naming a hardware vertex that does not exist.
    UnknownVertex {
        problem_vertex: usize,
        hardware_vertex: usize,
    },
    /// Entry for a problem vertex that does not exist.
    UnknownProblemVertex { vertex: usize },
    /// Hardware vertex used by two chains (or twice by one).
    Overlap {
        hardware_vertex: usize,
        problem_vertices: [usize; 2],
    },
    Disconnected { vertex: usize },
    Oversize {
        vertex: usize,
        size: usize,
        limit: usize,
    },
    UnrealizedEdge { u: usize, v: usize },
}

/// Checks a minor-embedding of `problem` into `hardware` with chains of at
/// most `chain_limit` vertices. Returns every violation found.
pub fn verify_embedding(
    problem: &Graph,
    hardware: &Graph,
    chain_limit: usize,
    emb: &Embedding,
) -> Result<(), Vec<EmbeddingViolation>> {
    use EmbeddingViolation::*;
    let mut out = Vec::new();
    let mut owner: HashMap<usize, usize> = HashMap::new();
    let mut usable = vec![false; problem.n()];

    for (vertex, chain) in emb.iter() {
        if vertex >= problem.n() {
            out.push(UnknownProblemVertex { vertex });
            continue;
        }
        if chain.is_empty() {
            continue;
        }
        let mut known = true;
        for &h in chain {
            if h >= hardware.n() {
                out.push(UnknownVertex {
                    problem_vertex: vertex,
                    hardware_vertex: h,
                });
                known = false;
                continue;
            }
            if let Some(&other) = owner.get(&h) {
                out.push(Overlap {
                    hardware_vertex: h,
                    problem_vertices: [other, vertex],
                });
            } else {
                owner.insert(h, vertex);
            }
        }
        if chain.len() > chain_limit {
            out.push(Oversize {
                vertex,
                size: chain.len(),
                limit: chain_limit,
            });
        }
        if known {
            let mut distinct = chain.to_vec();
            distinct.sort_unstable();
            distinct.dedup();
            if !hardware.is_connected_subset(&distinct) {
                out.push(Disconnected { vertex });
            }
        }
        usable[vertex] = true;
    }
    for (vertex, &ok) in usable.iter().enumerate() {
        if !ok {
            out.push(Missing { vertex });
        }
    }

    for &(u, v) in problem.edges() {
        if !usable[u] || !usable[v] {
            out.push(UnrealizedEdge { u, v });
            continue;
        }
        let cv = emb.chain(v).unwrap();
        let realized = emb.chain(u).unwrap().iter().any(|&a| {
            a < hardware.n() && hardware.neighbors(a).iter().any(|w| cv.contains(w))
        });
        if !realized {
            out.push(UnrealizedEdge { u, v });
        }
    }

    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum ColoringViolation {
    LengthMismatch { expected: usize, got: usize },
    OutOfRange { vertex: usize, color: usize, k: usize },
    Conflict { u: usize, v: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ColoringReport {
    pub violations: Vec<ColoringViolation>,
    /// Monochromatic edges over all edges (0 for an edgeless graph).
    pub error_ratio: f64,
}

impl ColoringReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks a vertex coloring; `k = None` allows any nonnegative color.
pub fn verify_coloring(graph: &Graph, k: Option<usize>, colors: &[usize]) -> ColoringReport {
    let mut violations = Vec::new();
    if colors.len() != graph.n() {
        violations.push(ColoringViolation::LengthMismatch {
            expected: graph.n(),
            got: colors.len(),
        });
    }
    if let Some(k) = k {
        for (vertex, &color) in colors.iter().enumerate() {
            if color >= k {
                violations.push(ColoringViolation::OutOfRange { vertex, color, k });
            }
        }
    }
    let mut conflicts = 0;
    for &(u, v) in graph.edges() {
        match (colors.get(u), colors.get(v)) {
            (Some(a), Some(b)) if a != b => {}
            _ => {
                conflicts += 1;
                violations.push(ColoringViolation::Conflict { u, v });
            }
        }
    }
    let error_ratio = if graph.num_edges() == 0 {
        0.0
    } else {
        conflicts as f64 / graph.num_edges() as f64
    };
    ColoringReport {
        violations,
        error_ratio,
    }
}

/// Whether `solution` is a valid certificate for `instance`.
pub fn verify_solution(instance: &Instance, solution: &Solution) -> bool {
    match (instance, solution) {
        (
            Instance::Embedding {
                problem,
                hardware,
                chain_limit,
            },
            Solution::Embedding(e),
        ) => verify_embedding(problem, hardware, *chain_limit, e).is_ok(),
        (Instance::Kcoloring { graph, k }, Solution::Coloring(c)) => {
            verify_coloring(graph, Some(*k), c).is_valid()
        }
        (Instance::Mincoloring { graph }, Solution::Coloring(c)) => {
            verify_coloring(graph, None, c).is_valid()
        }
        _ => false,
    }
}

/// Objective used for ranking: hardware vertices for embeddings, colors used
/// for min-coloring, 0 for k-coloring.
pub fn solution_objective(instance: &Instance, solution: &Solution) -> usize {
    match (instance, solution) {
        (Instance::Embedding { .. }, Solution::Embedding(e)) => e.total_vertices(),
        (Instance::Mincoloring { .. }, Solution::Coloring(c)) => colors_used(c),
        _ => 0,
    }
}
