use crate::chains::{ChainFamily, DEFAULT_CHAIN_CAP};
use crate::encode::{encode_embedding, encode_kcoloring, EncodeLimits};
use crate::exact::{exact_color, exact_embed_with_family, min_color, Budget, Outcome};
use crate::fjump::{fj_phase2, fj_search, FjConfig, Phase2Config};
use crate::graph::Graph;
use crate::instance::Instance;
use crate::milp::Model;
use crate::rng::derive_seed;
use crate::screening::{zero_phase_screen, ScreenResult, Violation};
use crate::solution::{colors_used, Embedding, Solution};
use serde::{Deserialize, Serialize};
use std::time::Duration;

/// Labeling limits. The defaults are count-based only, so labels are
/// reproducible; wall-clock limits trade that for bounded latency. They are
/// sized so that a desk-scale instance takes seconds on one core.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelBudget {
    pub exact: Budget,
    /// Minimize embedding size in the exact search.
    pub optimize: bool,
    pub fj_restarts: usize,
    pub fj_iterations: u64,
    pub fj_time_limit: Option<Duration>,
    pub phase2: Phase2Config,
    pub chain_cap: usize,
    /// Size cap on the model handed to FJ.
    pub encode: EncodeLimits,
}

impl Default for LabelBudget {
    fn default() -> Self {
        LabelBudget {
            exact: Budget::nodes(200_000),
            optimize: true,
            fj_restarts: 4,
            fj_iterations: 100_000,
            fj_time_limit: None,
            phase2: Phase2Config::default(),
            chain_cap: DEFAULT_CHAIN_CAP,
            encode: EncodeLimits {
                max_constraints: 1_000_000,
                max_nonzeros: 5_000_000,
            },
        }
    }
}

/// Which stage produced a label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    ZeroPhase,
    Exact,
    Fj,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::ZeroPhase => "zero_phase",
            Provenance::Exact => "exact",
            Provenance::Fj => "fj",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Label {
    Sat {
        solution: Solution,
        /// Total chain vertices, or colors used.
        objective: u64,
        optimal: bool,
        provenance: Provenance,
    },
    Unsat {
        provenance: Provenance,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        violation: Option<Violation>,
    },
    /// Unresolved within budget; never written to a dataset.
    Dropped { reason: String },
}

impl Label {
    pub fn is_sat(&self) -> bool {
        matches!(self, Label::Sat { .. })
    }

    pub fn is_dropped(&self) -> bool {
        matches!(self, Label::Dropped { .. })
    }

    pub fn provenance(&self) -> Option<Provenance> {
        match self {
            Label::Sat { provenance, .. } | Label::Unsat { provenance, .. } => Some(*provenance),
            Label::Dropped { .. } => None,
        }
    }

    pub fn solution(&self) -> Option<&Solution> {
        match self {
            Label::Sat { solution, .. } => Some(solution),
            _ => None,
        }
    }
}

fn dropped(reason: impl Into<String>) -> Label {
    Label::Dropped {
        reason: reason.into(),
    }
}

/// Labels an instance: screening, then exact search, then Feasibility Jump
/// restarts when the exact search runs out of budget. Unsatisfiable labels
/// come only from screening or an exhausted exact search.
pub fn label_instance(instance: &Instance, budget: &LabelBudget, seed: u64) -> Label {
    match instance {
        Instance::Embedding {
            problem,
            hardware,
            chain_limit,
        } => label_embedding(problem, hardware, *chain_limit, budget, seed),
        Instance::Kcoloring { graph, k } => label_kcoloring(graph, *k, budget, seed),
        Instance::Mincoloring { graph } => {
            let cert = min_color(graph, budget.exact);
            match cert.outcome {
                Outcome::Feasible { solution } => Label::Sat {
                    objective: colors_used(&solution) as u64,
                    solution: Solution::Coloring(solution),
                    optimal: true,
                    provenance: Provenance::Exact,
                },
                _ => dropped("chromatic number not proven within budget"),
            }
        }
    }
}

/// Runs up to `budget.fj_restarts` searches from the all-lower point.
fn fj_restarts(model: &Model, budget: &LabelBudget, seed: u64) -> Option<crate::milp::Assignment> {
    let start = model.lower_assignment();
    (0..budget.fj_restarts).find_map(|r| {
        let cfg = FjConfig {
            max_iterations: budget.fj_iterations,
            seed: derive_seed(seed, r as u64),
            time_limit: budget.fj_time_limit,
            ..Default::default()
        };
        let res = fj_search(model, &start, &cfg);
        res.is_feasible().then_some(res.assignment)
    })
}

fn label_kcoloring(graph: &Graph, k: usize, budget: &LabelBudget, seed: u64) -> Label {
    let cert = exact_color(graph, k, budget.exact);
    match cert.outcome {
        Outcome::Feasible { solution } => Label::Sat {
            objective: colors_used(&solution) as u64,
            solution: Solution::Coloring(solution),
            optimal: false,
            provenance: Provenance::Exact,
        },
        Outcome::Infeasible => Label::Unsat {
            provenance: Provenance::Exact,
            violation: None,
        },
        Outcome::Unknown { .. } => {
            let enc = encode_kcoloring(graph, k);
            match fj_restarts(&enc.model, budget, seed) {
                Some(x) => {
                    let coloring = enc.decode(&x).expect("feasible point decodes");
                    Label::Sat {
                        objective: colors_used(&coloring) as u64,
                        solution: Solution::Coloring(coloring),
                        optimal: false,
                        provenance: Provenance::Fj,
                    }
                }
                None => dropped("exact search and FJ both unresolved"),
            }
        }
    }
}

fn label_embedding(
    problem: &Graph,
    hardware: &Graph,
    chain_limit: usize,
    budget: &LabelBudget,
    seed: u64,
) -> Label {
    let s_min = match zero_phase_screen(problem, hardware, chain_limit) {
        ScreenResult::CertifiedInfeasible { violation } => {
            return Label::Unsat {
                provenance: Provenance::ZeroPhase,
                violation: Some(violation),
            }
        }
        ScreenResult::Pass { s_min } => s_min,
    };
    let family = match ChainFamily::enumerate_capped(hardware, chain_limit, budget.chain_cap) {
        Ok(f) => f,
        Err(e) => return dropped(e.to_string()),
    };
    let improve = |emb: Embedding, seed: u64| {
        let cfg = Phase2Config {
            seed,
            ..budget.phase2.clone()
        };
        fj_phase2(problem, hardware, chain_limit, &emb, &cfg).expect("input embedding verified")
    };
    let sat = |emb: Embedding, optimal: bool, provenance: Provenance| Label::Sat {
        objective: emb.total_vertices() as u64,
        solution: Solution::Embedding(emb),
        optimal,
        provenance,
    };

    let cert = exact_embed_with_family(problem, hardware, &family, budget.exact, budget.optimize);
    match cert.outcome {
        Outcome::Feasible { solution } if cert.optimal => sat(solution, true, Provenance::Exact),
        Outcome::Feasible { solution } => sat(improve(solution, seed), false, Provenance::Exact),
        Outcome::Infeasible => Label::Unsat {
            provenance: Provenance::Exact,
            violation: None,
        },
        Outcome::Unknown {
            incumbent: Some(emb),
        } => sat(improve(emb, seed), false, Provenance::Exact),
        Outcome::Unknown { incumbent: None } => {
            let enc = match encode_embedding(problem, hardware, &family, &s_min, budget.encode) {
                Ok(enc) => enc,
                Err(e) => return dropped(e.to_string()),
            };
            match fj_restarts(&enc.model, budget, seed) {
                Some(x) => {
                    let emb = enc.decode(&x).expect("feasible point decodes");
                    sat(improve(emb, seed), false, Provenance::Fj)
                }
                None => dropped("exact search and FJ both unresolved"),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::verify_solution;

    fn embedding(p: Graph, h: Graph, l: usize) -> Instance {
        Instance::Embedding {
            problem: p,
            hardware: h,
            chain_limit: l,
        }
    }

    #[test]
    fn screened_out() {
        let label = label_instance(&embedding(Graph::complete(4), Graph::star(4), 3), &LabelBudget::default(), 0);
        assert_eq!(label.provenance(), Some(Provenance::ZeroPhase));
        assert!(!label.is_sat());
    }

    #[test]
    fn k2_into_k2() {
        let inst = embedding(Graph::complete(2), Graph::complete(2), 1);
        let label = label_instance(&inst, &LabelBudget::default(), 0);
        match &label {
            Label::Sat {
                objective,
                provenance,
                solution,
                ..
            } => {
                assert_eq!((*objective, *provenance), (2, Provenance::Exact));
                assert!(verify_solution(&inst, solution));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fj_fallback_when_exact_budget_is_zero() {
        let inst = Instance::Kcoloring {
            graph: Graph::petersen(),
            k: 3,
        };
        let budget = LabelBudget {
            exact: Budget::nodes(0),
            ..Default::default()
        };
        let label = label_instance(&inst, &budget, 3);
        assert_eq!(label.provenance(), Some(Provenance::Fj));
        assert!(verify_solution(&inst, label.solution().unwrap()));
    }

    #[test]
    fn unresolved_is_dropped() {
        let inst = Instance::Kcoloring {
            graph: Graph::complete(4),
            k: 3,
        };
        let budget = LabelBudget {
            exact: Budget::nodes(0),
            fj_restarts: 2,
            fj_iterations: 1_000,
            ..Default::default()
        };
        assert!(label_instance(&inst, &budget, 0).is_dropped());
    }

    #[test]
    fn training_sample_embeds() {
        let p = Graph::from_edges(
            9,
            [
                (0, 4), (0, 5), (0, 7), (0, 8), (1, 2), (1, 3), (1, 6), (1, 8), (2, 4), (2, 7),
                (2, 8), (3, 5), (3, 6), (3, 7), (4, 6), (4, 8), (5, 6), (5, 7),
            ],
        )
        .unwrap();
        let inst = embedding(p, crate::graph::chimera(1, 3, 4), 3);
        let budget = LabelBudget {
            exact: Budget {
                max_nodes: 200_000,
                time_limit: Some(Duration::from_secs(5)),
            },
            ..Default::default()
        };
        let label = label_instance(&inst, &budget, 1);
        let sol = label.solution().expect("the sample instance is satisfiable");
        assert!(verify_solution(&inst, sol));
    }
}
