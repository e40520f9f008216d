//! Exhaustive backtracking oracles for small instances.

mod color;
mod embed;

pub use color::{clique_lower_bound, exact_color, greedy_coloring, min_color};
pub use embed::{exact_embed, exact_embed_with_family};

use serde::{Deserialize, Serialize};
use std::time::{Duration, Instant};

/// Search limits. Hitting either yields [`Outcome::Unknown`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: u64,
    pub time_limit: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 50_000_000,
            time_limit: None,
        }
    }
}

impl Budget {
    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes,
            time_limit: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Outcome<S> {
    Feasible { solution: S },
    Infeasible,
    /// Budget exhausted; `incumbent` is the best solution seen, if any.
    Unknown { incumbent: Option<S> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate<S> {
    #[serde(flatten)]
    pub outcome: Outcome<S>,
    pub nodes: u64,
    /// Objective of the feasible solution: total chain vertices for
    /// embeddings, colors used for colorings.
    pub objective: Option<u64>,
    /// Whether the objective is proven minimal.
    pub optimal: bool,
}

impl<S> Certificate<S> {
    pub fn solution(&self) -> Option<&S> {
        match &self.outcome {
            Outcome::Feasible { solution } => Some(solution),
            _ => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self.outcome, Outcome::Feasible { .. })
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self.outcome, Outcome::Infeasible)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self.outcome, Outcome::Unknown { .. })
    }
}

/// Node and wall-clock accounting shared by the searches.
#[derive(Debug)]
pub(crate) struct Meter {
    budget: Budget,
    start: Instant,
    pub nodes: u64,
    pub exhausted: bool,
}

impl Meter {
    pub fn new(budget: Budget) -> Self {
        Meter {
            budget,
            start: Instant::now(),
            nodes: 0,
            exhausted: false,
        }
    }

    /// Counts one node; false once the budget is spent.
    pub fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            self.exhausted = true;
        } else if self.nodes.is_multiple_of(1024) {
            if let Some(t) = self.budget.time_limit {
                self.exhausted = self.start.elapsed() >= t;
            }
        }
        !self.exhausted
    }
}
