//! Problem instances and their file format.

use crate::graph::Graph;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    Embedding,
    Kcoloring,
    Mincoloring,
}

impl Task {
    pub fn as_str(self) -> &'static str {
        match self {
            Task::Embedding => "embedding",
            Task::Kcoloring => "kcoloring",
            Task::Mincoloring => "mincoloring",
        }
    }
}

impl std::str::FromStr for Task {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "embedding" => Ok(Task::Embedding),
            "kcoloring" => Ok(Task::Kcoloring),
            "mincoloring" => Ok(Task::Mincoloring),
            other => Err(format!("unknown task {other:?}")),
        }
    }
}

/// A decision or optimization instance. Serialized with a `task` tag and
/// graphs in the JSON edge-list layout, e.g.
/// `{"task":"kcoloring","graph":{"n":3,"edges":[[0,1]]},"k":3}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "snake_case", deny_unknown_fields)]
pub enum Instance {
    Embedding {
        problem: Graph,
        hardware: Graph,
        chain_limit: usize,
    },
    Kcoloring {
        graph: Graph,
        k: usize,
    },
    Mincoloring {
        graph: Graph,
    },
}

impl Instance {
    pub fn task(&self) -> Task {
        match self {
            Instance::Embedding { .. } => Task::Embedding,
            Instance::Kcoloring { .. } => Task::Kcoloring,
            Instance::Mincoloring { .. } => Task::Mincoloring,
        }
    }

    /// The graph being embedded or colored.
    pub fn primary_graph(&self) -> &Graph {
        match self {
            Instance::Embedding { problem, .. } => problem,
            Instance::Kcoloring { graph, .. } | Instance::Mincoloring { graph } => graph,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instance serializes")
    }
}
