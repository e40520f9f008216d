//! Warm-start and solution files.
//!
//! Three layouts are accepted:
//! - a JSON object mapping model variable names to values, `{"x_0_3": 1}`;
//! - a domain solution, `{"embedding": {"0": [4, 5]}}` or `{"coloring": [0, 1]}`,
//!   or a bare embedding map `{"0": [4, 5]}`;
//! - answer text in the dataset output grammar, `Yes, coloring: [0, 1]`.

use chainfeas::instance::Task;
use chainfeas::solution::Solution;
use chainfeas::verify::{parse_candidate, Claim};
use serde_json::Value;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WarmStart {
    Values(BTreeMap<String, i64>),
    Solution(Solution),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WarmStartError {
    #[error("answer text does not carry a solution ({0})")]
    NoSolution(String),
    #[error("{0}")]
    Json(String),
}

/// Parses a warm-start or solution file for an instance of `task`.
pub fn parse_warm_start(text: &str, task: Task) -> Result<WarmStart, WarmStartError> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        if let Ok(value) = serde_json::from_str::<Value>(trimmed) {
            return from_json(value);
        }
    }
    let cand = parse_candidate(trimmed, task);
    match (cand.claim, cand.solution) {
        (Claim::Yes, Some(sol)) => Ok(WarmStart::Solution(sol)),
        (Claim::Malformed(e), _) => Err(WarmStartError::NoSolution(e)),
        _ => Err(WarmStartError::NoSolution("answer is no".into())),
    }
}

fn from_json(value: Value) -> Result<WarmStart, WarmStartError> {
    let Value::Object(map) = &value else {
        unreachable!("caller checked for an object")
    };
    if map.len() == 1 && (map.contains_key("embedding") || map.contains_key("coloring")) {
        return serde_json::from_value(value)
            .map(WarmStart::Solution)
            .map_err(|e| WarmStartError::Json(e.to_string()));
    }
    if !map.is_empty() && map.values().all(Value::is_array) {
        return serde_json::from_value(value)
            .map(|e| WarmStart::Solution(Solution::Embedding(e)))
            .map_err(|e| WarmStartError::Json(e.to_string()));
    }
    let mut values = BTreeMap::new();
    for (name, v) in map {
        let v = v
            .as_i64()
            .ok_or_else(|| WarmStartError::Json(format!("value of {name:?} is not an integer")))?;
        values.insert(name.clone(), v);
    }
    Ok(WarmStart::Values(values))
}
