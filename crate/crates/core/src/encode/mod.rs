//! Encoders from domain problems to [`Model`](crate::milp::Model)s, with
//! decoders back to domain solutions.

mod coloring;
mod embedding;

pub use coloring::{encode_kcoloring, encode_mincoloring, ColoringEncoding};
pub use embedding::{encode_embedding, EmbeddingEncoding};

use crate::milp::MilpError;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EncodeError {
    #[error("problem vertex {vertex} has no candidate chain")]
    NoCandidates { vertex: usize },
    #[error("model exceeds the {what} limit of {limit}")]
    ModelTooLarge { what: &'static str, limit: usize },
    #[error("expected {expected} chain-size bounds, got {got}")]
    BoundsLength { expected: usize, got: usize },
    #[error(transparent)]
    Milp(#[from] MilpError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecodeError {
    #[error("assignment is not feasible for the encoded model")]
    NotFeasible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EncodeLimits {
    pub max_constraints: usize,
    pub max_nonzeros: usize,
}

impl Default for EncodeLimits {
    fn default() -> Self {
        EncodeLimits {
            max_constraints: 2_000_000,
            max_nonzeros: 40_000_000,
        }
    }
}

/// Model size by constraint class.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct EncodingStats {
    pub variables: usize,
    pub constraints: usize,
    pub nonzeros: usize,
    pub by_class: BTreeMap<&'static str, usize>,
}
