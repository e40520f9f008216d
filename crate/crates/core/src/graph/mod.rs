//! Undirected simple graphs with dense vertex labels.
//!
//! The same [`Graph`] type carries both roles used throughout the crate: the
//! problem graph that is being embedded or colored, and the hardware graph
//! that hosts the chains.

mod generate;

pub use generate::{chimera, GraphFamily, GraphSpec};

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge list parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0} vertices exceeds the limit of {MAX_VERTICES}")]
    TooLarge(usize),
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
    #[error("could not construct a {family} graph after {attempts} attempts")]
    Unconstructible { family: &'static str, attempts: usize },
}

/// Largest vertex count accepted from an explicit edge list.
pub const MAX_VERTICES: usize = 1 << 20;

/// An undirected simple graph on vertices `0..n`.
///
/// Edges are stored once as `(u, v)` with `u < v`, sorted lexicographically;
/// adjacency lists are sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

/// On-disk edge-list layout: `{"n": 3, "edges": [[0,1],[1,2]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeListFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list, rejecting self-loops, duplicates
    /// (in either orientation) and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let e = (u.min(v), u.max(v));
            if !set.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
        }
        Ok(Self::from_edge_set(n, set))
    }

    /// Infallible constructor for generators that already hold a normalized
    /// edge set (`u < v < n`).
    pub(crate) fn from_edge_set(n: usize, set: BTreeSet<(usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &set {
            debug_assert!(u < v && v < n);
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph {
            edges: set.into_iter().collect(),
            adjacency,
        }
    }

    pub fn complete(n: usize) -> Self {
        let set = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::from_edge_set(n, set)
    }

    pub fn path(n: usize) -> Self {
        let set = (1..n).map(|v| (v - 1, v)).collect();
        Self::from_edge_set(n, set)
    }

    pub fn cycle(n: usize) -> Self {
        let mut set: BTreeSet<_> = (1..n).map(|v| (v - 1, v)).collect();
        if n >= 3 {
            set.insert((0, n - 1));
        }
        Self::from_edge_set(n, set)
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let set = (1..=leaves).map(|v| (0, v)).collect();
        Self::from_edge_set(leaves + 1, set)
    }

    pub fn petersen() -> Self {
        let edges = (0..5).flat_map(|i| {
            [
                (i, (i + 1) % 5),
                (i, i + 5),
                (i + 5, (i + 2) % 5 + 5),
            ]
        });
        Self::from_edges(10, edges).expect("petersen edges are simple")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, lexicographically sorted.
    #[inline]
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn is_connected(&self) -> bool {
        let all: Vec<usize> = (0..self.n()).collect();
        self.is_connected_subset(&all)
    }

    /// Whether the subgraph induced by `vertices` is connected. The empty set
    /// counts as connected; duplicate or out-of-range ids make it `false`.
    pub fn is_connected_subset(&self, vertices: &[usize]) -> bool {
        if vertices.is_empty() {
            return true;
        }
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != vertices.len() || *sorted.last().unwrap() >= self.n() {
            return false;
        }
        let mut seen = vec![false; sorted.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(i) = stack.pop() {
            for &w in self.neighbors(sorted[i]) {
                if let Ok(j) = sorted.binary_search(&w) {
                    if !seen[j] {
                        seen[j] = true;
                        reached += 1;
                        stack.push(j);
                    }
                }
            }
        }
        reached == sorted.len()
    }

    /// Drops degree-0 vertices and relabels the rest densely, preserving
    /// relative order. Returns the new graph and the old label of each new
    /// vertex.
    pub fn without_isolated(&self) -> (Graph, Vec<usize>) {
        let kept: Vec<usize> = (0..self.n()).filter(|&v| self.degree(v) > 0).collect();
        let mut relabel = vec![usize::MAX; self.n()];
        for (new, &old) in kept.iter().enumerate() {
            relabel[old] = new;
        }
        let set = self
            .edges
            .iter()
            .map(|&(u, v)| (relabel[u], relabel[v]))
            .collect();
        (Self::from_edge_set(kept.len(), set), kept)
    }

    pub fn to_edge_list(&self) -> EdgeListFile {
        EdgeListFile {
            n: self.n(),
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_edge_list(file: &EdgeListFile) -> Result<Self, GraphError> {
        Self::from_edges(file.n, file.edges.iter().map(|e| (e[0], e[1])))
    }

    /// Serializes to the JSON edge-list format with sorted `u < v` pairs.
    pub fn dump_edge_list(&self) -> String {
        serde_json::to_string(&self.to_edge_list()).expect("edge list serializes")
    }

    /// Parses the JSON edge-list format.
    pub fn load_edge_list(text: &str) -> Result<Self, GraphError> {
        let file: EdgeListFile = serde_json::from_str(text).map_err(|e| GraphError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Self::from_edge_list(&file)
    }

    /// Neighbor-degree annotation: for every vertex `i`, `Ni:[a,b,#c,#d]`
    /// lists the two highest-degree neighbors (ties to the smaller id) and
    /// their degrees, joined by `"; "`.
    pub fn top2_info(&self) -> String {
        let mut out = String::new();
        for v in 0..self.n() {
            if v > 0 {
                out.push_str("; ");
            }
            let mut nbrs: Vec<usize> = self.neighbors(v).to_vec();
            nbrs.sort_by(|&a, &b| self.degree(b).cmp(&self.degree(a)).then(a.cmp(&b)));
            match nbrs.as_slice() {
                [] => write!(out, "N{v}:[]"),
                [a] => write!(out, "N{v}:[{a},#{}]", self.degree(*a)),
                [a, b, ..] => write!(
                    out,
                    "N{v}:[{a},{b},#{},#{}]",
                    self.degree(*a),
                    self.degree(*b)
                ),
            }
            .unwrap();
        }
        out
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_edge_list().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let file = EdgeListFile::deserialize(deserializer)?;
        Graph::from_edge_list(&file).map_err(serde::de::Error::custom)
    }
}
