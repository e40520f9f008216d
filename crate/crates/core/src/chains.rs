//! Admissible chains: every connected hardware vertex set of bounded size,
//! with the per-chain quantities the embedding model and the exact search
//! consume.

use crate::graph::Graph;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::OnceLock;
use thiserror::Error;

pub const DEFAULT_CHAIN_CAP: usize = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("chain enumeration exceeded the cap of {cap} chains")]
    BudgetExceeded { cap: usize },
    #[error("maximum chain size must be at least 1")]
    ZeroSize,
}

/// A connected hardware vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    /// Sorted vertex ids.
    pub vertices: Vec<usize>,
    /// Hardware edges with both endpoints inside the chain.
    pub internal_edges: usize,
    /// Sorted external neighbors.
    pub boundary: Vec<usize>,
    /// Sorted union of the neighborhoods of all chain vertices (may include
    /// chain vertices themselves).
    reach: Vec<usize>,
}

impl Chain {
    #[inline]
    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Whether some hardware edge joins a vertex of `self` to a vertex of
    /// `other`. Overlap is allowed.
    pub fn touches(&self, other: &Chain) -> bool {
        sorted_intersect(&self.reach, &other.vertices)
    }
}

fn sorted_intersect(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// All connected hardware subsets of size `1..=max_size`, in canonical order:
/// by size, then lexicographically on the sorted vertex list.
#[derive(Debug)]
pub struct ChainFamily {
    chains: Vec<Chain>,
    by_vertex: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    max_size: usize,
    gamma: OnceLock<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct FamilyStats {
    pub chains: usize,
    pub max_size: usize,
    /// `count_by_size[s - 1]` chains of size `s`.
    pub count_by_size: Vec<usize>,
    pub max_boundary: usize,
}

impl ChainFamily {
    /// Enumerates with [`DEFAULT_CHAIN_CAP`].
    pub fn enumerate(hardware: &Graph, max_size: usize) -> Result<Self, ChainError> {
        Self::enumerate_capped(hardware, max_size, DEFAULT_CHAIN_CAP)
    }

    /// Grows connected sets from each anchor, admitting only vertices with
    /// larger ids than the anchor, so every set is produced exactly once
    /// (with the anchor as its minimum).
    pub fn enumerate_capped(
        hardware: &Graph,
        max_size: usize,
        cap: usize,
    ) -> Result<Self, ChainError> {
        if max_size == 0 {
            return Err(ChainError::ZeroSize);
        }
        let mut sets: Vec<Vec<usize>> = Vec::new();
        let mut current = Vec::with_capacity(max_size);
        for anchor in 0..hardware.n() {
            current.push(anchor);
            let ext: Vec<usize> = hardware
                .neighbors(anchor)
                .iter()
                .copied()
                .filter(|&u| u > anchor)
                .collect();
            extend(hardware, anchor, max_size, cap, &mut current, ext, &mut sets)?;
            current.pop();
        }
        for s in &mut sets {
            s.sort_unstable();
        }
        sets.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

        let mut by_vertex = vec![Vec::new(); hardware.n()];
        let mut index = HashMap::with_capacity(sets.len());
        let chains: Vec<Chain> = sets
            .into_iter()
            .enumerate()
            .map(|(c, vertices)| {
                for &v in &vertices {
                    by_vertex[v].push(c);
                }
                index.insert(vertices.clone(), c);
                build_chain(hardware, vertices)
            })
            .collect();
        Ok(ChainFamily {
            chains,
            by_vertex,
            index,
            max_size,
            gamma: OnceLock::new(),
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.chains.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    #[inline]
    pub fn max_size(&self) -> usize {
        self.max_size
    }

    #[inline]
    pub fn chain(&self, c: usize) -> &Chain {
        &self.chains[c]
    }

    pub fn chains(&self) -> &[Chain] {
        &self.chains
    }

    /// Indices of the chains containing hardware vertex `v`.
    pub fn containing(&self, v: usize) -> &[usize] {
        &self.by_vertex[v]
    }

    /// Index of the chain with exactly these vertices (any order).
    pub fn index_of(&self, vertices: &[usize]) -> Option<usize> {
        let mut key = vertices.to_vec();
        key.sort_unstable();
        self.index.get(&key).copied()
    }

    /// True iff some hardware edge joins chain `c` to chain `d`. Chains may
    /// overlap; disjointness is a separate constraint.
    pub fn chains_adjacent(&self, c: usize, d: usize) -> bool {
        self.chains[c].touches(&self.chains[d])
    }

    /// Adjacent-chain lists `Γ(C)`, built on first use. A chain is never
    /// listed in its own Γ; overlapping chains are.
    pub fn gamma(&self) -> &[Vec<usize>] {
        self.gamma.get_or_init(|| {
            let mut mark = vec![usize::MAX; self.chains.len()];
            self.chains
                .iter()
                .enumerate()
                .map(|(c, chain)| {
                    let mut out = Vec::new();
                    for &w in &chain.reach {
                        for &d in &self.by_vertex[w] {
                            if d != c && mark[d] != c {
                                mark[d] = c;
                                out.push(d);
                            }
                        }
                    }
                    out.sort_unstable();
                    out
                })
                .collect()
        })
    }

    /// Candidate chains for a problem vertex of degree `degree` whose chain
    /// must have at least `s_min` vertices: `s(C) >= s_min` and
    /// `|∂(C)| >= degree`.
    pub fn candidates(&self, degree: usize, s_min: usize) -> Vec<usize> {
        self.chains
            .iter()
            .enumerate()
            .filter(|(_, ch)| ch.size() >= s_min && ch.boundary.len() >= degree)
            .map(|(c, _)| c)
            .collect()
    }

    pub fn stats(&self) -> FamilyStats {
        let mut count_by_size = vec![0; self.max_size];
        for ch in &self.chains {
            count_by_size[ch.size() - 1] += 1;
        }
        FamilyStats {
            chains: self.chains.len(),
            max_size: self.max_size,
            count_by_size,
            max_boundary: self
                .chains
                .iter()
                .map(|c| c.boundary.len())
                .max()
                .unwrap_or(0),
        }
    }
}

fn extend(
    g: &Graph,
    anchor: usize,
    max_size: usize,
    cap: usize,
    current: &mut Vec<usize>,
    mut ext: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) -> Result<(), ChainError> {
    if out.len() >= cap {
        return Err(ChainError::BudgetExceeded { cap });
    }
    out.push(current.clone());
    if current.len() == max_size {
        return Ok(());
    }
    while let Some(w) = ext.pop() {
        // exclusive neighbors of w: not in, and not adjacent to, the current set
        let mut next = ext.clone();
        for &u in g.neighbors(w) {
            if u > anchor
                && !current.contains(&u)
                && !current.iter().any(|&s| g.has_edge(s, u))
                && !next.contains(&u)
            {
                next.push(u);
            }
        }
        current.push(w);
        extend(g, anchor, max_size, cap, current, next, out)?;
        current.pop();
    }
    Ok(())
}

fn build_chain(g: &Graph, vertices: Vec<usize>) -> Chain {
    let mut internal2 = 0;
    let mut boundary = Vec::new();
    let mut reach = Vec::new();
    for &v in &vertices {
        for &w in g.neighbors(v) {
            reach.push(w);
            if vertices.binary_search(&w).is_ok() {
                internal2 += 1;
            } else {
                boundary.push(w);
            }
        }
    }
    boundary.sort_unstable();
    boundary.dedup();
    reach.sort_unstable();
    reach.dedup();
    Chain {
        vertices,
        internal_edges: internal2 / 2,
        boundary,
        reach,
    }
}
