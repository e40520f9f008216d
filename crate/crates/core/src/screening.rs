//! Zero-phase infeasibility certificates for minor-embedding.
//!
//! A connected chain of `s` hardware vertices in a graph of maximum degree
//! `Δ` has at most `s·Δ − 2(s − 1) = s(Δ − 2) + 2` edges leaving it. Every
//! problem neighbor needs its own such edge, which bounds chain sizes from
//! below and, summed over problem vertices, the hardware vertices and edges an
//! embedding must consume. Any violated bound certifies infeasibility; passing
//! all of them proves nothing.

use crate::graph::Graph;
use serde::{Deserialize, Serialize};

/// Smallest chain size that can carry `deg_p` external adjacencies in a
/// hardware graph of maximum degree `delta_h`, or `None` when no chain of size
/// at most `max_chain` can.
///
/// For `delta_h <= 2` the boundary count gives at most two external edges for
/// any chain, so only `deg_p <= 2` is supportable (by a single vertex, as far
/// as this bound can tell).
pub fn min_chain_size(deg_p: usize, delta_h: usize, max_chain: usize) -> Option<usize> {
    let size = if delta_h <= 2 {
        if deg_p <= 2 {
            1
        } else {
            return None;
        }
    } else {
        let need = deg_p.saturating_sub(2);
        need.div_ceil(delta_h - 2).max(1)
    };
    (size <= max_chain).then_some(size)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    DegreeBound,
    VertexBudget,
    EdgeBudget,
}

/// The violated inequality and its witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition")]
pub enum Violation {
    /// `vertex` has more problem neighbors than any chain of size at most `L`
    /// can reach. `capacity` is `L(Δ − 2) + 2` when `Δ >= 3`, else 2.
    DegreeBound {
        vertex: usize,
        degree: usize,
        capacity: usize,
    },
    /// `Σ s_min > |V_H|`.
    VertexBudget { required: usize, available: usize },
    /// `|E_P| + Σ (s_min − 1) > |E_H|`.
    EdgeBudget { required: usize, available: usize },
}

impl Violation {
    pub fn condition(&self) -> Condition {
        match self {
            Violation::DegreeBound { .. } => Condition::DegreeBound,
            Violation::VertexBudget { .. } => Condition::VertexBudget,
            Violation::EdgeBudget { .. } => Condition::EdgeBudget,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ScreenResult {
    /// Not ruled out. Carries the per-vertex chain-size lower bounds.
    Pass { s_min: Vec<usize> },
    CertifiedInfeasible { violation: Violation },
}

impl ScreenResult {
    pub fn is_infeasible(&self) -> bool {
        matches!(self, ScreenResult::CertifiedInfeasible { .. })
    }

    pub fn s_min(&self) -> Option<&[usize]> {
        match self {
            ScreenResult::Pass { s_min } => Some(s_min),
            ScreenResult::CertifiedInfeasible { .. } => None,
        }
    }
}

/// Checks, in order, the per-vertex degree bound, the vertex budget and the
/// edge budget, returning the first violation.
pub fn zero_phase_screen(problem: &Graph, hardware: &Graph, max_chain: usize) -> ScreenResult {
    let delta_h = hardware.max_degree();
    let mut s_min = Vec::with_capacity(problem.n());
    for i in 0..problem.n() {
        let degree = problem.degree(i);
        match min_chain_size(degree, delta_h, max_chain) {
            Some(s) => s_min.push(s),
            None => {
                let capacity = if delta_h >= 3 {
                    max_chain * (delta_h - 2) + 2
                } else {
                    2
                };
                return ScreenResult::CertifiedInfeasible {
                    violation: Violation::DegreeBound {
                        vertex: i,
                        degree,
                        capacity,
                    },
                };
            }
        }
    }

    // Σ s_min >= |V_P| and the sum below >= |E_P|, so these also cover the
    // trivial |V_H| < |V_P| and |E_H| < |E_P| rejections.
    let vertices: usize = s_min.iter().sum();
    if vertices > hardware.n() {
        return ScreenResult::CertifiedInfeasible {
            violation: Violation::VertexBudget {
                required: vertices,
                available: hardware.n(),
            },
        };
    }
    let edges = problem.num_edges() + vertices - s_min.len();
    if edges > hardware.num_edges() {
        return ScreenResult::CertifiedInfeasible {
            violation: Violation::EdgeBudget {
                required: edges,
                available: hardware.num_edges(),
            },
        };
    }
    ScreenResult::Pass { s_min }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_min_examples() {
        assert_eq!(min_chain_size(4, 6, 3), Some(1));
        assert_eq!(min_chain_size(10, 4, 3), None);
        assert_eq!(min_chain_size(10, 4, 4), Some(4));
        assert_eq!(min_chain_size(3, 2, 5), None);
        assert_eq!(min_chain_size(2, 2, 1), Some(1));
        assert_eq!(min_chain_size(0, 0, 1), Some(1));
        assert_eq!(min_chain_size(7, 3, 5), Some(5));
    }

    #[test]
    fn max_degree_two_hardware_supports_at_most_two_neighbors() {
        // Exhaustive: every connected subset of a path or cycle has at most
        // two external neighbors.
        for h in [Graph::path(7), Graph::cycle(7)] {
            for mask in 1u32..(1 << 7) {
                let set: Vec<usize> = (0..7).filter(|&v| mask >> v & 1 == 1).collect();
                if !h.is_connected_subset(&set) {
                    continue;
                }
                let outside: std::collections::BTreeSet<usize> = set
                    .iter()
                    .flat_map(|&v| h.neighbors(v).iter().copied())
                    .filter(|w| mask >> w & 1 == 0)
                    .collect();
                assert!(outside.len() <= 2);
            }
        }
    }

    #[test]
    fn k5_into_path_fails_degree_bound() {
        let r = zero_phase_screen(&Graph::complete(5), &Graph::path(10), 3);
        assert_eq!(
            r,
            ScreenResult::CertifiedInfeasible {
                violation: Violation::DegreeBound {
                    vertex: 0,
                    degree: 4,
                    capacity: 2
                }
            }
        );
    }

    #[test]
    fn single_vertex_passes() {
        let r = zero_phase_screen(&Graph::empty(1), &Graph::empty(1), 1);
        assert_eq!(r, ScreenResult::Pass { s_min: vec![1] });
    }

    #[test]
    fn k4_into_path_is_a_degree_violation() {
        // Degree 3 exceeds the two-edge capacity of any chain in a path.
        let r = zero_phase_screen(&Graph::complete(4), &Graph::path(5), 3);
        match r {
            ScreenResult::CertifiedInfeasible { violation } => {
                assert_eq!(violation.condition(), Condition::DegreeBound)
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn edge_budget_violation() {
        // K4 into a 4-leaf star: degrees fit (Δ = 4) and 4 <= 5 vertices, but
        // six problem edges cannot fit into four hardware edges.
        let r = zero_phase_screen(&Graph::complete(4), &Graph::star(4), 3);
        assert_eq!(
            r,
            ScreenResult::CertifiedInfeasible {
                violation: Violation::EdgeBudget {
                    required: 6,
                    available: 4
                }
            }
        );
        let r = zero_phase_screen(&Graph::cycle(4), &Graph::path(4), 2);
        assert_eq!(r.s_min(), None);
    }

    #[test]
    fn vertex_budget_violation() {
        let r = zero_phase_screen(&Graph::empty(4), &Graph::complete(3), 1);
        assert_eq!(
            r,
            ScreenResult::CertifiedInfeasible {
                violation: Violation::VertexBudget {
                    required: 4,
                    available: 3
                }
            }
        );
    }

    #[test]
    fn json_shape() {
        let r = zero_phase_screen(&Graph::complete(4), &Graph::star(4), 3);
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"verdict":"certified_infeasible","violation":{"condition":"EdgeBudget","required":6,"available":4}}"#
        );
    }
}
