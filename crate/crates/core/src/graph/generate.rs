use super::{Graph, GraphError};
use crate::rng::seeded;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

const REGULAR_ATTEMPTS: usize = 1000;

/// Graph family and its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GraphFamily {
    /// `G(n, p)`: every pair independently with probability `p`.
    ErdosRenyi { n: usize, p: f64 },
    /// Preferential attachment, `m` edges per new vertex, seeded by a star on
    /// `m + 1` vertices.
    BarabasiAlbert { n: usize, m: usize },
    /// Ring lattice of even degree `k`, each lattice edge rewired with
    /// probability `beta`.
    WattsStrogatz { n: usize, k: usize, beta: f64 },
    /// Uniform-ish `d`-regular graph from the pairing model.
    RandomRegular { n: usize, d: usize },
    /// Stochastic block model with contiguous blocks.
    Sbm { sizes: Vec<usize>, p_in: f64, p_out: f64 },
    /// Chimera topology, see [`chimera`].
    Chimera { m: usize, n: usize, t: usize },
}

impl GraphFamily {
    /// `G(n, p)` with `p = d / (n - 1)` so that the expected average degree is `d`.
    pub fn erdos_renyi_avg_degree(n: usize, d: f64) -> Self {
        let p = if n > 1 {
            (d / (n - 1) as f64).clamp(0.0, 1.0)
        } else {
            0.0
        };
        GraphFamily::ErdosRenyi { n, p }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GraphFamily::ErdosRenyi { .. } => "erdos_renyi",
            GraphFamily::BarabasiAlbert { .. } => "barabasi_albert",
            GraphFamily::WattsStrogatz { .. } => "watts_strogatz",
            GraphFamily::RandomRegular { .. } => "random_regular",
            GraphFamily::Sbm { .. } => "sbm",
            GraphFamily::Chimera { .. } => "chimera",
        }
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        let bad = |msg: String| Err(GraphError::InvalidParameters(msg));
        let prob = |name: &str, p: f64| {
            if (0.0..=1.0).contains(&p) {
                Ok(())
            } else {
                bad(format!("{name} = {p} outside [0, 1]"))
            }
        };
        match *self {
            GraphFamily::ErdosRenyi { p, .. } => prob("p", p),
            GraphFamily::BarabasiAlbert { n, m } => {
                if m == 0 || m >= n {
                    return bad(format!("barabasi_albert needs 1 <= m < n, got m={m}, n={n}"));
                }
                Ok(())
            }
            GraphFamily::WattsStrogatz { n, k, beta } => {
                if k % 2 != 0 || k >= n {
                    return bad(format!("watts_strogatz needs even k < n, got k={k}, n={n}"));
                }
                prob("beta", beta)
            }
            GraphFamily::RandomRegular { n, d } => {
                if (n * d) % 2 != 0 {
                    return bad(format!("random_regular needs n*d even, got n={n}, d={d}"));
                }
                if n > 0 && d >= n {
                    return bad(format!("random_regular needs d < n, got d={d}, n={n}"));
                }
                Ok(())
            }
            GraphFamily::Sbm {
                ref sizes,
                p_in,
                p_out,
            } => {
                if sizes.is_empty() {
                    return bad("sbm needs at least one block".into());
                }
                prob("p_in", p_in)?;
                prob("p_out", p_out)
            }
            GraphFamily::Chimera { m, n, t } => {
                if m == 0 || n == 0 || t == 0 {
                    return bad(format!("chimera needs m, n, t >= 1, got ({m}, {n}, {t})"));
                }
                Ok(())
            }
        }
    }
}

/// A family, its parameters and the seed that fixes the sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphSpec {
    #[serde(flatten)]
    pub family: GraphFamily,
    pub seed: u64,
    /// Drop degree-0 vertices (with dense relabeling) after generation.
    #[serde(default)]
    pub remove_isolated: bool,
}

impl GraphSpec {
    pub fn new(family: GraphFamily, seed: u64) -> Self {
        GraphSpec {
            family,
            seed,
            remove_isolated: false,
        }
    }

    pub fn without_isolated(mut self) -> Self {
        self.remove_isolated = true;
        self
    }

    /// Samples the graph. Same spec, same graph, on every platform: the
    /// random stream is ChaCha8 seeded through `seed_from_u64(seed)`.
    pub fn generate(&self) -> Result<Graph, GraphError> {
        self.family.validate()?;
        let mut rng = seeded(self.seed);
        let g = match self.family {
            GraphFamily::ErdosRenyi { n, p } => erdos_renyi(n, p, &mut rng),
            GraphFamily::BarabasiAlbert { n, m } => barabasi_albert(n, m, &mut rng),
            GraphFamily::WattsStrogatz { n, k, beta } => watts_strogatz(n, k, beta, &mut rng),
            GraphFamily::RandomRegular { n, d } => random_regular(n, d, &mut rng)?,
            GraphFamily::Sbm {
                ref sizes,
                p_in,
                p_out,
            } => sbm(sizes, p_in, p_out, &mut rng),
            GraphFamily::Chimera { m, n, t } => chimera(m, n, t),
        };
        Ok(if self.remove_isolated {
            g.without_isolated().0
        } else {
            g
        })
    }
}

fn erdos_renyi<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut set = BTreeSet::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                set.insert((u, v));
            }
        }
    }
    Graph::from_edge_set(n, set)
}

fn barabasi_albert<R: Rng>(n: usize, m: usize, rng: &mut R) -> Graph {
    let mut set: BTreeSet<(usize, usize)> = (1..=m).map(|v| (0, v)).collect();
    let mut repeated: Vec<usize> = Vec::with_capacity(2 * m * n);
    repeated.extend(std::iter::repeat_n(0, m));
    repeated.extend(1..=m);
    for source in m + 1..n {
        let mut targets = BTreeSet::new();
        while targets.len() < m {
            targets.insert(*repeated.choose(rng).expect("pool is nonempty"));
        }
        for &t in &targets {
            set.insert((t, source));
        }
        repeated.extend(targets.iter().copied());
        repeated.extend(std::iter::repeat_n(source, m));
    }
    Graph::from_edge_set(n, set)
}

fn watts_strogatz<R: Rng>(n: usize, k: usize, beta: f64, rng: &mut R) -> Graph {
    let norm = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut set = BTreeSet::new();
    for j in 1..=k / 2 {
        for u in 0..n {
            set.insert(norm(u, (u + j) % n));
        }
    }
    let mut degree = vec![k; n];
    for j in 1..=k / 2 {
        for u in 0..n {
            let v = (u + j) % n;
            if rng.gen::<f64>() >= beta {
                continue;
            }
            if degree[u] >= n - 1 {
                continue;
            }
            let w = loop {
                let w = rng.gen_range(0..n);
                if w != u && !set.contains(&norm(u, w)) {
                    break w;
                }
            };
            if set.remove(&norm(u, v)) {
                degree[v] -= 1;
                set.insert(norm(u, w));
                degree[w] += 1;
            }
        }
    }
    Graph::from_edge_set(n, set)
}

fn random_regular<R: Rng>(n: usize, d: usize, rng: &mut R) -> Result<Graph, GraphError> {
    if d == 0 || n == 0 {
        return Ok(Graph::empty(n));
    }
    for _ in 0..REGULAR_ATTEMPTS {
        if let Some(set) = try_pairing(n, d, rng) {
            return Ok(Graph::from_edge_set(n, set));
        }
    }
    Err(GraphError::Unconstructible {
        family: "random_regular",
        attempts: REGULAR_ATTEMPTS,
    })
}

/// One round of the pairing model with repair: pair shuffled stubs, keep the
/// valid pairs, and re-pair the leftovers until none remain or no valid pair
/// is possible among them.
fn try_pairing<R: Rng>(n: usize, d: usize, rng: &mut R) -> Option<BTreeSet<(usize, usize)>> {
    let mut edges = BTreeSet::new();
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    while !stubs.is_empty() {
        let mut leftover: BTreeMap<usize, usize> = BTreeMap::new();
        stubs.shuffle(rng);
        for pair in stubs.chunks_exact(2) {
            let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if a != b && !edges.contains(&(a, b)) {
                edges.insert((a, b));
            } else {
                *leftover.entry(a).or_default() += 1;
                *leftover.entry(b).or_default() += 1;
            }
        }
        let nodes: Vec<usize> = leftover.keys().copied().collect();
        let suitable = nodes.is_empty()
            || nodes.iter().enumerate().any(|(i, &a)| {
                nodes[i + 1..].iter().any(|&b| !edges.contains(&(a, b)))
            });
        if !suitable {
            return None;
        }
        stubs = leftover
            .into_iter()
            .flat_map(|(v, c)| std::iter::repeat_n(v, c))
            .collect();
    }
    Some(edges)
}

fn sbm<R: Rng>(sizes: &[usize], p_in: f64, p_out: f64, rng: &mut R) -> Graph {
    let block: Vec<usize> = sizes
        .iter()
        .enumerate()
        .flat_map(|(b, &s)| std::iter::repeat_n(b, s))
        .collect();
    let n = block.len();
    let mut set = BTreeSet::new();
    for u in 0..n {
        for v in u + 1..n {
            let p = if block[u] == block[v] { p_in } else { p_out };
            if rng.gen::<f64>() < p {
                set.insert((u, v));
            }
        }
    }
    Graph::from_edge_set(n, set)
}

/// Chimera graph: an `m x n` grid of `K_{t,t}` unit cells.
///
/// Vertex `((r * n + c) * 2 + side) * t + k` is qubit `k` on shore `side`
/// (0 = left, 1 = right) of the cell in row `r`, column `c`. Left-shore qubits
/// couple to the same qubit in the cell below; right-shore qubits couple to
/// the same qubit in the cell to the right.
pub fn chimera(m: usize, n: usize, t: usize) -> Graph {
    let id = |r: usize, c: usize, side: usize, k: usize| ((r * n + c) * 2 + side) * t + k;
    let mut set = BTreeSet::new();
    for r in 0..m {
        for c in 0..n {
            for a in 0..t {
                for b in 0..t {
                    set.insert((id(r, c, 0, a), id(r, c, 1, b)));
                }
                if r + 1 < m {
                    set.insert((id(r, c, 0, a), id(r + 1, c, 0, a)));
                }
                if c + 1 < n {
                    set.insert((id(r, c, 1, a), id(r, c + 1, 1, a)));
                }
            }
        }
    }
    Graph::from_edge_set(2 * m * n * t, set)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(family: GraphFamily, seed: u64) -> Graph {
        GraphSpec::new(family, seed).generate().unwrap()
    }

    #[test]
    fn er_p_one_is_complete() {
        let g = gen(GraphFamily::ErdosRenyi { n: 5, p: 1.0 }, 3);
        assert_eq!(g, Graph::complete(5));
        assert_eq!(g.num_edges(), 10);
    }

    #[test]
    fn er_is_deterministic() {
        let f = GraphFamily::erdos_renyi_avg_degree(100, 4.0);
        assert_eq!(f, GraphFamily::ErdosRenyi { n: 100, p: 4.0 / 99.0 });
        assert_eq!(gen(f.clone(), 42), gen(f.clone(), 42));
        assert_ne!(gen(f.clone(), 42), gen(f, 43));
    }

    #[test]
    fn ws_without_rewiring_is_ring_lattice() {
        let g = gen(GraphFamily::WattsStrogatz { n: 10, k: 4, beta: 0.0 }, 1);
        assert_eq!(g.num_edges(), 20);
        for v in 0..10 {
            assert_eq!(g.degree(v), 4);
            assert!(g.has_edge(v, (v + 1) % 10));
            assert!(g.has_edge(v, (v + 2) % 10));
        }
    }

    #[test]
    fn ws_rewiring_preserves_edge_count() {
        let g = gen(GraphFamily::WattsStrogatz { n: 30, k: 6, beta: 0.5 }, 9);
        assert_eq!(g.num_edges(), 90);
    }

    #[test]
    fn regular_degrees() {
        for (n, d, seed) in [(20, 12, 1), (10, 3, 2), (50, 4, 3), (7, 6, 4), (21, 10, 5)] {
            let g = gen(GraphFamily::RandomRegular { n, d }, seed);
            assert!((0..n).all(|v| g.degree(v) == d), "n={n} d={d}");
        }
    }

    #[test]
    fn ba_edge_count() {
        let g = gen(GraphFamily::BarabasiAlbert { n: 20, m: 3 }, 5);
        // star on m+1 vertices, then m edges per remaining vertex
        assert_eq!(g.num_edges(), 3 + 3 * 16);
    }

    #[test]
    fn sbm_p_in_one_p_out_zero_gives_cliques() {
        let g = gen(
            GraphFamily::Sbm {
                sizes: vec![3, 4],
                p_in: 1.0,
                p_out: 0.0,
            },
            0,
        );
        assert_eq!(g.num_edges(), 3 + 6);
        assert!(!g.has_edge(2, 3));
    }

    #[test]
    fn invalid_parameters() {
        let bad = [
            GraphFamily::ErdosRenyi { n: 4, p: 1.5 },
            GraphFamily::WattsStrogatz { n: 10, k: 3, beta: 0.1 },
            GraphFamily::WattsStrogatz { n: 4, k: 4, beta: 0.1 },
            GraphFamily::RandomRegular { n: 5, d: 3 },
            GraphFamily::BarabasiAlbert { n: 3, m: 3 },
            GraphFamily::Chimera { m: 0, n: 1, t: 4 },
        ];
        for f in bad {
            assert!(matches!(
                GraphSpec::new(f, 0).generate(),
                Err(GraphError::InvalidParameters(_))
            ));
        }
    }

    #[test]
    fn chimera_single_cell() {
        let g = chimera(1, 1, 4);
        assert_eq!((g.n(), g.num_edges()), (8, 16));
        for a in 0..4 {
            for b in 4..8 {
                assert!(g.has_edge(a, b));
            }
        }
        assert_eq!(chimera(1, 1, 1), Graph::path(2));
    }

    #[test]
    fn chimera_two_by_two() {
        let g = chimera(2, 2, 4);
        assert_eq!((g.n(), g.num_edges()), (32, 80));
        assert_eq!(g.max_degree(), 5);
        let g = chimera(3, 3, 4);
        assert_eq!(g.max_degree(), 6);
    }

    #[test]
    fn spec_serde_round_trip() {
        let spec = GraphSpec::new(GraphFamily::Chimera { m: 2, n: 1, t: 4 }, 7);
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(
            text,
            r#"{"family":"chimera","m":2,"n":1,"t":4,"seed":7,"remove_isolated":false}"#
        );
        let back: GraphSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
    }
}
