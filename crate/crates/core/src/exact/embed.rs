use super::{Budget, Certificate, Meter, Outcome};
use crate::chains::{ChainFamily, DEFAULT_CHAIN_CAP};
use crate::graph::Graph;
use crate::solution::Embedding;

/// Exact minor-embedding search with chains of at most `chain_limit`
/// vertices. With `optimize`, minimizes total chain vertices.
pub fn exact_embed(
    problem: &Graph,
    hardware: &Graph,
    chain_limit: usize,
    budget: Budget,
    optimize: bool,
) -> Certificate<Embedding> {
    if problem.n() == 0 {
        return done(Embedding::new(), 0, optimize);
    }
    if chain_limit == 0 {
        return Certificate {
            outcome: Outcome::Infeasible,
            nodes: 0,
            objective: None,
            optimal: false,
        };
    }
    match ChainFamily::enumerate_capped(hardware, chain_limit, DEFAULT_CHAIN_CAP) {
        Ok(family) => exact_embed_with_family(problem, hardware, &family, budget, optimize),
        Err(_) => Certificate {
            outcome: Outcome::Unknown { incumbent: None },
            nodes: 0,
            objective: None,
            optimal: false,
        },
    }
}

fn done(emb: Embedding, nodes: u64, optimal: bool) -> Certificate<Embedding> {
    Certificate {
        objective: Some(emb.total_vertices() as u64),
        outcome: Outcome::Feasible { solution: emb },
        nodes,
        optimal,
    }
}

/// As [`exact_embed`] over a prebuilt chain family.
///
/// Each problem vertex keeps a domain of chains that are disjoint from the
/// chains placed so far and touch every placed neighbor's chain. The search
/// branches on the vertex with the smallest domain, trying its chains
/// smallest first, and backtracks when a domain empties or the vertex and
/// edge budgets (or, when optimizing, the incumbent) cannot be met by the
/// smallest remaining chains.
pub fn exact_embed_with_family(
    problem: &Graph,
    hardware: &Graph,
    family: &ChainFamily,
    budget: Budget,
    optimize: bool,
) -> Certificate<Embedding> {
    let n = problem.n();
    if n == 0 {
        return done(Embedding::new(), 0, optimize);
    }
    // the boundary filter alone; sizes are left to the search
    let domains: Vec<Vec<usize>> = (0..n)
        .map(|i| family.candidates(problem.degree(i), 1))
        .collect();
    if domains.iter().any(Vec::is_empty) {
        return Certificate {
            outcome: Outcome::Infeasible,
            nodes: 0,
            objective: None,
            optimal: false,
        };
    }

    let words = hardware.n().div_ceil(64).max(1);
    let mut vbits = vec![0u64; family.len() * words];
    let mut bbits = vec![0u64; family.len() * words];
    for (c, ch) in family.chains().iter().enumerate() {
        for &v in &ch.vertices {
            vbits[c * words + v / 64] |= 1 << (v % 64);
        }
        for &v in &ch.boundary {
            bbits[c * words + v / 64] |= 1 << (v % 64);
        }
    }

    let mut s = Embedder {
        problem,
        family,
        words,
        vbits,
        bbits,
        used_count: 0,
        edges_used: 0,
        assign: vec![None; n],
        placed_neighbors: vec![0; n],
        vertex_budget: hardware.n(),
        edge_budget: hardware.num_edges() as i64 - problem.num_edges() as i64,
        optimize,
        best: None,
        meter: Meter::new(budget),
    };
    s.dfs(&domains, n);

    let to_embedding = |chains: &[usize]| {
        Embedding::from_chains(
            chains
                .iter()
                .map(|&c| family.chain(c).vertices.clone())
                .collect(),
        )
    };
    let nodes = s.meter.nodes;
    let incumbent = s.best.as_ref().map(|(_, ch)| to_embedding(ch));
    if s.meter.exhausted {
        return Certificate {
            objective: incumbent.as_ref().map(|e| e.total_vertices() as u64),
            outcome: Outcome::Unknown { incumbent },
            nodes,
            optimal: false,
        };
    }
    match incumbent {
        Some(emb) => done(emb, nodes, optimize),
        None => Certificate {
            outcome: Outcome::Infeasible,
            nodes,
            objective: None,
            optimal: false,
        },
    }
}

struct Embedder<'a> {
    problem: &'a Graph,
    family: &'a ChainFamily,
    words: usize,
    vbits: Vec<u64>,
    bbits: Vec<u64>,
    used_count: usize,
    edges_used: usize,
    assign: Vec<Option<usize>>,
    placed_neighbors: Vec<usize>,
    vertex_budget: usize,
    edge_budget: i64,
    optimize: bool,
    best: Option<(usize, Vec<usize>)>,
    meter: Meter,
}

impl Embedder<'_> {
    fn vb(&self, c: usize) -> &[u64] {
        &self.vbits[c * self.words..(c + 1) * self.words]
    }

    fn bb(&self, c: usize) -> &[u64] {
        &self.bbits[c * self.words..(c + 1) * self.words]
    }

    fn disjoint(&self, c: usize, d: usize) -> bool {
        self.vb(c).iter().zip(self.vb(d)).all(|(a, b)| a & b == 0)
    }

    /// `c` contains a vertex adjacent to chain `d`.
    fn adjacent(&self, c: usize, d: usize) -> bool {
        self.vb(c).iter().zip(self.bb(d)).any(|(a, b)| a & b != 0)
    }

    /// Smallest chain size and internal edge count over the unplaced
    /// vertices other than `skip`.
    fn remaining_minima(&self, domains: &[Vec<usize>], skip: usize) -> (usize, usize) {
        let (mut size, mut edges) = (0, 0);
        for (k, dom) in domains.iter().enumerate() {
            if k == skip || self.assign[k].is_some() {
                continue;
            }
            // domains stay sorted by size
            size += self.family.chain(dom[0]).size();
            edges += dom
                .iter()
                .map(|&d| self.family.chain(d).internal_edges)
                .min()
                .unwrap();
        }
        (size, edges)
    }

    fn over_budget(&self, size: usize, edges: usize) -> bool {
        size > self.vertex_budget
            || edges as i64 > self.edge_budget
            || (self.optimize && self.best.as_ref().is_some_and(|(b, _)| size >= *b))
    }

    /// Returns true to stop the search.
    fn dfs(&mut self, domains: &[Vec<usize>], unplaced: usize) -> bool {
        if unplaced == 0 {
            let chains: Vec<usize> = self.assign.iter().map(|c| c.unwrap()).collect();
            self.best = Some((self.used_count, chains));
            return !self.optimize;
        }
        let p = self.problem;
        let i = (0..p.n())
            .filter(|&v| self.assign[v].is_none())
            .min_by(|&a, &b| {
                domains[a]
                    .len()
                    .cmp(&domains[b].len())
                    .then(self.placed_neighbors[b].cmp(&self.placed_neighbors[a]))
                    .then(p.degree(b).cmp(&p.degree(a)))
                    .then(a.cmp(&b))
            })
            .unwrap();
        let (rest_size, rest_edges) = self.remaining_minima(domains, i);

        for &c in &domains[i] {
            let ch = self.family.chain(c);
            if self.used_count + ch.size() + rest_size > self.vertex_budget
                || (self.optimize
                    && self
                        .best
                        .as_ref()
                        .is_some_and(|(b, _)| self.used_count + ch.size() + rest_size >= *b))
            {
                // chains only grow from here
                break;
            }
            if (self.edges_used + ch.internal_edges + rest_edges) as i64 > self.edge_budget {
                continue;
            }
            if !self.meter.tick() {
                return true;
            }
            let mut next: Vec<Vec<usize>> = Vec::with_capacity(domains.len());
            let mut wiped = false;
            for (k, dom) in domains.iter().enumerate() {
                if k == i || self.assign[k].is_some() || wiped {
                    next.push(Vec::new());
                    continue;
                }
                let linked = p.has_edge(i, k);
                let kept: Vec<usize> = dom
                    .iter()
                    .copied()
                    .filter(|&e| self.disjoint(e, c) && (!linked || self.adjacent(e, c)))
                    .collect();
                wiped = kept.is_empty();
                next.push(kept);
            }
            if wiped {
                continue;
            }

            self.used_count += ch.size();
            self.edges_used += ch.internal_edges;
            self.assign[i] = Some(c);
            let (ns, ne) = self.remaining_minima(&next, usize::MAX);
            let stop = if self.over_budget(self.used_count + ns, self.edges_used + ne) {
                false
            } else {
                for &k in p.neighbors(i) {
                    self.placed_neighbors[k] += 1;
                }
                let stop = self.dfs(&next, unplaced - 1);
                for &k in p.neighbors(i) {
                    self.placed_neighbors[k] -= 1;
                }
                stop
            };
            self.assign[i] = None;
            self.edges_used -= ch.internal_edges;
            self.used_count -= ch.size();
            if stop {
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::chimera;
    use crate::verify::verify_embedding;

    #[test]
    fn k2_into_k2() {
        let c = exact_embed(&Graph::complete(2), &Graph::complete(2), 1, Budget::default(), true);
        assert!(c.is_feasible());
        assert_eq!(c.objective, Some(2));
        assert!(c.optimal);
    }

    #[test]
    fn k3_into_path() {
        let c = exact_embed(&Graph::complete(3), &Graph::path(3), 1, Budget::default(), false);
        assert!(c.is_infeasible());
    }

    #[test]
    fn k4_into_chimera_cell() {
        let h = chimera(1, 1, 4);
        let p = Graph::complete(4);
        let c = exact_embed(&p, &h, 2, Budget::default(), true);
        let emb = c.solution().expect("K4 embeds in K4,4");
        verify_embedding(&p, &h, 2, emb).unwrap();
        assert!(c.objective.unwrap() <= 6);
        assert_eq!(c.objective, Some(6));
    }

    #[test]
    fn k3_into_c4_needs_one_long_chain() {
        let c = exact_embed(&Graph::complete(3), &Graph::cycle(4), 2, Budget::default(), true);
        assert_eq!(c.objective, Some(4));
        let c = exact_embed(&Graph::complete(3), &Graph::cycle(4), 1, Budget::default(), true);
        assert!(c.is_infeasible());
    }

    #[test]
    fn budget_gives_unknown() {
        let h = chimera(1, 2, 4);
        let c = exact_embed(&Graph::complete(6), &h, 3, Budget::nodes(5), false);
        assert!(c.is_unknown());
    }
}
