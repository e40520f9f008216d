use super::{Budget, Certificate, Meter, Outcome};
use crate::graph::Graph;
use crate::solution::{colors_used, Coloring};

/// DSATUR greedy coloring: repeatedly colors the vertex with the most
/// distinct neighbor colors (ties: higher degree, lower id) with the
/// smallest free color.
pub fn greedy_coloring(g: &Graph) -> Coloring {
    let n = g.n();
    let mut colors = vec![usize::MAX; n];
    let mut seen: Vec<Vec<bool>> = vec![Vec::new(); n];
    let mut sat = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colors[v] == usize::MAX)
            .max_by(|&a, &b| (sat[a], g.degree(a)).cmp(&(sat[b], g.degree(b))).then(b.cmp(&a)))
            .unwrap();
        let c = (0..).find(|&c| !seen[v].get(c).copied().unwrap_or(false)).unwrap();
        colors[v] = c;
        for &u in g.neighbors(v) {
            let s = &mut seen[u];
            if s.len() <= c {
                s.resize(c + 1, false);
            }
            if !s[c] {
                s[c] = true;
                sat[u] += 1;
            }
        }
    }
    colors
}

/// Size of a greedily grown clique, a lower bound on the chromatic number.
pub fn clique_lower_bound(g: &Graph) -> usize {
    let mut by_degree: Vec<usize> = (0..g.n()).collect();
    by_degree.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut best = usize::from(g.n() > 0);
    for &seed in &by_degree {
        if g.degree(seed) < best {
            break;
        }
        let mut clique = vec![seed];
        let mut nbrs: Vec<usize> = g.neighbors(seed).to_vec();
        nbrs.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
        for v in nbrs {
            if clique.iter().all(|&u| g.has_edge(u, v)) {
                clique.push(v);
            }
        }
        best = best.max(clique.len());
    }
    best
}

struct Colorer<'a> {
    g: &'a Graph,
    k: usize,
    colors: Vec<usize>,
    /// `conflicts[v * k + c]`: colored neighbors of `v` with color `c`.
    conflicts: Vec<u32>,
    sat: Vec<usize>,
    max_used: usize,
    meter: &'a mut Meter,
}

const NONE: usize = usize::MAX;

impl Colorer<'_> {
    fn set(&mut self, v: usize, c: usize, on: bool) {
        let k = self.k;
        self.colors[v] = if on { c } else { NONE };
        for &u in self.g.neighbors(v) {
            let slot = &mut self.conflicts[u * k + c];
            if on {
                *slot += 1;
                if *slot == 1 {
                    self.sat[u] += 1;
                }
            } else {
                *slot -= 1;
                if *slot == 0 {
                    self.sat[u] -= 1;
                }
            }
        }
    }

    /// Returns `Some(true)` when a coloring is complete, `Some(false)` on
    /// exhaustion of this subtree, `None` when the budget ran out.
    fn dfs(&mut self, remaining: usize) -> Option<bool> {
        if remaining == 0 {
            return Some(true);
        }
        let n = self.g.n();
        let v = (0..n)
            .filter(|&v| self.colors[v] == NONE)
            .max_by(|&a, &b| {
                (self.sat[a], self.g.degree(a))
                    .cmp(&(self.sat[b], self.g.degree(b)))
                    .then(b.cmp(&a))
            })
            .unwrap();
        // a fresh color is interchangeable with any other unused one
        let limit = self.k.min(self.max_used + 1);
        for c in 0..limit {
            if self.conflicts[v * self.k + c] != 0 {
                continue;
            }
            if !self.meter.tick() {
                return None;
            }
            let prev_max = self.max_used;
            self.max_used = self.max_used.max(c + 1);
            self.set(v, c, true);
            let r = self.dfs(remaining - 1);
            if r != Some(false) {
                return r;
            }
            self.set(v, c, false);
            self.max_used = prev_max;
        }
        Some(false)
    }
}

fn search(g: &Graph, k: usize, meter: &mut Meter) -> Option<Option<Coloring>> {
    let n = g.n();
    if n == 0 {
        return Some(Some(Vec::new()));
    }
    if k == 0 {
        return Some(None);
    }
    let mut s = Colorer {
        g,
        k,
        colors: vec![NONE; n],
        conflicts: vec![0; n * k],
        sat: vec![0; n],
        max_used: 0,
        meter,
    };
    match s.dfs(n) {
        None => None,
        Some(true) => Some(Some(s.colors)),
        Some(false) => Some(None),
    }
}

/// Decides k-colorability by DSATUR backtracking.
pub fn exact_color(g: &Graph, k: usize, budget: Budget) -> Certificate<Coloring> {
    let mut meter = Meter::new(budget);
    let k = k.min(g.n().max(1));
    let r = search(g, k, &mut meter);
    let nodes = meter.nodes;
    match r {
        None => Certificate {
            outcome: Outcome::Unknown { incumbent: None },
            nodes,
            objective: None,
            optimal: false,
        },
        Some(None) => Certificate {
            outcome: Outcome::Infeasible,
            nodes,
            objective: None,
            optimal: false,
        },
        Some(Some(solution)) => Certificate {
            objective: Some(colors_used(&solution) as u64),
            outcome: Outcome::Feasible { solution },
            nodes,
            optimal: false,
        },
    }
}

/// Chromatic number by deepening from a clique bound up to the greedy
/// color count. On budget exhaustion the greedy coloring is the incumbent.
pub fn min_color(g: &Graph, budget: Budget) -> Certificate<Coloring> {
    let greedy = greedy_coloring(g);
    let upper = colors_used(&greedy);
    let mut meter = Meter::new(budget);
    let found = |solution: Coloring, nodes| Certificate {
        objective: Some(colors_used(&solution) as u64),
        outcome: Outcome::Feasible { solution },
        nodes,
        optimal: true,
    };
    for k in clique_lower_bound(g)..upper {
        match search(g, k, &mut meter) {
            Some(Some(c)) => return found(c, meter.nodes),
            Some(None) => {}
            None => {
                return Certificate {
                    objective: Some(upper as u64),
                    outcome: Outcome::Unknown {
                        incumbent: Some(greedy),
                    },
                    nodes: meter.nodes,
                    optimal: false,
                }
            }
        }
    }
    found(greedy, meter.nodes)
}
