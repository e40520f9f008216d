use super::{DecodeError, EncodingStats};
use crate::exact::greedy_coloring;
use crate::graph::Graph;
use crate::milp::{Assignment, Model, ModelBuilder, Sense};
use crate::solution::{colors_used, Coloring};

/// `x_{i}_{c}` is variable `i * palette + c`; for min-coloring the usage
/// indicators `y_{c}` follow at `n * palette + c`.
#[derive(Debug)]
pub struct ColoringEncoding {
    pub model: Model,
    n: usize,
    palette: usize,
    with_usage: bool,
    stats: EncodingStats,
}

/// k-coloring feasibility: one color per vertex, endpoints of every edge
/// never share a color.
pub fn encode_kcoloring(graph: &Graph, k: usize) -> ColoringEncoding {
    build(graph, k, false)
}

/// Min-coloring over a palette sized by a greedy coloring, with usage
/// indicators `x_ic <= y_c`, symmetry breaking `y_{c+1} <= y_c`, and
/// objective `Σ y_c`.
pub fn encode_mincoloring(graph: &Graph) -> ColoringEncoding {
    let palette = colors_used(&greedy_coloring(graph));
    build(graph, palette, true)
}

fn build(graph: &Graph, palette: usize, with_usage: bool) -> ColoringEncoding {
    let n = graph.n();
    let mut b = ModelBuilder::new();
    for i in 0..n {
        for c in 0..palette {
            b.add_binary(format!("x_{i}_{c}"));
        }
    }
    let x = |i: usize, c: usize| i * palette + c;
    let mut stats = EncodingStats::default();
    for i in 0..n {
        b.add_constraint((0..palette).map(|c| (x(i, c), 1)), Sense::Eq, 1)
            .unwrap();
    }
    stats.by_class.insert("assignment", n);
    for &(u, v) in graph.edges() {
        for c in 0..palette {
            b.add_constraint([(x(u, c), 1), (x(v, c), 1)], Sense::LessEq, 1)
                .unwrap();
        }
    }
    stats.by_class.insert("edge", graph.num_edges() * palette);

    if with_usage {
        let y0 = n * palette;
        for c in 0..palette {
            b.add_binary(format!("y_{c}"));
        }
        for i in 0..n {
            for c in 0..palette {
                b.add_constraint([(x(i, c), 1), (y0 + c, -1)], Sense::LessEq, 0)
                    .unwrap();
            }
        }
        for c in 0..palette.saturating_sub(1) {
            b.add_constraint([(y0 + c + 1, 1), (y0 + c, -1)], Sense::LessEq, 0)
                .unwrap();
        }
        stats.by_class.insert("link", n * palette);
        stats.by_class.insert("symmetry", palette.saturating_sub(1));
        let mut obj = vec![0; y0];
        obj.extend(std::iter::repeat_n(1, palette));
        b.set_objective(obj);
    }
    stats.variables = b.num_vars();
    stats.constraints = b.num_constraints();
    stats.nonzeros = b.nonzeros();
    ColoringEncoding {
        model: b.build(),
        n,
        palette,
        with_usage,
        stats,
    }
}

impl ColoringEncoding {
    pub fn palette(&self) -> usize {
        self.palette
    }

    pub fn stats(&self) -> &EncodingStats {
        &self.stats
    }

    pub fn decode(&self, x: &Assignment) -> Result<Coloring, DecodeError> {
        if !self.model.is_feasible(x) {
            return Err(DecodeError::NotFeasible);
        }
        Ok((0..self.n)
            .map(|i| {
                (0..self.palette)
                    .find(|&c| x[i * self.palette + c] == 1)
                    .expect("assignment equality selects one color")
            })
            .collect())
    }

    /// Maps a coloring onto the variables; colors outside the palette leave
    /// the vertex unassigned. Usage indicators are set for used colors.
    pub fn encode_solution(&self, coloring: &[usize]) -> Assignment {
        let mut x = self.model.lower_assignment();
        for (i, &c) in coloring.iter().enumerate().take(self.n) {
            if c < self.palette {
                x.0[i * self.palette + c] = 1;
                if self.with_usage {
                    x.0[self.n * self.palette + c] = 1;
                }
            }
        }
        x
    }
}
