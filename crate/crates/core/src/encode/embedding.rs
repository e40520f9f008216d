use super::{DecodeError, EncodeError, EncodeLimits, EncodingStats};
use crate::chains::ChainFamily;
use crate::graph::Graph;
use crate::milp::{Assignment, Model, ModelBuilder, Sense};
use crate::solution::Embedding;

/// Chain-assignment model: one binary `x_{i}_{c}` per problem vertex `i` and
/// candidate chain `c`.
///
/// Variables of vertex `i` are contiguous, ordered like its candidate list.
#[derive(Debug)]
pub struct EmbeddingEncoding<'f> {
    pub model: Model,
    family: &'f ChainFamily,
    candidates: Vec<Vec<usize>>,
    offsets: Vec<usize>,
    stats: EncodingStats,
}

/// Counts the adjacency rows and the model's nonzeros (the disjointness
/// count is an upper bound) without building anything, so oversized models
/// fail fast.
fn precheck(
    problem: &Graph,
    family: &ChainFamily,
    candidates: &[Vec<usize>],
    limits: &EncodeLimits,
) -> Result<(), EncodeError> {
    let gamma = family.gamma();
    let mut member = vec![false; family.len()];
    let vars: usize = candidates.iter().map(Vec::len).sum();
    let mut rows = problem.n() + 1;
    let mut nonzeros = 2 * vars + candidates
        .iter()
        .flatten()
        .map(|&c| family.chain(c).size())
        .sum::<usize>();
    for k in 0..problem.n() {
        for &d in &candidates[k] {
            member[d] = true;
        }
        for &i in problem.neighbors(k) {
            rows += candidates[i].len();
            nonzeros += candidates[i]
                .iter()
                .map(|&c| 1 + gamma[c].iter().filter(|&&d| member[d]).count())
                .sum::<usize>();
        }
        for &d in &candidates[k] {
            member[d] = false;
        }
        if rows > limits.max_constraints {
            return Err(EncodeError::ModelTooLarge {
                what: "constraint",
                limit: limits.max_constraints,
            });
        }
        if nonzeros > limits.max_nonzeros {
            return Err(EncodeError::ModelTooLarge {
                what: "nonzero",
                limit: limits.max_nonzeros,
            });
        }
    }
    Ok(())
}

/// Builds the chain-assignment model.
///
/// * each problem vertex selects exactly one candidate chain;
/// * each hardware vertex is covered by at most one selected chain;
/// * for every arc `(i, k)` and candidate `C` of `i`:
///   `x_iC <= Σ x_kD` over candidates `D` of `k` adjacent to `C`;
/// * `Σ e(C)·x_iC + |E_P| <= |E_H|`.
///
/// Candidates of `i` are the chains with `s(C) >= s_min[i]` and
/// `|∂(C)| >= deg_P(i)`. The objective `Σ s(C)·x_iC` is attached for ranking.
pub fn encode_embedding<'f>(
    problem: &Graph,
    hardware: &Graph,
    family: &'f ChainFamily,
    s_min: &[usize],
    limits: EncodeLimits,
) -> Result<EmbeddingEncoding<'f>, EncodeError> {
    if s_min.len() != problem.n() {
        return Err(EncodeError::BoundsLength {
            expected: problem.n(),
            got: s_min.len(),
        });
    }
    let candidates: Vec<Vec<usize>> = (0..problem.n())
        .map(|i| family.candidates(problem.degree(i), s_min[i]))
        .collect();
    if let Some(vertex) = candidates.iter().position(Vec::is_empty) {
        return Err(EncodeError::NoCandidates { vertex });
    }

    precheck(problem, family, &candidates, &limits)?;

    let mut b = ModelBuilder::new();
    let mut offsets = Vec::with_capacity(problem.n() + 1);
    let mut objective = Vec::new();
    for (i, cands) in candidates.iter().enumerate() {
        offsets.push(b.num_vars());
        for &c in cands {
            b.add_binary(format!("x_{i}_{c}"));
            objective.push(family.chain(c).size() as i64);
        }
    }
    offsets.push(b.num_vars());
    let mut stats = EncodingStats {
        variables: b.num_vars(),
        ..Default::default()
    };
    let check = |b: &ModelBuilder| -> Result<(), EncodeError> {
        if b.num_constraints() > limits.max_constraints {
            return Err(EncodeError::ModelTooLarge {
                what: "constraint",
                limit: limits.max_constraints,
            });
        }
        if b.nonzeros() > limits.max_nonzeros {
            return Err(EncodeError::ModelTooLarge {
                what: "nonzero",
                limit: limits.max_nonzeros,
            });
        }
        Ok(())
    };

    for i in 0..problem.n() {
        b.add_constraint((offsets[i]..offsets[i + 1]).map(|v| (v, 1)), Sense::Eq, 1)?;
    }
    stats.by_class.insert("assignment", problem.n());

    let mut covering: Vec<Vec<usize>> = vec![Vec::new(); hardware.n()];
    for (i, cands) in candidates.iter().enumerate() {
        for (pos, &c) in cands.iter().enumerate() {
            for &h in &family.chain(c).vertices {
                covering[h].push(offsets[i] + pos);
            }
        }
    }
    let mut disjoint = 0;
    for vars in covering.iter().filter(|v| v.len() >= 2) {
        b.add_constraint(vars.iter().map(|&v| (v, 1)), Sense::LessEq, 1)?;
        disjoint += 1;
    }
    stats.by_class.insert("disjointness", disjoint);
    check(&b)?;

    // scratch[chain] = variable of (k, chain) + 1 while k is the target
    let gamma = family.gamma();
    let mut scratch = vec![0usize; family.len()];
    let mut adjacency = 0;
    for k in 0..problem.n() {
        if problem.degree(k) == 0 {
            continue;
        }
        for (pos, &d) in candidates[k].iter().enumerate() {
            scratch[d] = offsets[k] + pos + 1;
        }
        for &i in problem.neighbors(k) {
            for (pos, &c) in candidates[i].iter().enumerate() {
                let mut terms = vec![(offsets[i] + pos, 1)];
                terms.extend(
                    gamma[c]
                        .iter()
                        .filter(|&&d| scratch[d] != 0)
                        .map(|&d| (scratch[d] - 1, -1)),
                );
                b.add_constraint(terms, Sense::LessEq, 0)?;
                adjacency += 1;
            }
            check(&b)?;
        }
        for &d in &candidates[k] {
            scratch[d] = 0;
        }
    }
    stats.by_class.insert("adjacency", adjacency);

    let budget = hardware.num_edges() as i64 - problem.num_edges() as i64;
    let offsets_ref = &offsets;
    let terms: Vec<(usize, i64)> = candidates
        .iter()
        .enumerate()
        .flat_map(|(i, cands)| {
            cands.iter().enumerate().filter_map(move |(pos, &c)| {
                let e = family.chain(c).internal_edges as i64;
                (e > 0).then_some((offsets_ref[i] + pos, e))
            })
        })
        .collect();
    if !terms.is_empty() || budget < 0 {
        b.add_constraint(terms, Sense::LessEq, budget)?;
        stats.by_class.insert("edge_budget", 1);
    } else {
        stats.by_class.insert("edge_budget", 0);
    }

    b.set_objective(objective);
    stats.constraints = b.num_constraints();
    stats.nonzeros = b.nonzeros();
    Ok(EmbeddingEncoding {
        model: b.build(),
        family,
        candidates,
        offsets,
        stats,
    })
}

impl<'f> EmbeddingEncoding<'f> {
    pub fn family(&self) -> &'f ChainFamily {
        self.family
    }

    pub fn stats(&self) -> &EncodingStats {
        &self.stats
    }

    /// Candidate chain indices of problem vertex `i`.
    pub fn candidates(&self, i: usize) -> &[usize] {
        &self.candidates[i]
    }

    /// Variable of `(i, chain)` if `chain` is a candidate of `i`.
    pub fn var(&self, i: usize, chain: usize) -> Option<usize> {
        self.candidates[i]
            .binary_search(&chain)
            .ok()
            .map(|pos| self.offsets[i] + pos)
    }

    /// `(problem vertex, chain index)` of a variable.
    pub fn var_meaning(&self, var: usize) -> (usize, usize) {
        let i = self.offsets.partition_point(|&o| o <= var) - 1;
        (i, self.candidates[i][var - self.offsets[i]])
    }

    /// Reads the selected chain of every problem vertex.
    pub fn decode(&self, x: &Assignment) -> Result<Embedding, DecodeError> {
        if !self.model.is_feasible(x) {
            return Err(DecodeError::NotFeasible);
        }
        let mut emb = Embedding::new();
        for i in 0..self.candidates.len() {
            let var = (self.offsets[i]..self.offsets[i + 1])
                .find(|&v| x[v] == 1)
                .expect("assignment equality selects one chain");
            let (_, c) = self.var_meaning(var);
            emb.insert(i, self.family.chain(c).vertices.clone());
        }
        Ok(emb)
    }

    /// Maps an embedding onto the model's variables. Chains that are not
    /// candidates of their vertex leave that vertex unassigned.
    pub fn encode_solution(&self, emb: &Embedding) -> Assignment {
        let mut x = self.model.lower_assignment();
        for (i, chain) in emb.iter() {
            if i >= self.candidates.len() {
                continue;
            }
            if let Some(var) = self
                .family
                .index_of(chain)
                .and_then(|c| self.var(i, c))
            {
                x.0[var] = 1;
            }
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::screening::zero_phase_screen;

    fn encode<'f>(p: &Graph, h: &Graph, f: &'f ChainFamily) -> Result<EmbeddingEncoding<'f>, EncodeError> {
        let s_min = zero_phase_screen(p, h, f.max_size())
            .s_min()
            .map(<[usize]>::to_vec)
            .unwrap_or_else(|| vec![1; p.n()]);
        encode_embedding(p, h, f, &s_min, EncodeLimits::default())
    }

    fn feasible_points(m: &Model) -> Vec<Assignment> {
        let n = m.num_vars();
        (0u64..1 << n)
            .map(|mask| Assignment((0..n).map(|j| (mask >> j & 1) as i64).collect()))
            .filter(|x| m.is_feasible(x))
            .collect()
    }

    #[test]
    fn k2_into_k2() {
        let h = Graph::complete(2);
        let f = ChainFamily::enumerate(&h, 1).unwrap();
        let enc = encode(&Graph::complete(2), &h, &f).unwrap();
        assert_eq!(enc.model.num_vars(), 4);
        let pts = feasible_points(&enc.model);
        assert_eq!(pts.len(), 2);
        let mut decoded: Vec<Embedding> = pts.iter().map(|x| enc.decode(x).unwrap()).collect();
        decoded.sort_by_key(|e| e.chain(0).unwrap().to_vec());
        assert_eq!(decoded[0], Embedding::from_chains(vec![vec![0], vec![1]]));
        assert_eq!(decoded[1], Embedding::from_chains(vec![vec![1], vec![0]]));
    }

    #[test]
    fn k3_into_p3_is_infeasible() {
        let h = Graph::path(3);
        let f = ChainFamily::enumerate(&h, 1).unwrap();
        match encode(&Graph::complete(3), &h, &f) {
            Ok(enc) => assert!(feasible_points(&enc.model).is_empty()),
            Err(EncodeError::NoCandidates { .. }) => {}
            Err(e) => panic!("{e}"),
        }
        // the middle vertex is every vertex's only candidate
        let enc = encode_embedding(&Graph::complete(3), &h, &f, &[1, 1, 1], EncodeLimits::default())
            .unwrap();
        assert_eq!(enc.candidates(0), &[1]);
        assert!(feasible_points(&enc.model).is_empty());
    }

    #[test]
    fn single_vertex() {
        let h = Graph::empty(1);
        let f = ChainFamily::enumerate(&h, 1).unwrap();
        let enc = encode(&Graph::empty(1), &h, &f).unwrap();
        assert_eq!(enc.model.num_vars(), 1);
        assert_eq!(feasible_points(&enc.model), vec![Assignment(vec![1])]);
        assert_eq!(
            enc.decode(&Assignment(vec![1])).unwrap(),
            Embedding::from_chains(vec![vec![0]])
        );
        assert_eq!(enc.decode(&Assignment(vec![0])), Err(DecodeError::NotFeasible));
    }

    #[test]
    fn encode_solution_round_trip() {
        let h = Graph::cycle(5);
        let f = ChainFamily::enumerate(&h, 2).unwrap();
        let p = Graph::cycle(3);
        let enc = encode(&p, &h, &f).unwrap();
        let emb = Embedding::from_chains(vec![vec![0], vec![1, 2], vec![3, 4]]);
        let x = enc.encode_solution(&emb);
        assert!(enc.model.is_feasible(&x));
        assert_eq!(enc.decode(&x).unwrap(), emb);
        assert_eq!(enc.model.objective_value(&x), Some(5));
    }

    #[test]
    fn model_cap() {
        let h = Graph::complete(6);
        let f = ChainFamily::enumerate(&h, 2).unwrap();
        let limits = EncodeLimits {
            max_constraints: 10,
            max_nonzeros: usize::MAX,
        };
        let err = encode_embedding(&Graph::complete(3), &h, &f, &[1, 1, 1], limits).unwrap_err();
        assert!(matches!(err, EncodeError::ModelTooLarge { .. }));
    }

    #[test]
    fn nonzero_cap() {
        let h = crate::graph::chimera(1, 2, 4);
        let f = ChainFamily::enumerate(&h, 2).unwrap();
        let p = Graph::cycle(5);
        let full = encode(&p, &h, &f).unwrap().stats().nonzeros;
        let s_min = vec![1; 5];
        for (cap, ok) in [(full - 1, false), (2 * full, true)] {
            let limits = EncodeLimits {
                max_constraints: usize::MAX,
                max_nonzeros: cap,
            };
            assert_eq!(encode_embedding(&p, &h, &f, &s_min, limits).is_ok(), ok, "cap {cap}");
        }
    }
}
