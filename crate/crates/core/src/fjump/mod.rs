//! Feasibility Jump: weighted single-variable local search over a
//! [`Model`], started from an arbitrary (typically LLM-proposed) point.

mod phase2;

pub use phase2::{fj_phase2, fj_phase2_observed, Phase2Config, Phase2Error};

use crate::milp::{Activities, Assignment, Model};
use crate::rng::seeded;
use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::time::{Duration, Instant};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FjConfig {
    pub max_iterations: u64,
    /// Size of the promising-set sample examined per greedy move.
    pub sample_cap: usize,
    pub weight_increment: i64,
    pub seed: u64,
    pub time_limit: Option<Duration>,
}

impl Default for FjConfig {
    fn default() -> Self {
        FjConfig {
            max_iterations: 100_000,
            sample_cap: 25,
            weight_increment: 1,
            seed: 0,
            time_limit: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FjStatus {
    Feasible,
    LimitReached,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FjResult {
    pub status: FjStatus,
    /// The feasible point, or the best point under the final weights.
    pub assignment: Assignment,
    /// Moves performed.
    pub iterations: u64,
    pub weights: Vec<i64>,
}

impl FjResult {
    pub fn is_feasible(&self) -> bool {
        self.status == FjStatus::Feasible
    }
}

/// Best alternative value of a variable and the weighted-infeasibility
/// decrease it achieves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Jump {
    pub value: i64,
    pub score: i64,
}

/// Jump value and score of variable `j`; `None` when its domain is a
/// single value.
pub fn jump(model: &Model, x: &Assignment, weights: &[i64], j: usize) -> Option<Jump> {
    let lhs = Activities::new(model, x);
    jump_with(model, x.values(), lhs.as_slice(), weights, j)
}

fn jump_with(model: &Model, x: &[i64], lhs: &[i64], w: &[i64], j: usize) -> Option<Jump> {
    let (lo, hi) = model.bounds(j);
    if lo == hi {
        return None;
    }
    let xj = x[j];
    let column = model.column(j);
    let cost = |t: i64| -> i64 {
        let d = t - xj;
        column
            .iter()
            .map(|&(c, a)| w[c] * model.constraint(c).violation_at(lhs[c] + a * d))
            .sum()
    };
    let current = cost(xj);
    if lo == 0 && hi == 1 {
        let value = 1 - xj;
        return Some(Jump {
            value,
            score: current - cost(value),
        });
    }
    let mut values = vec![lo, hi];
    for &(c, a) in column {
        // x_j at which constraint c becomes tight
        let num = model.constraint(c).rhs - lhs[c] + a * xj;
        values.push(num.div_euclid(a));
        values.push(-((-num).div_euclid(a)));
    }
    let mut best: Option<(i64, i64)> = None;
    for t in values.into_iter().map(|t| t.clamp(lo, hi)).filter(|&t| t != xj) {
        let f = cost(t);
        let better = match best {
            None => true,
            Some((bt, bf)) => {
                (f, (t - xj).abs(), t) < (bf, (bt - xj).abs(), bt)
            }
        };
        if better {
            best = Some((t, f));
        }
    }
    best.map(|(value, f)| Jump {
        value,
        score: current - f,
    })
}

/// Index set with O(1) insert, remove and uniform sampling.
#[derive(Debug, Clone)]
struct IndexSet {
    items: Vec<usize>,
    pos: Vec<usize>,
}

impl IndexSet {
    fn new(universe: usize) -> Self {
        IndexSet {
            items: Vec::new(),
            pos: vec![usize::MAX; universe],
        }
    }

    fn set(&mut self, i: usize, member: bool) {
        let present = self.pos[i] != usize::MAX;
        if member && !present {
            self.pos[i] = self.items.len();
            self.items.push(i);
        } else if !member && present {
            let p = self.pos[i];
            let last = *self.items.last().unwrap();
            self.items.swap_remove(p);
            if last != i {
                self.pos[last] = p;
            }
            self.pos[i] = usize::MAX;
        }
    }
}

/// Entries of unit-coefficient binary rows, each row split into "rising"
/// entries (a flip raises the activity by one) followed by "falling" ones.
/// Entries are identified by their position in the flattened columns.
struct Sides {
    row_start: Vec<usize>,
    /// Row-major entry ids; empty range for rows that are not tracked.
    slots: Vec<u32>,
    split: Vec<usize>,
    /// Per entry: variable, row, position in `slots`.
    var: Vec<u32>,
    row: Vec<u32>,
    pos: Vec<u32>,
    col_start: Vec<usize>,
}

impl Sides {
    fn new(model: &Model, x: &[i64], unit: &[bool]) -> Self {
        let n = model.num_vars();
        let m = model.num_constraints();
        let mut col_start = Vec::with_capacity(n + 1);
        col_start.push(0);
        for j in 0..n {
            col_start.push(col_start[j] + model.column(j).len());
        }
        let mut row_start = Vec::with_capacity(m + 1);
        row_start.push(0);
        for c in 0..m {
            let len = if unit[c] { model.constraint(c).coeffs.len() } else { 0 };
            row_start.push(row_start[c] + len);
        }
        let entries = col_start[n];
        let mut sides = Sides {
            slots: vec![0; row_start[m]],
            split: row_start[..m].to_vec(),
            row_start,
            var: vec![0; entries],
            row: vec![0; entries],
            pos: vec![u32::MAX; entries],
            col_start,
        };
        // rising entries fill each row from the front, falling from the back
        let mut back: Vec<usize> = sides.row_start[1..].to_vec();
        for (j, &xj) in x.iter().enumerate().take(n) {
            for (i, &(c, a)) in model.column(j).iter().enumerate() {
                let e = sides.col_start[j] + i;
                sides.var[e] = j as u32;
                sides.row[e] = c as u32;
                if !unit[c] {
                    continue;
                }
                let p = if (xj == 0) == (a > 0) {
                    sides.split[c] += 1;
                    sides.split[c] - 1
                } else {
                    back[c] -= 1;
                    back[c]
                };
                sides.slots[p] = e as u32;
                sides.pos[e] = p as u32;
            }
        }
        sides
    }

    /// Moves every tracked entry of variable `j` to the other side.
    fn flip(&mut self, j: usize) {
        for e in self.col_start[j]..self.col_start[j + 1] {
            let p = self.pos[e];
            if p == u32::MAX {
                continue;
            }
            let (p, c) = (p as usize, self.row[e] as usize);
            let q = if p < self.split[c] {
                self.split[c] -= 1;
                self.split[c]
            } else {
                self.split[c] += 1;
                self.split[c] - 1
            };
            let other = self.slots[q];
            self.slots.swap(p, q);
            self.pos[other as usize] = p as u32;
            self.pos[e] = q as u32;
        }
    }
}

struct Search<'m> {
    model: &'m Model,
    x: Vec<i64>,
    lhs: Vec<i64>,
    w: Vec<i64>,
    jumps: Vec<Option<Jump>>,
    promising: IndexSet,
    violated: IndexSet,
    f: i64,
    binary: Vec<bool>,
    /// Largest coefficient magnitude per constraint.
    span: Vec<i64>,
    /// Constraints whose variables are all binary.
    binary_row: Vec<bool>,
    /// Binary rows with all coefficients `±1`, tracked in `sides`.
    unit: Vec<bool>,
    sides: Sides,
    /// Per-variable stamp for deduplicating full recomputations.
    stamp: Vec<u64>,
    epoch: u64,
}

impl<'m> Search<'m> {
    fn new(model: &'m Model, x0: &Assignment) -> Self {
        let lhs = Activities::new(model, x0).as_slice().to_vec();
        let m = model.num_constraints();
        let n = model.num_vars();
        let binary: Vec<bool> = (0..n).map(|j| model.bounds(j) == (0, 1)).collect();
        let rows = model.constraints();
        let unit: Vec<bool> = rows
            .iter()
            .map(|r| r.coeffs.iter().all(|&(k, a)| binary[k] && a.abs() == 1))
            .collect();
        let sides = Sides::new(model, x0.values(), &unit);
        let mut s = Search {
            model,
            x: x0.values().to_vec(),
            lhs,
            w: vec![1; m],
            jumps: vec![None; n],
            promising: IndexSet::new(n),
            violated: IndexSet::new(m),
            f: 0,
            span: rows
                .iter()
                .map(|r| r.coeffs.iter().map(|&(_, a)| a.abs()).max().unwrap_or(0))
                .collect(),
            binary_row: rows.iter().map(|r| r.coeffs.iter().all(|&(k, _)| binary[k])).collect(),
            binary,
            unit,
            sides,
            stamp: vec![0; n],
            epoch: 0,
        };
        for c in 0..m {
            let v = s.viol(c, s.lhs[c]);
            s.f += v;
            s.violated.set(c, v > 0);
        }
        for j in 0..n {
            s.recompute(j);
        }
        s
    }

    #[inline]
    fn viol(&self, c: usize, activity: i64) -> i64 {
        self.model.constraint(c).violation_at(activity)
    }

    fn recompute(&mut self, j: usize) {
        let jump = jump_with(self.model, &self.x, &self.lhs, &self.w, j);
        self.jumps[j] = jump;
        self.promising.set(j, jump.is_some_and(|jp| jp.score > 0));
    }

    fn adjust_score(&mut self, j: usize, delta: i64) {
        if delta != 0 {
            let jp = self.jumps[j].as_mut().expect("binary variables always jump");
            jp.score += delta;
            let positive = jp.score > 0;
            self.promising.set(j, positive);
        }
    }

    /// Binary score contribution of constraint `c` to variable `k` with
    /// coefficient `a` at activity `lhs`.
    #[inline]
    fn contrib(&self, c: usize, k: usize, a: i64, lhs: i64) -> i64 {
        let d = 1 - 2 * self.x[k];
        self.viol(c, lhs) - self.viol(c, lhs + a * d)
    }

    fn apply(&mut self, j: usize, value: i64) {
        let delta = value - self.x[j];
        self.epoch += 1;
        let old_xj = self.x[j];
        let model = self.model;
        for &(c, a) in model.column(j) {
            let old = self.lhs[c];
            let new = old + a * delta;
            let wc = self.w[c];
            // Violation is linear on each side of the rhs. If every activity
            // a one-variable flip can reach stays on one side, before and
            // after, no binary contribution in this row changes.
            let rhs = model.constraint(c).rhs;
            let (lo, hi) = (old.min(new) - self.span[c], old.max(new) + self.span[c]);
            let linear = hi <= rhs || lo >= rhs;
            if self.binary_row[c] && linear {
                // nothing to update
            } else if self.unit[c] {
                // with unit coefficients a contribution depends only on the
                // side of the entry
                let step_delta = |s: i64| wc * ((self.viol(c, new) - self.viol(c, new + s)) - (self.viol(c, old) - self.viol(c, old + s)));
                let (up, down) = (step_delta(1), step_delta(-1));
                self.shift_side(c, true, up, j);
                self.shift_side(c, false, down, j);
            } else {
                for &(k, b) in &model.constraint(c).coeffs {
                    if k == j {
                        continue;
                    }
                    if self.binary[k] {
                        let before = self.contrib(c, k, b, old);
                        let after = self.contrib(c, k, b, new);
                        self.adjust_score(k, wc * (after - before));
                    } else {
                        self.stamp[k] = self.epoch;
                    }
                }
            }
            let (vo, vn) = (self.viol(c, old), self.viol(c, new));
            self.f += wc * (vn - vo);
            self.lhs[c] = new;
            self.violated.set(c, vn > 0);
        }
        debug_assert_ne!(old_xj, value);
        self.x[j] = value;
        if self.binary[j] {
            self.sides.flip(j);
        }
        self.recompute(j);
        for &(c, _) in model.column(j) {
            if self.binary_row[c] {
                continue;
            }
            for &(k, _) in &model.constraint(c).coeffs {
                if self.stamp[k] == self.epoch && k != j {
                    self.stamp[k] = 0;
                    self.recompute(k);
                }
            }
        }
    }

    /// Adds `delta` to the score of every variable on one side of unit
    /// row `c`, except `skip`.
    fn shift_side(&mut self, c: usize, rising: bool, delta: i64, skip: usize) {
        if delta == 0 {
            return;
        }
        let (lo, hi) = if rising {
            (self.sides.row_start[c], self.sides.split[c])
        } else {
            (self.sides.split[c], self.sides.row_start[c + 1])
        };
        for p in lo..hi {
            let k = self.sides.var[self.sides.slots[p] as usize] as usize;
            if k != skip {
                self.adjust_score(k, delta);
            }
        }
    }

    fn bump(&mut self, inc: i64) {
        self.epoch += 1;
        let model = self.model;
        let violated = self.violated.items.clone();
        for &c in &violated {
            let lhs = self.lhs[c];
            self.f += inc * self.viol(c, lhs);
            self.w[c] += inc;
            if self.unit[c] {
                let v = self.viol(c, lhs);
                self.shift_side(c, true, inc * (v - self.viol(c, lhs + 1)), usize::MAX);
                self.shift_side(c, false, inc * (v - self.viol(c, lhs - 1)), usize::MAX);
                continue;
            }
            for &(k, a) in &model.constraint(c).coeffs {
                if self.binary[k] {
                    let d = inc * self.contrib(c, k, a, lhs);
                    self.adjust_score(k, d);
                } else {
                    self.stamp[k] = self.epoch;
                }
            }
        }
        for &c in &violated {
            if self.binary_row[c] {
                continue;
            }
            for &(k, _) in &model.constraint(c).coeffs {
                if self.stamp[k] == self.epoch {
                    self.stamp[k] = 0;
                    self.recompute(k);
                }
            }
        }
    }

    /// Highest-score variable among `vars`, lowest index on ties.
    fn argmax(&self, vars: impl Iterator<Item = usize>) -> Option<usize> {
        let mut best: Option<(usize, i64)> = None;
        for j in vars {
            if let Some(jp) = self.jumps[j] {
                let better = match best {
                    None => true,
                    Some((bj, bs)) => jp.score > bs || (jp.score == bs && j < bj),
                };
                if better {
                    best = Some((j, jp.score));
                }
            }
        }
        best.map(|(j, _)| j)
    }
}

/// Runs Feasibility Jump from `x0` (clamped into the bounds first).
///
/// Greedy moves pick the best variable of a uniform sample of the promising
/// set. At a local minimum every violated constraint's weight is raised and
/// the best variable of one random violated constraint moves, even if its
/// score is not positive.
pub fn fj_search(model: &Model, x0: &Assignment, config: &FjConfig) -> FjResult {
    let x0 = model.clamp(x0.values());
    let mut rng: ChaCha8Rng = seeded(config.seed);
    let mut s = Search::new(model, &x0);
    let start = Instant::now();

    let mut best_x = s.x.clone();
    let mut best_lhs = s.lhs.clone();
    let mut best_f = s.f;
    let mut iterations = 0u64;

    while iterations < config.max_iterations {
        if s.f == 0 {
            return FjResult {
                status: FjStatus::Feasible,
                assignment: Assignment(s.x),
                iterations,
                weights: s.w,
            };
        }
        if iterations.is_multiple_of(256) {
            if let Some(limit) = config.time_limit {
                if start.elapsed() >= limit {
                    break;
                }
            }
        }
        iterations += 1;

        let chosen = if !s.promising.items.is_empty() {
            let len = s.promising.items.len();
            let picks = sample(&mut rng, len, config.sample_cap.min(len));
            s.argmax(picks.into_iter().map(|p| s.promising.items[p]))
        } else {
            let inc = config.weight_increment;
            // reweighting changes F_w of the incumbent as well
            for &c in &s.violated.items {
                best_f += inc * s.viol(c, best_lhs[c]);
            }
            s.bump(inc);
            let items = &s.violated.items;
            let c = items[rng.gen_range(0..items.len())];
            s.argmax(model.constraint(c).coeffs.iter().map(|&(k, _)| k))
        };
        if let Some(j) = chosen {
            let value = s.jumps[j].expect("argmax only returns movable variables").value;
            s.apply(j, value);
        }
        if s.f < best_f {
            best_f = s.f;
            best_x.clone_from(&s.x);
            best_lhs.clone_from(&s.lhs);
        }
    }

    let (status, assignment) = if s.f == 0 {
        (FjStatus::Feasible, Assignment(s.x))
    } else if best_f == 0 {
        (FjStatus::Feasible, Assignment(best_x))
    } else {
        (FjStatus::LimitReached, Assignment(best_x))
    };
    debug_assert!(status == FjStatus::LimitReached || model.is_feasible(&assignment));
    FjResult {
        status,
        assignment,
        iterations,
        weights: s.w,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encode::encode_kcoloring;
    use crate::graph::Graph;
    use crate::milp::{ModelBuilder, Sense};
    use proptest::prelude::*;

    fn cover() -> Model {
        let mut b = ModelBuilder::new();
        let x0 = b.add_binary("x0");
        let x1 = b.add_binary("x1");
        b.add_constraint([(x0, -1), (x1, -1)], Sense::LessEq, -1).unwrap();
        b.build()
    }

    #[test]
    fn covering_jump() {
        let m = cover();
        let j = jump(&m, &Assignment(vec![0, 0]), &[1], 0).unwrap();
        assert_eq!(j, Jump { value: 1, score: 1 });
    }

    #[test]
    fn weighted_negative_score() {
        let m = cover();
        let j = jump(&m, &Assignment(vec![1, 0]), &[2], 0).unwrap();
        assert_eq!(j, Jump { value: 0, score: -2 });
    }

    #[test]
    fn zero_score_when_already_optimal() {
        let m = cover();
        let j = jump(&m, &Assignment(vec![1, 1]), &[1], 0).unwrap();
        assert_eq!(j.score, 0);
    }

    #[test]
    fn fixed_variable_has_no_jump() {
        let mut b = ModelBuilder::new();
        b.add_var("x", 3, 3).unwrap();
        assert_eq!(jump(&b.build(), &Assignment(vec![3]), &[], 0), None);
    }

    #[test]
    fn integer_jump_hits_breakpoint() {
        // 2x <= 7 and -x <= -2 with x in [0, 10], start at 10
        let mut b = ModelBuilder::new();
        let x = b.add_var("x", 0, 10).unwrap();
        b.add_constraint([(x, 2)], Sense::LessEq, 7).unwrap();
        b.add_constraint([(x, -1)], Sense::LessEq, -2).unwrap();
        let m = b.build();
        let j = jump(&m, &Assignment(vec![10]), &[1, 1], 0).unwrap();
        // x = 3 satisfies both and is the closest zero-cost value
        assert_eq!(j, Jump { value: 3, score: 13 });
        let r = fj_search(&m, &Assignment(vec![10]), &FjConfig::default());
        assert!(r.is_feasible());
        assert_eq!(r.iterations, 1);
    }

    #[test]
    fn already_feasible() {
        let r = fj_search(&cover(), &Assignment(vec![1, 0]), &FjConfig::default());
        assert_eq!((r.status, r.iterations), (FjStatus::Feasible, 0));
    }

    #[test]
    fn covering_from_zero() {
        let r = fj_search(&cover(), &Assignment(vec![0, 0]), &FjConfig::default());
        assert!(r.is_feasible());
        assert!(r.iterations <= 2);
        assert!(cover().is_feasible(&r.assignment));
    }

    #[test]
    fn k4_three_coloring_never_feasible() {
        let enc = encode_kcoloring(&Graph::complete(4), 3);
        let cfg = FjConfig {
            max_iterations: 100_000,
            ..Default::default()
        };
        let r = fj_search(&enc.model, &enc.model.lower_assignment(), &cfg);
        assert_eq!(r.status, FjStatus::LimitReached);
        assert_eq!(r.iterations, 100_000);
        assert!(r.weights.iter().all(|&w| w >= 1));
    }

    #[test]
    fn colors_petersen() {
        let enc = encode_kcoloring(&Graph::petersen(), 3);
        let r = fj_search(&enc.model, &enc.model.lower_assignment(), &FjConfig::default());
        assert!(r.is_feasible());
        assert!(enc.model.is_feasible(&r.assignment));
    }

    #[test]
    fn deterministic() {
        let g = crate::graph::GraphFamily::ErdosRenyi { n: 30, p: 0.15 };
        let g = crate::graph::GraphSpec::new(g, 4).generate().unwrap();
        let enc = encode_kcoloring(&g, 3);
        let cfg = FjConfig {
            max_iterations: 5_000,
            seed: 11,
            ..Default::default()
        };
        let a = fj_search(&enc.model, &enc.model.lower_assignment(), &cfg);
        let b = fj_search(&enc.model, &enc.model.lower_assignment(), &cfg);
        assert_eq!(a, b);
    }

    fn check_scores(s: &Search) {
        let lhs = Activities::new(s.model, &Assignment(s.x.clone()));
        assert_eq!(lhs.as_slice(), &s.lhs[..]);
        let f: i64 = (0..s.model.num_constraints())
            .map(|c| s.w[c] * s.viol(c, s.lhs[c]))
            .sum();
        assert_eq!(f, s.f);
        for j in 0..s.model.num_vars() {
            assert_eq!(s.jumps[j], jump_with(s.model, &s.x, &s.lhs, &s.w, j), "var {j}");
            assert_eq!(
                s.promising.pos[j] != usize::MAX,
                s.jumps[j].is_some_and(|jp| jp.score > 0)
            );
        }
        for c in 0..s.model.num_constraints() {
            for p in s.sides.row_start[c]..s.sides.row_start[c + 1] {
                let e = s.sides.slots[p] as usize;
                let j = s.sides.var[e] as usize;
                let a = s.model.column(j)[e - s.sides.col_start[j]].1;
                assert_eq!((s.x[j] == 0) == (a > 0), p < s.sides.split[c], "row {c} var {j}");
            }
            assert_eq!(s.violated.pos[c] != usize::MAX, s.viol(c, s.lhs[c]) > 0);
        }
    }

    fn small_model() -> impl Strategy<Value = (Model, Vec<i64>, Vec<(usize, bool)>)> {
        let var = (0i64..=1, 1i64..=3);
        (
            prop::collection::vec(var, 1..6),
            prop::collection::vec(
                (prop::collection::vec((0usize..6, -3i64..=3), 1..4), -3i64..=4, any::<bool>()),
                1..6,
            ),
            prop::collection::vec((0usize..6, any::<bool>()), 0..30),
        )
            .prop_map(|(vars, cons, ops)| {
                let mut b = ModelBuilder::new();
                for (i, &(lo, span)) in vars.iter().enumerate() {
                    b.add_var(format!("v{i}"), lo - 1, lo - 1 + span).unwrap();
                }
                let n = vars.len();
                for (terms, rhs, eq) in cons {
                    let sense = if eq { Sense::Eq } else { Sense::LessEq };
                    let terms: Vec<_> = terms.into_iter().map(|(v, a)| (v % n, a)).collect();
                    b.add_constraint(terms, sense, rhs).unwrap();
                }
                let m = b.build();
                let x0 = m.lower_assignment().0;
                (m, x0, ops)
            })
    }

    /// Binary variables, mostly unit coefficients, random start.
    fn binary_model() -> impl Strategy<Value = (Model, Vec<i64>, Vec<(usize, bool)>)> {
        (
            1usize..8,
            prop::collection::vec(
                (prop::collection::vec((0usize..8, prop::sample::select(vec![-1i64, 1, 1, -1, 2])), 1..6), -2i64..=3, any::<bool>()),
                1..8,
            ),
            prop::collection::vec(any::<bool>(), 8),
            prop::collection::vec((0usize..8, any::<bool>()), 0..40),
        )
            .prop_map(|(n, cons, start, ops)| {
                let mut b = ModelBuilder::new();
                for i in 0..n {
                    b.add_binary(format!("v{i}"));
                }
                for (terms, rhs, eq) in cons {
                    let sense = if eq { Sense::Eq } else { Sense::LessEq };
                    let mut terms: Vec<_> = terms.into_iter().map(|(v, a)| (v % n, a)).collect();
                    terms.sort_unstable();
                    terms.dedup_by_key(|t| t.0);
                    b.add_constraint(terms, sense, rhs).unwrap();
                }
                let x0 = start[..n].iter().map(|&v| v as i64).collect();
                (b.build(), x0, ops)
            })
    }

    proptest! {
        #[test]
        fn incremental_scores_match_on_binary_models((model, x0, ops) in binary_model()) {
            let mut s = Search::new(&model, &Assignment(x0));
            check_scores(&s);
            for (v, bump) in ops {
                if bump {
                    if !s.violated.items.is_empty() {
                        s.bump(1);
                    }
                } else {
                    let j = v % model.num_vars();
                    s.apply(j, 1 - s.x[j]);
                }
                check_scores(&s);
            }
        }

        #[test]
        fn incremental_scores_match_recomputation((model, x0, ops) in small_model()) {
            let mut s = Search::new(&model, &Assignment(x0));
            check_scores(&s);
            for (v, bump) in ops {
                if bump {
                    if !s.violated.items.is_empty() {
                        s.bump(2);
                    }
                } else {
                    let j = v % model.num_vars();
                    if let Some(jp) = s.jumps[j] {
                        s.apply(j, jp.value);
                    }
                }
                check_scores(&s);
            }
        }

        #[test]
        fn feasible_status_is_feasible((model, x0, _ops) in small_model(), seed in 0u64..50) {
            let cfg = FjConfig { max_iterations: 200, seed, ..Default::default() };
            let r = fj_search(&model, &Assignment(x0), &cfg);
            if r.is_feasible() {
                prop_assert!(model.is_feasible(&r.assignment));
            }
            prop_assert!(r.weights.iter().all(|&w| w >= 1));
        }
    }
}
