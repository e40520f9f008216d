//! Linear feasibility models over bounded integer variables.
//!
//! Coefficients, right-hand sides, activities and violations are all exact
//! `i64`; there is no tolerance anywhere in feasibility logic.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MilpError {
    #[error("variable {var} out of range (model has {num_vars})")]
    VarOutOfRange { var: usize, num_vars: usize },
    #[error("empty domain for variable {var}: [{lower}, {upper}]")]
    EmptyDomain { var: usize, lower: i64, upper: i64 },
    #[error("assignment has {got} values, model has {expected} variables")]
    LengthMismatch { expected: usize, got: usize },
    #[error("value {value} outside [{lower}, {upper}] for variable {var}")]
    OutOfBounds {
        var: usize,
        value: i64,
        lower: i64,
        upper: i64,
    },
    #[error("unknown variable name {0:?}")]
    UnknownName(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    LessEq,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    /// `(var, coeff)` sorted by var, unique, no zero coefficients.
    pub coeffs: Vec<(usize, i64)>,
    pub rhs: i64,
    pub sense: Sense,
}

impl Constraint {
    #[inline]
    pub fn violation_at(&self, activity: i64) -> i64 {
        match self.sense {
            Sense::LessEq => (activity - self.rhs).max(0),
            Sense::Eq => (activity - self.rhs).abs(),
        }
    }
}

/// Variables are identified by dense index.
#[derive(Debug, Clone)]
pub struct Model {
    bounds: Vec<(i64, i64)>,
    names: Vec<String>,
    constraints: Vec<Constraint>,
    /// For each variable: `(constraint, coeff)` for every constraint that
    /// mentions it, in constraint order.
    columns: Vec<Vec<(usize, i64)>>,
    objective: Option<Vec<i64>>,
}

#[derive(Debug, Default)]
pub struct ModelBuilder {
    bounds: Vec<(i64, i64)>,
    names: Vec<String>,
    constraints: Vec<Constraint>,
    objective: Option<Vec<i64>>,
    nonzeros: usize,
}

impl ModelBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_var(
        &mut self,
        name: impl Into<String>,
        lower: i64,
        upper: i64,
    ) -> Result<usize, MilpError> {
        let var = self.bounds.len();
        if lower > upper {
            return Err(MilpError::EmptyDomain { var, lower, upper });
        }
        self.bounds.push((lower, upper));
        self.names.push(name.into());
        Ok(var)
    }

    pub fn add_binary(&mut self, name: impl Into<String>) -> usize {
        self.add_var(name, 0, 1).expect("binary domain is nonempty")
    }

    pub fn num_vars(&self) -> usize {
        self.bounds.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn nonzeros(&self) -> usize {
        self.nonzeros
    }

    /// Adds `Σ coeff·x (sense) rhs`. Repeated variables are merged and zero
    /// coefficients dropped.
    pub fn add_constraint<I>(&mut self, terms: I, sense: Sense, rhs: i64) -> Result<usize, MilpError>
    where
        I: IntoIterator<Item = (usize, i64)>,
    {
        let mut coeffs: Vec<(usize, i64)> = terms.into_iter().collect();
        for &(v, _) in &coeffs {
            if v >= self.bounds.len() {
                return Err(MilpError::VarOutOfRange {
                    var: v,
                    num_vars: self.bounds.len(),
                });
            }
        }
        coeffs.sort_unstable_by_key(|&(v, _)| v);
        let mut merged: Vec<(usize, i64)> = Vec::with_capacity(coeffs.len());
        for (v, a) in coeffs {
            match merged.last_mut() {
                Some((lv, la)) if *lv == v => *la += a,
                _ => merged.push((v, a)),
            }
        }
        merged.retain(|&(_, a)| a != 0);
        self.nonzeros += merged.len();
        self.constraints.push(Constraint {
            coeffs: merged,
            rhs,
            sense,
        });
        Ok(self.constraints.len() - 1)
    }

    pub fn set_objective(&mut self, coeffs: Vec<i64>) {
        self.objective = Some(coeffs);
    }

    pub fn build(self) -> Model {
        let mut columns = vec![Vec::new(); self.bounds.len()];
        for (c, con) in self.constraints.iter().enumerate() {
            for &(v, a) in &con.coeffs {
                columns[v].push((c, a));
            }
        }
        let mut objective = self.objective;
        if let Some(obj) = objective.as_mut() {
            obj.resize(self.bounds.len(), 0);
        }
        Model {
            bounds: self.bounds,
            names: self.names,
            constraints: self.constraints,
            columns,
            objective,
        }
    }
}

/// A full valuation of a model's variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Assignment(pub Vec<i64>);

impl Assignment {
    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::ops::Index<usize> for Assignment {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Model {
    #[inline]
    pub fn num_vars(&self) -> usize {
        self.bounds.len()
    }

    #[inline]
    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    #[inline]
    pub fn bounds(&self, var: usize) -> (i64, i64) {
        self.bounds[var]
    }

    pub fn name(&self, var: usize) -> &str {
        &self.names[var]
    }

    pub fn var_by_name(&self) -> HashMap<&str, usize> {
        self.names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect()
    }

    #[inline]
    pub fn constraint(&self, c: usize) -> &Constraint {
        &self.constraints[c]
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// `(constraint, coeff)` pairs for variable `var`.
    #[inline]
    pub fn column(&self, var: usize) -> &[(usize, i64)] {
        &self.columns[var]
    }

    pub fn objective(&self) -> Option<&[i64]> {
        self.objective.as_deref()
    }

    pub fn nonzeros(&self) -> usize {
        self.constraints.iter().map(|c| c.coeffs.len()).sum()
    }

    /// All variables at their lower bound.
    pub fn lower_assignment(&self) -> Assignment {
        Assignment(self.bounds.iter().map(|&(l, _)| l).collect())
    }

    /// Clamps each value into its bounds; missing values take the lower bound.
    pub fn clamp(&self, values: &[i64]) -> Assignment {
        Assignment(
            self.bounds
                .iter()
                .enumerate()
                .map(|(j, &(l, u))| values.get(j).copied().unwrap_or(l).clamp(l, u))
                .collect(),
        )
    }

    pub fn check_assignment(&self, x: &Assignment) -> Result<(), MilpError> {
        if x.len() != self.num_vars() {
            return Err(MilpError::LengthMismatch {
                expected: self.num_vars(),
                got: x.len(),
            });
        }
        for (var, (&value, &(lower, upper))) in x.0.iter().zip(&self.bounds).enumerate() {
            if value < lower || value > upper {
                return Err(MilpError::OutOfBounds {
                    var,
                    value,
                    lower,
                    upper,
                });
            }
        }
        Ok(())
    }

    pub fn activity(&self, c: usize, x: &Assignment) -> i64 {
        self.constraints[c]
            .coeffs
            .iter()
            .map(|&(v, a)| a * x.0[v])
            .sum()
    }

    /// `max(0, a·x − b)` for `≤`, `|a·x − b|` for `=`.
    pub fn violation(&self, c: usize, x: &Assignment) -> i64 {
        self.constraints[c].violation_at(self.activity(c, x))
    }

    /// `Σ w_c · violation_c(x)`.
    pub fn weighted_infeasibility(&self, x: &Assignment, weights: &[i64]) -> i64 {
        assert_eq!(weights.len(), self.num_constraints(), "one weight per constraint");
        (0..self.num_constraints())
            .map(|c| weights[c] * self.violation(c, x))
            .sum()
    }

    pub fn violated(&self, x: &Assignment) -> Vec<usize> {
        (0..self.num_constraints())
            .filter(|&c| self.violation(c, x) > 0)
            .collect()
    }

    pub fn is_feasible(&self, x: &Assignment) -> bool {
        x.len() == self.num_vars()
            && x
                .0
                .iter()
                .zip(&self.bounds)
                .all(|(&v, &(l, u))| l <= v && v <= u)
            && (0..self.num_constraints()).all(|c| self.violation(c, x) == 0)
    }

    pub fn objective_value(&self, x: &Assignment) -> Option<i64> {
        self.objective
            .as_ref()
            .map(|obj| obj.iter().zip(&x.0).map(|(a, v)| a * v).sum())
    }

    /// Builds an assignment from `name -> value` pairs; unnamed variables take
    /// their lower bound and values are clamped into bounds.
    pub fn assignment_from_names<'a, I>(&self, pairs: I) -> Result<Assignment, MilpError>
    where
        I: IntoIterator<Item = (&'a str, i64)>,
    {
        let by_name = self.var_by_name();
        let mut values = self.lower_assignment().0;
        for (name, value) in pairs {
            let &var = by_name
                .get(name)
                .ok_or_else(|| MilpError::UnknownName(name.to_string()))?;
            values[var] = value;
        }
        Ok(self.clamp(&values))
    }

    /// Plain-text dump, one constraint per line:
    /// `c3: +1 x_0_2 -1 x_1_5 <= 0`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (j, &(l, u)) in self.bounds.iter().enumerate() {
            writeln!(out, "var {} [{l}, {u}]", self.names[j]).unwrap();
        }
        for (c, con) in self.constraints.iter().enumerate() {
            write!(out, "c{c}:").unwrap();
            for &(v, a) in &con.coeffs {
                write!(out, " {a:+} {}", self.names[v]).unwrap();
            }
            let op = match con.sense {
                Sense::LessEq => "<=",
                Sense::Eq => "=",
            };
            writeln!(out, " {op} {}", con.rhs).unwrap();
        }
        out
    }
}

/// Constraint activities kept in sync with single-variable changes.
#[derive(Debug, Clone)]
pub struct Activities {
    lhs: Vec<i64>,
}

impl Activities {
    pub fn new(model: &Model, x: &Assignment) -> Self {
        Activities {
            lhs: (0..model.num_constraints())
                .map(|c| model.activity(c, x))
                .collect(),
        }
    }

    #[inline]
    pub fn get(&self, c: usize) -> i64 {
        self.lhs[c]
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.lhs
    }

    /// Applies `x[var] += delta` to every constraint in the column of `var`.
    #[inline]
    pub fn shift(&mut self, model: &Model, var: usize, delta: i64) {
        for &(c, a) in model.column(var) {
            self.lhs[c] += a * delta;
        }
    }
}
