use super::candidate::{Candidate, Claim};
use super::{solution_objective, verify_solution};
use crate::instance::Instance;
use crate::solution::Solution;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SelectError {
    #[error("best-of-N needs at least one candidate")]
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Yes,
    No,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// At least one candidate carried a verified solution.
    Certificate,
    MajorityVote,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Chosen {
    pub index: usize,
    pub solution: Solution,
    pub objective: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub decision: Decision,
    pub basis: Basis,
    pub chosen: Option<Chosen>,
    pub n: usize,
    pub valid: usize,
    pub yes_claims: usize,
    pub no_claims: usize,
    pub malformed: usize,
}

pub fn default_objective(instance: &Instance) -> impl Fn(&Solution) -> i64 + '_ {
    move |s| solution_objective(instance, s) as i64
}

/// Best-of-N with the default objective for the instance's task.
pub fn best_of_n(candidates: &[Candidate], instance: &Instance) -> Result<Verdict, SelectError> {
    best_of_n_with(candidates, instance, default_objective(instance))
}

/// Returns the lowest-objective verified solution if any candidate has one
/// (first in candidate order on ties). Otherwise answers `no` iff strictly
/// more than half of all `N` candidates claim `no`; malformed candidates
/// count toward `N` but toward neither claim.
pub fn best_of_n_with<F>(
    candidates: &[Candidate],
    instance: &Instance,
    objective: F,
) -> Result<Verdict, SelectError>
where
    F: Fn(&Solution) -> i64,
{
    if candidates.is_empty() {
        return Err(SelectError::Empty);
    }
    let mut chosen: Option<Chosen> = None;
    let (mut valid, mut yes, mut no, mut malformed) = (0, 0, 0, 0);
    for (index, cand) in candidates.iter().enumerate() {
        match cand.claim {
            Claim::Yes => yes += 1,
            Claim::No => no += 1,
            Claim::Malformed(_) => malformed += 1,
        }
        let Some(solution) = cand.solution.as_ref() else {
            continue;
        };
        if !verify_solution(instance, solution) {
            continue;
        }
        valid += 1;
        let value = objective(solution);
        if chosen.as_ref().is_none_or(|c| value < c.objective) {
            chosen = Some(Chosen {
                index,
                solution: solution.clone(),
                objective: value,
            });
        }
    }
    let n = candidates.len();
    let (decision, basis) = if chosen.is_some() {
        (Decision::Yes, Basis::Certificate)
    } else if 2 * no > n {
        (Decision::No, Basis::MajorityVote)
    } else {
        (Decision::Yes, Basis::MajorityVote)
    };
    Ok(Verdict {
        decision,
        basis,
        chosen,
        n,
        valid,
        yes_claims: yes,
        no_claims: no,
        malformed,
    })
}
