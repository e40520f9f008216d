use super::render::Record;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Width of the problem-size histogram buckets.
pub const SIZE_BUCKET: usize = 10;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DatasetStats {
    pub count: usize,
    pub sat: usize,
    pub unsat: usize,
    pub sat_fraction: f64,
    pub by_task: BTreeMap<String, usize>,
    pub by_provenance: BTreeMap<String, usize>,
    /// Bucket lower bound → number of records whose primary graph has that
    /// many vertices.
    pub problem_sizes: BTreeMap<usize, usize>,
}

pub fn dataset_stats(records: &[Record]) -> DatasetStats {
    let mut s = DatasetStats::default();
    for r in records {
        s.count += 1;
        if r.meta.label.is_sat() {
            s.sat += 1;
        } else {
            s.unsat += 1;
        }
        *s.by_task.entry(r.meta.task.as_str().to_string()).or_default() += 1;
        let prov = r
            .meta
            .label
            .provenance()
            .map_or("dropped", |p| p.as_str());
        *s.by_provenance.entry(prov.to_string()).or_default() += 1;
        let n = problem_size(r);
        *s.problem_sizes.entry(n / SIZE_BUCKET * SIZE_BUCKET).or_default() += 1;
    }
    s.sat_fraction = if s.count == 0 {
        0.0
    } else {
        s.sat as f64 / s.count as f64
    };
    s
}

/// Vertex count stated in the instruction ("with N nodes").
fn problem_size(r: &Record) -> usize {
    r.instruction
        .split_once(" with ")
        .and_then(|(_, rest)| rest.split(' ').next())
        .and_then(|n| n.parse().ok())
        .unwrap_or(0)
}

/// Accepts records up to `total`. With a target, the satisfiable class is
/// capped at `round(total * target)` and the unsatisfiable class at the
/// remainder; surplus records of a full class are rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Balancer {
    total: usize,
    sat_quota: usize,
    unsat_quota: usize,
    sat: usize,
    unsat: usize,
}

impl Balancer {
    pub fn new(total: usize, target: Option<f64>) -> Self {
        let (sat_quota, unsat_quota) = match target {
            Some(t) => {
                let sat = ((total as f64) * t.clamp(0.0, 1.0)).round() as usize;
                (sat, total - sat)
            }
            None => (total, total),
        };
        Balancer {
            total,
            sat_quota,
            unsat_quota,
            sat: 0,
            unsat: 0,
        }
    }

    /// Returns whether the record is kept.
    pub fn offer(&mut self, is_sat: bool) -> bool {
        if self.is_full() {
            return false;
        }
        if is_sat && self.sat < self.sat_quota {
            self.sat += 1;
            true
        } else if !is_sat && self.unsat < self.unsat_quota {
            self.unsat += 1;
            true
        } else {
            false
        }
    }

    pub fn accepted(&self) -> usize {
        self.sat + self.unsat
    }

    pub fn is_full(&self) -> bool {
        self.accepted() >= self.total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty() {
        let s = dataset_stats(&[]);
        assert_eq!((s.count, s.sat, s.unsat), (0, 0, 0));
        assert_eq!(s.sat_fraction, 0.0);
    }

    #[test]
    fn quotas() {
        let mut b = Balancer::new(10, Some(0.5));
        for _ in 0..8 {
            b.offer(true);
        }
        assert_eq!(b.accepted(), 5);
        assert!(!b.is_full());
        for _ in 0..8 {
            b.offer(false);
        }
        assert_eq!(b.accepted(), 10);
        assert!(b.is_full());
        let mut free = Balancer::new(3, None);
        assert!(free.offer(true) && free.offer(true) && free.offer(true));
        assert!(!free.offer(false));
    }
}
