//! K-theory reports: the serializable output of `mdk ktheory`.

use std::collections::BTreeMap;
use std::fmt;

use mdk_core::chain;
use mdk_core::lambda::{self, LambdaError};
use mdk_core::tower::{self, TowerError};
use mdk_core::TransitionMatrix;
use num_traits::ToPrimitive;
use serde::Serialize;

#[derive(Debug)]
pub enum ReportError {
    Lambda(LambdaError),
    Tower(TowerError),
}

impl fmt::Display for ReportError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReportError::Lambda(LambdaError::TooManyVertices { level, count }) => write!(
                f,
                "level {level} has {count} vertices, over the memory guard; lower --max-level"
            ),
            ReportError::Lambda(e) => write!(f, "lambda graph construction failed: {e:?}"),
            ReportError::Tower(e) => write!(f, "tower construction failed: {e:?}"),
        }
    }
}

impl std::error::Error for ReportError {}

impl From<LambdaError> for ReportError {
    fn from(e: LambdaError) -> Self {
        ReportError::Lambda(e)
    }
}

impl From<TowerError> for ReportError {
    fn from(e: TowerError) -> Self {
        ReportError::Tower(e)
    }
}

#[derive(Serialize)]
pub struct GroupJson {
    pub free_rank: usize,
    pub invariant_factors: Vec<u64>,
}

#[derive(Serialize)]
pub struct LevelJson {
    pub l: usize,
    pub m: usize,
    pub k0: GroupJson,
    pub k1_rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<Vec<i64>>,
    pub checks: BTreeMap<String, bool>,
}

#[derive(Serialize)]
pub struct KTheoryReport {
    pub matrix: String,
    pub levels: Vec<LevelJson>,
    pub g: Vec<usize>,
}

impl KTheoryReport {
    pub fn all_checks_pass(&self) -> bool {
        self.levels.iter().all(|lv| lv.checks.values().all(|&b| b))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Build the report for levels `1..=max_level`, where level `l` carries
/// the cokernel and kernel of `A_{l+1,l}` (so the graph is built one
/// level past `max_level`).
///
/// Per-level checks: `kernel_trivial` always; for the golden 2x2 matrix
/// `[[1,1],[1,0]]` also the reduction-chain cross-checks (`chain_match`,
/// `h_cokernel`, and `v_recursion` where defined).
pub fn build_report(
    name: &str,
    a: &TransitionMatrix,
    max_level: usize,
) -> Result<KTheoryReport, ReportError> {
    let is_fibonacci = *a == TransitionMatrix::fibonacci();
    let system = lambda::build_cantor_horizon(a, max_level + 1)?;
    let tw = tower::k_theory_tower(&system, max_level + 1)?;
    let mut levels = Vec::with_capacity(max_level);
    for level in tw.levels.iter().skip(1) {
        let l = level.l - 1;
        let mut checks = BTreeMap::new();
        checks.insert("kernel_trivial".into(), level.k1_rank == 0);
        let mut v = None;
        if is_fibonacci {
            let chain_a = chain::a_matrix(l);
            let graph_a = tower::level_map(&system, l)?;
            checks.insert("chain_match".into(), chain_a == graph_a);
            checks.insert(
                "h_cokernel".into(),
                chain::verify_h_cokernel_rank(l).unwrap_or(false),
            );
            if l >= 3 {
                checks.insert(
                    "v_recursion".into(),
                    chain::verify_v_recursion(l).unwrap_or(false),
                );
            }
            v = chain::v_vector(l).ok().map(|vv| {
                vv.iter()
                    .map(|x| x.to_i64().expect("v entries are small"))
                    .collect()
            });
        }
        let summary = level.k0.summary();
        levels.push(LevelJson {
            l,
            m: system.vertex_count(l),
            k0: GroupJson {
                free_rank: summary.free_rank,
                invariant_factors: summary
                    .invariant_factors
                    .iter()
                    .map(|d| d.to_u64().expect("factor fits u64"))
                    .collect(),
            },
            k1_rank: level.k1_rank,
            v,
            checks,
        });
    }
    let g = tower::g_sequence(a, 6).map_err(ReportError::Tower)?;
    Ok(KTheoryReport {
        matrix: name.to_string(),
        levels,
        g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_report_profile() {
        let report = build_report("fibonacci", &TransitionMatrix::fibonacci(), 8).unwrap();
        let ranks: Vec<usize> = report.levels.iter().map(|l| l.k0.free_rank).collect();
        // rank m(l-1) at level l; levels 2..8 read (2,3,5,...,34).
        assert_eq!(ranks, vec![1, 2, 3, 5, 8, 13, 21, 34]);
        assert!(report.levels.iter().all(|l| l.k0.invariant_factors.is_empty()));
        assert!(report.levels.iter().all(|l| l.k1_rank == 0));
        assert_eq!(report.g, vec![1, 2, 4, 6, 7, 9]);
        assert!(report.all_checks_pass());
    }

    #[test]
    fn json_is_deterministic() {
        let a = TransitionMatrix::full(2).unwrap();
        let one = build_report("full:2", &a, 4).unwrap().to_json();
        let two = build_report("full:2", &a, 4).unwrap().to_json();
        assert_eq!(one, two);
        assert!(one.contains("\"matrix\": \"full:2\""));
    }
}
