//! Partition → lot sizing: build the reduced instance, solve it, and read a
//! partition subset off the optimal plan.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::dp::{self, Counters, SolverConfig};
use crate::error::{Error, Result};
use crate::instance::{LotSizingInstance, LotSizingParams, PartitionInstance, UnitCosts};

/// Costs of the reduced instance: unit setups, `h_s = 3`, free cores and
/// remanufacturing, unit manufacturing.
pub const REDUCED_COSTS: UnitCosts = UnitCosts {
    remanufacture_setup: 1,
    manufacture_setup: 1,
    serviceable_holding: 3,
    core_holding: 0,
    remanufacture: 0,
    manufacture: 1,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Decision {
    Solution,
    NoSolution,
}

impl Decision {
    pub fn is_solution(self) -> bool {
        self == Decision::Solution
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionAnswer {
    pub decision: Decision,
    /// 1-based item numbers of one half, present iff `decision` is
    /// `Solution`.
    pub subset: Option<Vec<usize>>,
    /// Optimal reduced-instance cost; absent when the total is odd or the
    /// answer did not come from the DP.
    pub optimal_value: Option<u64>,
    pub counters: Option<Counters>,
}

impl PartitionAnswer {
    pub(crate) fn no_solution() -> Self {
        Self {
            decision: Decision::NoSolution,
            subset: None,
            optimal_value: None,
            counters: None,
        }
    }
}

/// Periods are items, all `C` cores arrive in period 1.
pub fn reduce(p: &PartitionInstance) -> Result<LotSizingInstance> {
    let half = p.half_sum().ok_or(Error::OddTotal { total: p.total() })?;
    let n = p.len();
    let mut returns = vec![0; n];
    returns[0] = half;
    LotSizingInstance::new(LotSizingParams::constant(
        p.items().to_vec(),
        returns,
        REDUCED_COSTS,
    ))
}

/// `N + C`: the reduced optimum equals this iff a partition exists.
pub fn threshold(p: &PartitionInstance) -> Option<u64> {
    p.half_sum().map(|c| c + p.len() as u64)
}

pub fn decide_and_extract(p: &PartitionInstance, use_fast: bool) -> Result<PartitionAnswer> {
    let config = if use_fast {
        SolverConfig::fast()
    } else {
        SolverConfig::default()
    };
    decide_and_extract_with(p, &config)
}

pub fn decide_and_extract_with(
    p: &PartitionInstance,
    config: &SolverConfig,
) -> Result<PartitionAnswer> {
    let Some(limit) = threshold(p) else {
        return Ok(PartitionAnswer::no_solution());
    };
    let inst = reduce(p)?;
    let sol = dp::solve(&inst, config)?;
    let mut answer = PartitionAnswer {
        decision: Decision::NoSolution,
        subset: None,
        optimal_value: Some(sol.value),
        counters: Some(sol.counters),
    };
    if sol.value == limit {
        let subset = sol.remanufacture_periods();
        debug_assert!(verify_subset(p, &subset).unwrap_or(false));
        answer.decision = Decision::Solution;
        answer.subset = Some(subset);
    }
    Ok(answer)
}

/// True iff the items numbered by `subset` (1-based, treated as a set) sum to
/// the half-sum.
pub fn verify_subset(p: &PartitionInstance, subset: &[usize]) -> Result<bool> {
    let n = p.len();
    let chosen: BTreeSet<usize> = subset.iter().copied().collect();
    if let Some(&bad) = chosen.iter().find(|&&i| i == 0 || i > n) {
        return Err(Error::IndexOutOfRange { index: bad, n });
    }
    let Some(half) = p.half_sum() else {
        return Ok(false);
    };
    let sum: u64 = chosen.iter().map(|&i| p.items()[i - 1]).sum();
    Ok(sum == half)
}

/// Item numbers not in `subset`.
pub fn complement(p: &PartitionInstance, subset: &[usize]) -> Vec<usize> {
    let chosen: BTreeSet<usize> = subset.iter().copied().collect();
    (1..=p.len()).filter(|i| !chosen.contains(i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(items: &[i64]) -> PartitionInstance {
        PartitionInstance::new(items).unwrap()
    }

    #[test]
    fn reduce_sets_every_parameter() {
        let inst = reduce(&part(&[10, 30, 20])).unwrap();
        let p = inst.params();
        assert_eq!(p.demand, vec![10, 30, 20]);
        assert_eq!(p.returns, vec![30, 0, 0]);
        assert_eq!(p.remanufacture_setup, vec![1, 1, 1]);
        assert_eq!(p.manufacture_setup, vec![1, 1, 1]);
        assert_eq!(p.serviceable_holding, vec![3, 3, 3]);
        assert_eq!(p.core_holding, vec![0, 0, 0]);
        assert_eq!(p.remanufacture_cost, vec![0, 0, 0]);
        assert_eq!(p.manufacture_cost, vec![1, 1, 1]);
        assert!(inst.check_assumptions().ok);

        let small = reduce(&part(&[1, 1])).unwrap();
        assert_eq!(small.returns(), &[1, 0]);
        assert_eq!(
            reduce(&part(&[1, 2])).unwrap_err(),
            Error::OddTotal { total: 3 }
        );
    }

    #[test]
    fn decisions_on_small_instances() {
        let no = decide_and_extract(&part(&[10, 34, 40]), false).unwrap();
        assert_eq!(no.decision, Decision::NoSolution);
        assert_eq!(no.optimal_value, Some(46));
        assert_eq!(threshold(&part(&[10, 34, 40])), Some(45));

        let yes = decide_and_extract(&part(&[10, 33, 40, 5, 8]), false).unwrap();
        assert_eq!(yes.decision, Decision::Solution);
        assert_eq!(yes.optimal_value, Some(53));
        let subset = yes.subset.unwrap();
        assert!(verify_subset(&part(&[10, 33, 40, 5, 8]), &subset).unwrap());

        let eight = decide_and_extract(&part(&[10, 33, 38, 5, 52, 79, 89, 114]), true).unwrap();
        assert_eq!(eight.decision, Decision::NoSolution);
        assert_eq!(eight.optimal_value, Some(219));
    }

    #[test]
    fn odd_total_skips_the_solver() {
        let ans = decide_and_extract(&part(&[1, 2]), false).unwrap();
        assert_eq!(ans, PartitionAnswer::no_solution());
    }

    #[test]
    fn subset_verification() {
        let p = part(&[10, 33, 38, 5, 50, 77, 89, 114]);
        assert!(verify_subset(&p, &[4, 7, 8]).unwrap());
        assert!(verify_subset(&p, &complement(&p, &[4, 7, 8])).unwrap());
        assert!(verify_subset(&part(&[10, 30, 20]), &[1, 3]).unwrap());
        assert!(!verify_subset(&part(&[10, 34, 40]), &[3]).unwrap());
        assert_eq!(
            verify_subset(&p, &[9]).unwrap_err(),
            Error::IndexOutOfRange { index: 9, n: 8 }
        );
        assert!(verify_subset(&p, &[0]).is_err());
        assert!(!verify_subset(&part(&[1, 2]), &[1]).unwrap());
    }
}
