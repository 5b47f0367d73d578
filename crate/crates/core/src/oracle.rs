//! Exhaustive reference solvers. None of these share code with the DP.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{evaluate_plan, LotSizingInstance, PartitionInstance, ProductionPlan};
use crate::reduction::{Decision, PartitionAnswer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleLimits {
    /// Largest item count for subset enumeration.
    pub max_n_enum: usize,
    /// Largest number of complete plans the DLSP enumeration may score.
    pub max_plans: u64,
    /// Cumulative production from period `i` on is capped at
    /// `production_cap_scale · (Dᵢ + … + D_N)`.
    pub production_cap_scale: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            max_n_enum: 24,
            max_plans: 10_000_000,
            production_cap_scale: 1,
        }
    }
}

/// Tries every subset in increasing bitmask order.
pub fn brute_force_partition(p: &PartitionInstance, limits: &OracleLimits) -> Result<PartitionAnswer> {
    let n = p.len();
    if n > limits.max_n_enum {
        return Err(Error::TooLarge {
            what: "item count",
            size: n as u64,
            cap: limits.max_n_enum as u64,
        });
    }
    let Some(half) = p.half_sum() else {
        return Ok(PartitionAnswer::no_solution());
    };
    let items = p.items();
    for mask in 0u64..(1 << n) {
        let sum: u64 = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| items[i]).sum();
        if sum == half {
            let subset = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| i + 1).collect();
            return Ok(PartitionAnswer {
                decision: Decision::Solution,
                subset: Some(subset),
                optimal_value: None,
                counters: None,
            });
        }
    }
    Ok(PartitionAnswer::no_solution())
}

/// Classic reachable-sums table.
pub fn subset_sum_reachable(items: &[u64], target: u64) -> bool {
    let total: u64 = items.iter().sum();
    if target > total {
        return false;
    }
    let mut reachable = vec![false; total as usize + 1];
    reachable[0] = true;
    let mut high = 0usize;
    for &a in items {
        let a = a as usize;
        for s in (0..=high).rev() {
            if reachable[s] {
                reachable[s + a] = true;
            }
        }
        high += a;
    }
    reachable[target as usize]
}

struct Search<'a> {
    inst: &'a LotSizingInstance,
    remaining: Vec<u64>,
    scale: u64,
    max_plans: u64,
    scored: u64,
    x: Vec<u64>,
    y: Vec<u64>,
    best: Option<(u64, ProductionPlan)>,
}

impl Search<'_> {
    fn visit(&mut self, i: usize, cores: u64, stock: u64) -> Result<()> {
        let n = self.inst.periods();
        if i == n {
            self.scored += 1;
            if self.scored > self.max_plans {
                return Err(Error::TooLarge {
                    what: "plan count",
                    size: self.scored,
                    cap: self.max_plans,
                });
            }
            let plan = ProductionPlan::new(self.x.clone(), self.y.clone());
            let cost = evaluate_plan(self.inst, &plan)?;
            if self.best.as_ref().is_none_or(|(b, _)| cost < *b) {
                self.best = Some((cost, plan));
            }
            return Ok(());
        }
        let demand = self.inst.demand()[i];
        let cap = (self.scale * self.remaining[i]).saturating_sub(stock);
        let next_returns = self.inst.returns().get(i + 1).copied().unwrap_or(0);
        for x in 0..=cores.min(cap) {
            let need = demand.saturating_sub(stock + x);
            for y in need..=cap - x {
                self.x[i] = x;
                self.y[i] = y;
                self.visit(i + 1, cores - x + next_returns, stock + x + y - demand)?;
            }
        }
        Ok(())
    }
}

/// Scores every feasible plan whose production never exceeds the (scaled)
/// remaining demand and returns the cheapest, first in `(x₁, y₁, x₂, …)`
/// lexicographic order among ties.
pub fn brute_force_dlsp(
    inst: &LotSizingInstance,
    limits: &OracleLimits,
) -> Result<(u64, ProductionPlan)> {
    let n = inst.periods();
    let mut remaining = vec![0u64; n + 1];
    for i in (0..n).rev() {
        remaining[i] = remaining[i + 1] + inst.demand()[i];
    }
    let mut search = Search {
        inst,
        remaining,
        scale: limits.production_cap_scale.max(1),
        max_plans: limits.max_plans,
        scored: 0,
        x: vec![0; n],
        y: vec![0; n],
        best: None,
    };
    search.visit(0, inst.returns()[0], 0)?;
    // Manufacturing everything is always within the cap.
    Ok(search.best.expect("at least one feasible plan"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{LotSizingParams, UnitCosts};
    use crate::reduction::{reduce, REDUCED_COSTS};

    fn part(items: &[i64]) -> PartitionInstance {
        PartitionInstance::new(items).unwrap()
    }

    #[test]
    fn partition_enumeration() {
        let limits = OracleLimits::default();
        let no = brute_force_partition(&part(&[10, 34, 40]), &limits).unwrap();
        assert_eq!(no.decision, Decision::NoSolution);
        let yes = brute_force_partition(&part(&[10, 30, 20]), &limits).unwrap();
        assert_eq!(yes.subset, Some(vec![2]));
        let pair = brute_force_partition(&part(&[1, 1]), &limits).unwrap();
        assert_eq!(pair.subset, Some(vec![1]));
    }

    #[test]
    fn partition_enumeration_refuses_large_n() {
        let limits = OracleLimits {
            max_n_enum: 3,
            ..OracleLimits::default()
        };
        assert!(matches!(
            brute_force_partition(&part(&[1, 1, 1, 1]), &limits),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn reachable_sums() {
        assert!(!subset_sum_reachable(&[10, 34, 40], 42));
        assert!(subset_sum_reachable(&[10, 33, 40, 5, 8], 48));
        assert!(subset_sum_reachable(&[10, 33, 40, 5, 8], 0));
        assert!(subset_sum_reachable(&[], 0));
        assert!(!subset_sum_reachable(&[3], 4));
    }

    #[test]
    fn dlsp_enumeration_small_cases() {
        let limits = OracleLimits::default();
        let (v, _) = brute_force_dlsp(&reduce(&part(&[1, 1])).unwrap(), &limits).unwrap();
        assert_eq!(v, 3);

        let one = LotSizingInstance::new(LotSizingParams::constant(vec![2], vec![1], REDUCED_COSTS))
            .unwrap();
        assert_eq!(brute_force_dlsp(&one, &limits).unwrap().0, 3);

        let costs = UnitCosts {
            remanufacture_setup: 1,
            manufacture_setup: 2,
            serviceable_holding: 3,
            core_holding: 0,
            remanufacture: 0,
            manufacture: 4,
        };
        let forced = LotSizingInstance::new(LotSizingParams::constant(vec![1], vec![0], costs))
            .unwrap();
        let (v, plan) = brute_force_dlsp(&forced, &limits).unwrap();
        assert_eq!(v, 6);
        assert_eq!(plan, ProductionPlan::new(vec![0], vec![1]));
    }

    #[test]
    fn dlsp_enumeration_respects_plan_cap() {
        let limits = OracleLimits {
            max_plans: 5,
            ..OracleLimits::default()
        };
        let inst = reduce(&part(&[3, 3, 2])).unwrap();
        assert!(matches!(
            brute_force_dlsp(&inst, &limits),
            Err(Error::TooLarge { .. })
        ));
    }
}
