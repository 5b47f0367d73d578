//! Partition and lot-sizing instances, the cost assumptions, and exact plan
//! costing.
//!
//! Periods are stored 0-based; everything reported back to a user (assumption
//! violations, infeasibility errors, subsets) uses 1-based period numbers.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `𝕀(x)`: 1 for positive `x`, 0 otherwise.
#[inline]
pub fn indicator(x: u64) -> u64 {
    u64::from(x > 0)
}

/// A multiset of positive integers to split into two equal-sum halves.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartitionInstance {
    items: Vec<u64>,
    half_sum: Option<u64>,
}

impl PartitionInstance {
    pub fn new(items: &[i64]) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::EmptyInstance);
        }
        let mut parsed = Vec::with_capacity(items.len());
        for (index, &value) in items.iter().enumerate() {
            if value <= 0 {
                return Err(Error::NonPositiveItem {
                    index: index + 1,
                    value,
                });
            }
            parsed.push(value as u64);
        }
        Self::from_positive(parsed)
    }

    /// Builds from already-unsigned items, still rejecting zeros.
    pub fn from_positive(items: Vec<u64>) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::EmptyInstance);
        }
        if let Some(index) = items.iter().position(|&a| a == 0) {
            return Err(Error::NonPositiveItem {
                index: index + 1,
                value: 0,
            });
        }
        let total = items
            .iter()
            .try_fold(0u64, |acc, &a| acc.checked_add(a))
            .filter(|&t| t <= i64::MAX as u64)
            .ok_or(Error::Overflow)?;
        let half_sum = (total % 2 == 0).then_some(total / 2);
        Ok(Self { items, half_sum })
    }

    pub fn items(&self) -> &[u64] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.items.iter().sum()
    }

    /// `C` with `Σaᵢ = 2C`, or `None` when the total is odd.
    pub fn half_sum(&self) -> Option<u64> {
        self.half_sum
    }

    pub fn max_item(&self) -> u64 {
        self.items.iter().copied().max().unwrap_or(0)
    }
}

pub fn validate_partition(items: &[i64]) -> Result<PartitionInstance> {
    PartitionInstance::new(items)
}

/// All per-period parameters of one period. Index `N` (one past the last
/// period) reads as [`Period::SENTINEL`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Period {
    pub demand: u64,
    pub returns: u64,
    pub remanufacture_setup: u64,
    pub manufacture_setup: u64,
    pub serviceable_holding: u64,
    pub core_holding: u64,
    pub remanufacture_cost: u64,
    pub manufacture_cost: u64,
}

impl Period {
    pub const SENTINEL: Period = Period {
        demand: 0,
        returns: 0,
        remanufacture_setup: 0,
        manufacture_setup: 0,
        serviceable_holding: 0,
        core_holding: 0,
        remanufacture_cost: 0,
        manufacture_cost: 0,
    };
}

/// Cost parameters shared by every period.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct UnitCosts {
    pub remanufacture_setup: u64,
    pub manufacture_setup: u64,
    pub serviceable_holding: u64,
    pub core_holding: u64,
    pub remanufacture: u64,
    pub manufacture: u64,
}

/// Raw, unvalidated lot-sizing parameters. Every vector has one entry per
/// period.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LotSizingParams {
    pub demand: Vec<u64>,
    pub returns: Vec<u64>,
    pub remanufacture_setup: Vec<u64>,
    pub manufacture_setup: Vec<u64>,
    pub serviceable_holding: Vec<u64>,
    pub core_holding: Vec<u64>,
    pub remanufacture_cost: Vec<u64>,
    pub manufacture_cost: Vec<u64>,
}

impl LotSizingParams {
    pub fn constant(demand: Vec<u64>, returns: Vec<u64>, costs: UnitCosts) -> Self {
        let n = demand.len();
        Self {
            demand,
            returns,
            remanufacture_setup: vec![costs.remanufacture_setup; n],
            manufacture_setup: vec![costs.manufacture_setup; n],
            serviceable_holding: vec![costs.serviceable_holding; n],
            core_holding: vec![costs.core_holding; n],
            remanufacture_cost: vec![costs.remanufacture; n],
            manufacture_cost: vec![costs.manufacture; n],
        }
    }
}

/// A validated lot-sizing instance with remanufacturing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LotSizingInstance {
    params: LotSizingParams,
}

impl LotSizingInstance {
    pub fn new(params: LotSizingParams) -> Result<Self> {
        let n = params.demand.len();
        if n == 0 {
            return Err(Error::NoPeriods);
        }
        let lengths = [
            ("returns", params.returns.len()),
            ("remanufacture_setup", params.remanufacture_setup.len()),
            ("manufacture_setup", params.manufacture_setup.len()),
            ("serviceable_holding", params.serviceable_holding.len()),
            ("core_holding", params.core_holding.len()),
            ("remanufacture_cost", params.remanufacture_cost.len()),
            ("manufacture_cost", params.manufacture_cost.len()),
        ];
        for (name, found) in lengths {
            if found != n {
                return Err(Error::LengthMismatch {
                    name,
                    expected: n,
                    found,
                });
            }
        }
        if let Some(i) = params.demand.iter().position(|&d| d == 0) {
            return Err(Error::ZeroDemand { period: i + 1 });
        }
        if cost_guard(&params).is_none_or(|g| g > i64::MAX as u128) {
            return Err(Error::Overflow);
        }
        Ok(Self { params })
    }

    pub fn params(&self) -> &LotSizingParams {
        &self.params
    }

    pub fn periods(&self) -> usize {
        self.params.demand.len()
    }

    pub fn demand(&self) -> &[u64] {
        &self.params.demand
    }

    pub fn returns(&self) -> &[u64] {
        &self.params.returns
    }

    /// Parameters of 0-based period `i`; `i == N` gives the zero sentinel.
    pub fn period(&self, i: usize) -> Period {
        let p = &self.params;
        if i >= self.periods() {
            return Period::SENTINEL;
        }
        Period {
            demand: p.demand[i],
            returns: p.returns[i],
            remanufacture_setup: p.remanufacture_setup[i],
            manufacture_setup: p.manufacture_setup[i],
            serviceable_holding: p.serviceable_holding[i],
            core_holding: p.core_holding[i],
            remanufacture_cost: p.remanufacture_cost[i],
            manufacture_cost: p.manufacture_cost[i],
        }
    }

    pub fn total_demand(&self) -> u64 {
        self.params.demand.iter().sum()
    }

    pub fn total_returns(&self) -> u64 {
        self.params.returns.iter().sum()
    }

    pub fn check_assumptions(&self) -> AssumptionReport {
        let mut violations = Vec::new();
        for i in 0..self.periods() {
            let cur = self.period(i);
            let next = self.period(i + 1);
            let a_lhs = cur.serviceable_holding + cur.manufacture_cost;
            let a_rhs = next.manufacture_setup + next.manufacture_cost;
            if a_lhs <= a_rhs {
                violations.push(AssumptionViolation {
                    period: i + 1,
                    which: Assumption::Manufacture,
                });
            }
            let b_lhs = cur.serviceable_holding + cur.remanufacture_cost;
            let b_rhs = next.remanufacture_setup + cur.core_holding + next.remanufacture_cost;
            if b_lhs <= b_rhs {
                violations.push(AssumptionViolation {
                    period: i + 1,
                    which: Assumption::Remanufacture,
                });
            }
        }
        AssumptionReport {
            ok: violations.is_empty(),
            violations,
        }
    }
}

/// `N·(max K_r + max ΔK_m) + ΣD·(max c_r + max c_m + max h_s) + ΣR·N·max h_c`.
fn cost_guard(p: &LotSizingParams) -> Option<u128> {
    let max = |v: &[u64]| v.iter().copied().max().unwrap_or(0) as u128;
    let n = p.demand.len() as u128;
    let sum_d: u128 = p.demand.iter().map(|&d| d as u128).sum();
    let sum_r: u128 = p.returns.iter().map(|&r| r as u128).sum();
    let setups = n.checked_mul(max(&p.remanufacture_setup) + max(&p.manufacture_setup))?;
    let units = sum_d.checked_mul(
        max(&p.remanufacture_cost) + max(&p.manufacture_cost) + max(&p.serviceable_holding),
    )?;
    let cores = sum_r.checked_mul(n)?.checked_mul(max(&p.core_holding))?;
    setups.checked_add(units)?.checked_add(cores)
}

/// Which half of the cost assumption failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Assumption {
    /// (a) `h_{s,i} + c_{m,i} > ΔK_{m,i+1} + c_{m,i+1}`
    Manufacture,
    /// (b) `h_{s,i} + c_{r,i} > K_{r,i+1} + h_{c,i} + c_{r,i+1}`
    Remanufacture,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AssumptionViolation {
    /// 1-based period.
    pub period: usize,
    pub which: Assumption,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionReport {
    pub ok: bool,
    pub violations: Vec<AssumptionViolation>,
}

/// Remanufactured (`x`) and manufactured (`y`) quantities per period.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ProductionPlan {
    pub remanufacture: Vec<u64>,
    pub manufacture: Vec<u64>,
}

impl ProductionPlan {
    pub fn new(remanufacture: Vec<u64>, manufacture: Vec<u64>) -> Self {
        Self {
            remanufacture,
            manufacture,
        }
    }

    pub fn len(&self) -> usize {
        self.remanufacture.len()
    }

    pub fn is_empty(&self) -> bool {
        self.remanufacture.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PlanConstraint {
    /// `xᵢ > Jᵢ`
    CoreCapacity { remanufacture: u64, cores: u64 },
    /// `I_{i+1} < 0`
    Shortage { missing: u64 },
}

impl fmt::Display for PlanConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::CoreCapacity {
                remanufacture,
                cores,
            } => write!(f, "remanufactures {remanufacture} with {cores} cores on hand"),
            Self::Shortage { missing } => write!(f, "demand short by {missing}"),
        }
    }
}

/// Simulates the plan from `J₁ = R₁`, `I₁ = 0` and returns its total cost.
pub fn evaluate_plan(inst: &LotSizingInstance, plan: &ProductionPlan) -> Result<u64> {
    let n = inst.periods();
    let found = plan.remanufacture.len().max(plan.manufacture.len());
    if plan.remanufacture.len() != n || plan.manufacture.len() != n {
        return Err(Error::PlanLength { expected: n, found });
    }
    let mut cores = inst.period(0).returns;
    let mut stock = 0u64;
    let mut total = 0u64;
    for i in 0..n {
        let p = inst.period(i);
        let x = plan.remanufacture[i];
        let y = plan.manufacture[i];
        if x > cores {
            return Err(Error::InfeasiblePlan {
                period: i + 1,
                constraint: PlanConstraint::CoreCapacity {
                    remanufacture: x,
                    cores,
                },
            });
        }
        let available = stock
            .checked_add(x)
            .and_then(|v| v.checked_add(y))
            .ok_or(Error::Overflow)?;
        if available < p.demand {
            return Err(Error::InfeasiblePlan {
                period: i + 1,
                constraint: PlanConstraint::Shortage {
                    missing: p.demand - available,
                },
            });
        }
        let held_cores = cores - x;
        stock = available - p.demand;

        let terms = [
            p.remanufacture_setup.checked_mul(indicator(x)),
            p.manufacture_setup.checked_mul(indicator(y)),
            p.remanufacture_cost.checked_mul(x),
            p.manufacture_cost.checked_mul(y),
            p.core_holding.checked_mul(held_cores),
            p.serviceable_holding.checked_mul(stock),
        ];
        for term in terms {
            total = term
                .and_then(|t| total.checked_add(t))
                .ok_or(Error::Overflow)?;
        }
        cores = held_cores
            .checked_add(inst.period(i + 1).returns)
            .ok_or(Error::Overflow)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::reduce;
    use proptest::prelude::*;

    fn reduced(items: &[i64]) -> LotSizingInstance {
        reduce(&PartitionInstance::new(items).unwrap()).unwrap()
    }

    #[test]
    fn partition_validation() {
        let p = validate_partition(&[10, 30, 20]).unwrap();
        assert_eq!((p.len(), p.half_sum()), (3, Some(30)));
        assert_eq!(validate_partition(&[1, 1]).unwrap().half_sum(), Some(1));
        assert_eq!(validate_partition(&[1, 2]).unwrap().half_sum(), None);
        assert_eq!(validate_partition(&[]).unwrap_err(), Error::EmptyInstance);
        assert_eq!(
            validate_partition(&[3, 0, 1]).unwrap_err(),
            Error::NonPositiveItem { index: 2, value: 0 }
        );
        assert_eq!(
            validate_partition(&[-4]).unwrap_err(),
            Error::NonPositiveItem { index: 1, value: -4 }
        );
    }

    #[test]
    fn structural_validation() {
        let mut params = LotSizingParams::constant(vec![1, 2], vec![0, 0], UnitCosts::default());
        params.core_holding.pop();
        assert!(matches!(
            LotSizingInstance::new(params),
            Err(Error::LengthMismatch { name: "core_holding", .. })
        ));
        assert_eq!(
            LotSizingInstance::new(LotSizingParams::default()).unwrap_err(),
            Error::NoPeriods
        );
        let zero = LotSizingParams::constant(vec![1, 0], vec![0, 0], UnitCosts::default());
        assert_eq!(
            LotSizingInstance::new(zero).unwrap_err(),
            Error::ZeroDemand { period: 2 }
        );
        let huge = LotSizingParams::constant(
            vec![1 << 40, 1 << 40],
            vec![0, 0],
            UnitCosts {
                manufacture: 1 << 24,
                ..UnitCosts::default()
            },
        );
        assert_eq!(LotSizingInstance::new(huge).unwrap_err(), Error::Overflow);
    }

    #[test]
    fn assumption_checks() {
        assert!(reduced(&[10, 30, 20]).check_assumptions().ok);

        let flat = LotSizingInstance::new(LotSizingParams::constant(
            vec![1],
            vec![0],
            UnitCosts::default(),
        ))
        .unwrap();
        let report = flat.check_assumptions();
        assert!(!report.ok);
        assert!(report.violations.contains(&AssumptionViolation {
            period: 1,
            which: Assumption::Manufacture
        }));

        let params = LotSizingParams {
            demand: vec![1, 1],
            returns: vec![0, 0],
            remanufacture_setup: vec![1, 5],
            manufacture_setup: vec![0, 0],
            serviceable_holding: vec![3, 3],
            core_holding: vec![0, 0],
            remanufacture_cost: vec![0, 0],
            manufacture_cost: vec![1, 1],
        };
        let report = LotSizingInstance::new(params).unwrap().check_assumptions();
        assert_eq!(
            report.violations,
            vec![AssumptionViolation {
                period: 1,
                which: Assumption::Remanufacture
            }]
        );
    }

    #[test]
    fn plan_costs() {
        let inst = reduced(&[10, 30, 20]);
        let split = ProductionPlan::new(vec![0, 30, 0], vec![10, 0, 20]);
        assert_eq!(evaluate_plan(&inst, &split).unwrap(), 33);
        let all_made = ProductionPlan::new(vec![0, 0, 0], vec![10, 30, 20]);
        assert_eq!(evaluate_plan(&inst, &all_made).unwrap(), 63);
        // One unit held over periods 1 and 2 at h_s = 3 each.
        let early = ProductionPlan::new(vec![0, 30, 0], vec![11, 0, 19]);
        assert_eq!(evaluate_plan(&inst, &early).unwrap(), 33 + 6);
    }

    #[test]
    fn plan_infeasibility() {
        let inst = reduced(&[10, 30, 20]);
        let over = ProductionPlan::new(vec![31, 0, 0], vec![0, 0, 0]);
        assert_eq!(
            evaluate_plan(&inst, &over).unwrap_err(),
            Error::InfeasiblePlan {
                period: 1,
                constraint: PlanConstraint::CoreCapacity {
                    remanufacture: 31,
                    cores: 30
                }
            }
        );
        let short = ProductionPlan::new(vec![0, 0, 0], vec![10, 29, 20]);
        assert_eq!(
            evaluate_plan(&inst, &short).unwrap_err(),
            Error::InfeasiblePlan {
                period: 2,
                constraint: PlanConstraint::Shortage { missing: 1 }
            }
        );
        let wrong_len = ProductionPlan::new(vec![0], vec![60]);
        assert!(matches!(
            evaluate_plan(&inst, &wrong_len),
            Err(Error::PlanLength { expected: 3, .. })
        ));
    }

    /// Small general instance plus a feasible plan built by walking forward.
    fn instance_and_plan() -> impl Strategy<Value = (LotSizingInstance, ProductionPlan)> {
        (1usize..5)
            .prop_flat_map(|n| {
                let v = |hi: u64| prop::collection::vec(0..=hi, n);
                (
                    prop::collection::vec(1u64..=5, n),
                    v(5),
                    (v(6), v(6), v(6), v(6), v(6), v(6)),
                    prop::collection::vec((0u64..=100, 0u64..=3), n),
                )
            })
            .prop_map(|(demand, returns, (kr, km, hs, hc, cr, cm), picks)| {
                let params = LotSizingParams {
                    demand,
                    returns,
                    remanufacture_setup: kr,
                    manufacture_setup: km,
                    serviceable_holding: hs,
                    core_holding: hc,
                    remanufacture_cost: cr,
                    manufacture_cost: cm,
                };
                let inst = LotSizingInstance::new(params).unwrap();
                let mut cores = inst.period(0).returns;
                let mut stock = 0;
                let (mut xs, mut ys) = (Vec::new(), Vec::new());
                for (i, (xp, extra)) in picks.into_iter().enumerate() {
                    let d = inst.period(i).demand;
                    let x = xp % (cores + 1);
                    let y = d.saturating_sub(stock + x) + extra;
                    stock = stock + x + y - d;
                    cores = cores - x + inst.period(i + 1).returns;
                    xs.push(x);
                    ys.push(y);
                }
                (inst, ProductionPlan::new(xs, ys))
            })
    }

    proptest! {
        #[test]
        fn feasible_plans_cost_nonnegative((inst, plan) in instance_and_plan()) {
            prop_assert!(evaluate_plan(&inst, &plan).is_ok());
        }

        #[test]
        fn shifting_manufacture_earlier_changes_cost_exactly(
            (inst, plan) in instance_and_plan(),
            pick in 0usize..4,
        ) {
            let n = inst.periods();
            prop_assume!(n >= 2);
            let i = pick % (n - 1);
            prop_assume!(plan.manufacture[i + 1] >= 1);
            let before = evaluate_plan(&inst, &plan).unwrap();
            let mut moved = plan.clone();
            moved.manufacture[i] += 1;
            moved.manufacture[i + 1] -= 1;
            let after = evaluate_plan(&inst, &moved).unwrap() as i64;

            let cur = inst.period(i);
            let next = inst.period(i + 1);
            let mut delta = (cur.serviceable_holding + cur.manufacture_cost) as i64
                - next.manufacture_cost as i64;
            if moved.manufacture[i + 1] == 0 {
                delta -= next.manufacture_setup as i64;
            }
            if plan.manufacture[i] == 0 {
                delta += cur.manufacture_setup as i64;
            }
            prop_assert_eq!(after - before as i64, delta);
        }

        #[test]
        fn reduced_instances_satisfy_assumptions(items in prop::collection::vec(1i64..1000, 1..30)) {
            let p = PartitionInstance::new(&items).unwrap();
            prop_assume!(p.half_sum().is_some());
            prop_assert!(reduce(&p).unwrap().check_assumptions().ok);
        }
    }
}
