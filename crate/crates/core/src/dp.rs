//! Backward dynamic program over core inventory levels.
//!
//! Under the cost assumptions every optimal plan produces exactly the period
//! demand, so the only state is `Jᵢ`, the number of cores on hand at the start
//! of period `i`, and the only decision is how many units `xᵢ ≤ min(Jᵢ, Dᵢ)`
//! to remanufacture; the remaining `Dᵢ − xᵢ` are manufactured.
//!
//! States are grouped per period by their shifted level `Ĵᵢ = Jᵢ − Rᵢ`, which
//! is confined to a window `[Lᵢ, Uᵢ]` computed by [`StateBounds`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{indicator, LotSizingInstance, ProductionPlan};

/// Which shifted-state window each period is evaluated over.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub enum Window {
    /// `Lᵢ = (L_{i−1} + R_{i−1} − D_{i−1})⁺` up to `Uᵢ = R₁ + … + R_{i−1}`.
    #[default]
    Tight,
    /// `0` up to `Uᵢ`; evaluates more states for the same answer.
    FromZero,
}

/// Which recursion evaluates each state.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub enum Method {
    /// Scan every `xᵢ ∈ 0..=min(Jᵢ, Dᵢ)`.
    #[default]
    Full,
    /// Only `xᵢ = min(Jᵢ, Dᵢ)` and `xᵢ = 0`. Valid for reduced partition
    /// instances only.
    TwoBranch,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolverConfig {
    pub window: Window,
    pub method: Method,
    /// Retain every period's value array in [`ValueTable::values`].
    pub keep_values: bool,
}

impl SolverConfig {
    pub fn fast() -> Self {
        Self {
            method: Method::TwoBranch,
            ..Self::default()
        }
    }
}

/// Machine-independent work measure of one solve.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Counters {
    /// States evaluated.
    pub cells: u64,
    /// Recursion terms evaluated.
    pub candidates: u64,
}

/// Per-period window `[Lᵢ, Uᵢ]` of shifted core levels, 0-based periods.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StateBounds {
    lower: Vec<u64>,
    upper: Vec<u64>,
}

impl StateBounds {
    pub fn compute(inst: &LotSizingInstance, window: Window) -> Self {
        let n = inst.periods();
        let mut lower = Vec::with_capacity(n);
        let mut upper = Vec::with_capacity(n);
        // Period 1 has the single state J₁ = R₁.
        lower.push(0);
        upper.push(0);
        let mut tight = 0u64;
        let mut received = 0u64;
        for i in 1..n {
            let prev = inst.period(i - 1);
            tight = (tight + prev.returns).saturating_sub(prev.demand);
            received += prev.returns;
            lower.push(match window {
                Window::Tight => tight,
                Window::FromZero => 0,
            });
            upper.push(received);
        }
        Self { lower, upper }
    }

    pub fn periods(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self, period: usize) -> u64 {
        self.lower[period]
    }

    pub fn upper(&self, period: usize) -> u64 {
        self.upper[period]
    }

    pub fn width(&self, period: usize) -> u64 {
        self.upper[period] - self.lower[period] + 1
    }

    pub fn contains(&self, period: usize, shifted: u64) -> bool {
        (self.lower[period]..=self.upper[period]).contains(&shifted)
    }

    /// `Σᵢ (Uᵢ − Lᵢ + 1)`.
    pub fn cells(&self) -> u64 {
        (0..self.periods()).map(|i| self.width(i)).sum()
    }
}

pub fn compute_state_bounds(inst: &LotSizingInstance) -> StateBounds {
    StateBounds::compute(inst, Window::Tight)
}

/// Optimal cost-to-go of the following period, as seen from period `i`.
#[derive(Debug, Clone, Copy)]
pub enum Continuation<'a> {
    /// Past the horizon: `C_{N+1}(·) = 0`.
    Terminal,
    /// `values[k]` is the cost-to-go at core level `first_state + k`.
    Table { first_state: u64, values: &'a [u64] },
}

impl Continuation<'_> {
    /// Continuation values for the core levels `lowest..=highest`.
    fn span(&self, lowest: u64, highest: u64) -> Result<Option<&[u64]>> {
        match *self {
            Continuation::Terminal => Ok(None),
            Continuation::Table {
                first_state,
                values,
            } => {
                if lowest < first_state {
                    return Err(Error::MissingState { state: lowest });
                }
                let last = first_state + values.len() as u64;
                if highest >= last {
                    return Err(Error::MissingState { state: highest });
                }
                let start = (lowest - first_state) as usize;
                let end = (highest - first_state) as usize;
                Ok(Some(&values[start..=end]))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StageChoice {
    pub cost: u64,
    pub remanufacture: u64,
}

fn check_period(inst: &LotSizingInstance, period: usize) -> Result<()> {
    if period >= inst.periods() {
        return Err(Error::PeriodOutOfRange {
            period,
            periods: inst.periods(),
        });
    }
    Ok(())
}

/// Minimum over `xᵢ ∈ 0..=min(Jᵢ, Dᵢ)` of the period cost plus cost-to-go at
/// `Jᵢ − xᵢ + R_{i+1}`. Ties go to the largest `xᵢ`. `period` is 0-based.
pub fn stage_value(
    inst: &LotSizingInstance,
    period: usize,
    cores: u64,
    next: Continuation<'_>,
    counters: &mut Counters,
) -> Result<StageChoice> {
    check_period(inst, period)?;
    let p = inst.period(period);
    let next_returns = inst.period(period + 1).returns;
    let reach = cores.min(p.demand);
    let futures = next.span(cores - reach + next_returns, cores + next_returns)?;
    counters.candidates += reach + 1;

    // hc·(J − x) + cm·(D − x) + cr·x, split so that nothing goes negative.
    let fixed = p.core_holding * cores + p.manufacture_cost * p.demand;
    let falling = p.core_holding + p.manufacture_cost;
    let term = |x: u64| {
        p.remanufacture_setup * indicator(x)
            + p.manufacture_setup * indicator(p.demand - x)
            + (fixed + p.remanufacture_cost * x - falling * x)
    };

    let mut best = StageChoice {
        cost: u64::MAX,
        remanufacture: 0,
    };
    match futures {
        None => {
            for x in (0..=reach).rev() {
                let cost = term(x);
                if cost < best.cost {
                    best = StageChoice {
                        cost,
                        remanufacture: x,
                    };
                }
            }
        }
        Some(futures) => {
            // futures[t] belongs to x = reach − t: walking t upward visits x
            // from largest to smallest, so strict `<` keeps the largest x.
            for (t, &future) in futures.iter().enumerate() {
                let x = reach - t as u64;
                let cost = term(x) + future;
                if cost < best.cost {
                    best = StageChoice {
                        cost,
                        remanufacture: x,
                    };
                }
            }
        }
    }
    Ok(best)
}

/// Two-branch recursion for reduced instances: remanufacture as much as
/// possible, or manufacture everything.
pub fn fast_stage_value(
    inst: &LotSizingInstance,
    period: usize,
    cores: u64,
    next: Continuation<'_>,
    counters: &mut Counters,
) -> Result<StageChoice> {
    check_period(inst, period)?;
    let demand = inst.period(period).demand;
    let reach = cores.min(demand);
    let futures = next.span(cores - reach, cores)?;
    counters.candidates += 2;
    let (future_max, future_none) = match futures {
        None => (0, 0),
        Some(f) => (f[0], f[f.len() - 1]),
    };
    let remanufacture_max =
        indicator(reach) + indicator(demand - reach) + (demand - reach) + future_max;
    let manufacture_all = 1 + demand + future_none;
    Ok(if remanufacture_max <= manufacture_all {
        StageChoice {
            cost: remanufacture_max,
            remanufacture: reach,
        }
    } else {
        StageChoice {
            cost: manufacture_all,
            remanufacture: 0,
        }
    })
}

/// Closed-form last-period cost-to-go of a reduced instance.
pub fn tail_closed_form(demand: u64, cores: u64) -> u64 {
    match cores {
        0 => 1 + demand,
        1 => indicator(demand - 1) + demand,
        j if j < demand => 2 + demand - j,
        _ => 1,
    }
}

/// Per-period policy and (optionally) value arrays, indexed by `Ĵᵢ − Lᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValueTable {
    pub policy: Vec<Vec<u64>>,
    pub values: Option<Vec<Vec<u64>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DpSolution {
    /// `C₁(R₁)`, the optimal total cost.
    pub value: u64,
    pub plan: ProductionPlan,
    /// `J₁ … J_{N+1}` along the optimal plan.
    pub cores: Vec<u64>,
    /// `I₁ … I_{N+1}`; identically zero.
    pub inventory: Vec<u64>,
    pub counters: Counters,
    pub bounds: StateBounds,
    pub table: ValueTable,
}

impl DpSolution {
    /// Periods (1-based) in which anything is remanufactured.
    pub fn remanufacture_periods(&self) -> Vec<usize> {
        self.plan
            .remanufacture
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > 0)
            .map(|(i, _)| i + 1)
            .collect()
    }
}

/// Solves with the full recursion over the tight windows.
pub fn solve_backward(inst: &LotSizingInstance) -> Result<DpSolution> {
    solve(inst, &SolverConfig::default())
}

/// Solves a reduced partition instance with the two-branch recursion.
pub fn solve_dlspp_fast(inst: &LotSizingInstance) -> Result<DpSolution> {
    solve(inst, &SolverConfig::fast())
}

pub fn solve(inst: &LotSizingInstance, config: &SolverConfig) -> Result<DpSolution> {
    match config.method {
        Method::Full => {
            let report = inst.check_assumptions();
            if !report.ok {
                return Err(Error::AssumptionViolated(report.violations));
            }
            run(inst, config, stage_value)
        }
        Method::TwoBranch => {
            check_reduced(inst)?;
            run(inst, config, fast_stage_value)
        }
    }
}

/// Accepts exactly the cost pattern produced by the partition reduction.
pub fn check_reduced(inst: &LotSizingInstance) -> Result<()> {
    let p = inst.params();
    let all = |v: &[u64], want: u64| v.iter().all(|&c| c == want);
    let reason = if !p.returns[1..].iter().all(|&r| r == 0) {
        Some("returns after period 1")
    } else if !all(&p.remanufacture_setup, 1) || !all(&p.manufacture_setup, 1) {
        Some("setup costs must be 1")
    } else if !all(&p.serviceable_holding, 3) {
        Some("serviceable holding cost must be 3")
    } else if !all(&p.core_holding, 0) || !all(&p.remanufacture_cost, 0) {
        Some("core holding and remanufacturing must be free")
    } else if !all(&p.manufacture_cost, 1) {
        Some("unit manufacturing cost must be 1")
    } else {
        None
    };
    match reason {
        Some(reason) => Err(Error::NotReducedInstance { reason }),
        None => Ok(()),
    }
}

type Stage = fn(&LotSizingInstance, usize, u64, Continuation<'_>, &mut Counters) -> Result<StageChoice>;

fn run(inst: &LotSizingInstance, config: &SolverConfig, stage: Stage) -> Result<DpSolution> {
    let n = inst.periods();
    let bounds = StateBounds::compute(inst, config.window);
    let mut counters = Counters::default();
    let mut policy = vec![Vec::new(); n];
    let mut kept = config.keep_values.then(|| vec![Vec::new(); n]);
    let mut next: Vec<u64> = Vec::new();

    for i in (0..n).rev() {
        let returns = inst.period(i).returns;
        let width = bounds.width(i) as usize;
        let mut values = Vec::with_capacity(width);
        let mut choices = Vec::with_capacity(width);
        let continuation = if i + 1 == n {
            Continuation::Terminal
        } else {
            Continuation::Table {
                first_state: bounds.lower(i + 1) + inst.period(i + 1).returns,
                values: &next,
            }
        };
        for shifted in bounds.lower(i)..=bounds.upper(i) {
            let choice = stage(inst, i, shifted + returns, continuation, &mut counters)?;
            values.push(choice.cost);
            choices.push(choice.remanufacture);
        }
        counters.cells += width as u64;
        policy[i] = choices;
        if let Some(kept) = kept.as_mut() {
            kept[i] = values.clone();
        }
        next = values;
    }
    let value = next[0];

    let mut remanufacture = Vec::with_capacity(n);
    let mut manufacture = Vec::with_capacity(n);
    let mut cores = Vec::with_capacity(n + 1);
    let mut level = inst.period(0).returns;
    for (i, choices) in policy.iter().enumerate() {
        let p = inst.period(i);
        cores.push(level);
        let shifted = level - p.returns;
        debug_assert!(bounds.contains(i, shifted));
        let x = choices[(shifted - bounds.lower(i)) as usize];
        remanufacture.push(x);
        manufacture.push(p.demand - x);
        level = level - x + inst.period(i + 1).returns;
    }
    cores.push(level);

    Ok(DpSolution {
        value,
        plan: ProductionPlan::new(remanufacture, manufacture),
        cores,
        inventory: vec![0; n + 1],
        counters,
        bounds,
        table: ValueTable {
            policy,
            values: kept,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{LotSizingParams, PartitionInstance, UnitCosts};
    use crate::reduction::reduce;

    fn reduced(items: &[i64]) -> LotSizingInstance {
        reduce(&PartitionInstance::new(items).unwrap()).unwrap()
    }

    const REDUCED_COSTS: UnitCosts = UnitCosts {
        remanufacture_setup: 1,
        manufacture_setup: 1,
        serviceable_holding: 3,
        core_holding: 0,
        remanufacture: 0,
        manufacture: 1,
    };

    fn bounds_vecs(b: &StateBounds) -> (Vec<u64>, Vec<u64>) {
        (
            (0..b.periods()).map(|i| b.lower(i)).collect(),
            (0..b.periods()).map(|i| b.upper(i)).collect(),
        )
    }

    #[test]
    fn bounds_of_reduced_three_item_instance() {
        let b = compute_state_bounds(&reduced(&[10, 30, 20]));
        assert_eq!(bounds_vecs(&b), (vec![0, 20, 0], vec![0, 30, 30]));
        assert_eq!(b.cells(), 1 + 11 + 31);
    }

    #[test]
    fn bounds_single_period() {
        let inst = LotSizingInstance::new(LotSizingParams::constant(
            vec![7],
            vec![4],
            REDUCED_COSTS,
        ))
        .unwrap();
        assert_eq!(bounds_vecs(&compute_state_bounds(&inst)), (vec![0], vec![0]));
    }

    #[test]
    fn bounds_with_late_returns() {
        let inst = LotSizingInstance::new(LotSizingParams::constant(
            vec![5, 5],
            vec![2, 3],
            REDUCED_COSTS,
        ))
        .unwrap();
        let b = compute_state_bounds(&inst);
        assert_eq!(bounds_vecs(&b), (vec![0, 0], vec![0, 2]));
        let states: Vec<u64> = (b.lower(1)..=b.upper(1)).map(|s| s + 3).collect();
        assert_eq!(states, vec![3, 4, 5]);
    }

    #[test]
    fn from_zero_window_only_moves_lower_bounds() {
        let inst = reduced(&[10, 30, 20]);
        let b = StateBounds::compute(&inst, Window::FromZero);
        assert_eq!(bounds_vecs(&b), (vec![0, 0, 0], vec![0, 30, 30]));
    }

    #[test]
    fn last_period_stage_values() {
        let inst = reduced(&[10, 30, 20]);
        let mut c = Counters::default();
        let full = stage_value(&inst, 2, 20, Continuation::Terminal, &mut c).unwrap();
        assert_eq!(
            full,
            StageChoice {
                cost: 1,
                remanufacture: 20
            }
        );
        assert_eq!(c.candidates, 21);
        let empty = stage_value(&inst, 2, 0, Continuation::Terminal, &mut c).unwrap();
        assert_eq!(
            empty,
            StageChoice {
                cost: 21,
                remanufacture: 0
            }
        );
        assert_eq!(c.candidates, 22);
    }

    #[test]
    fn zero_cores_in_last_period_manufactures_everything() {
        let params = LotSizingParams {
            demand: vec![3, 9],
            returns: vec![0, 0],
            remanufacture_setup: vec![2, 2],
            manufacture_setup: vec![4, 5],
            serviceable_holding: vec![9, 9],
            core_holding: vec![1, 1],
            remanufacture_cost: vec![1, 1],
            manufacture_cost: vec![2, 3],
        };
        let inst = LotSizingInstance::new(params).unwrap();
        let mut c = Counters::default();
        let got = stage_value(&inst, 1, 0, Continuation::Terminal, &mut c).unwrap();
        assert_eq!(got.cost, 5 + 3 * 9);
        assert_eq!(got.remanufacture, 0);
    }

    #[test]
    fn missing_continuation_is_reported() {
        let inst = reduced(&[10, 30, 20]);
        let mut c = Counters::default();
        let short = [5u64; 4];
        let err = stage_value(
            &inst,
            1,
            30,
            Continuation::Table {
                first_state: 0,
                values: &short,
            },
            &mut c,
        )
        .unwrap_err();
        assert_eq!(err, Error::MissingState { state: 30 });
        assert!(matches!(
            stage_value(&inst, 3, 0, Continuation::Terminal, &mut c),
            Err(Error::PeriodOutOfRange { .. })
        ));
    }

    #[test]
    fn single_period_tie_prefers_remanufacturing() {
        let inst = LotSizingInstance::new(LotSizingParams::constant(
            vec![2],
            vec![1],
            REDUCED_COSTS,
        ))
        .unwrap();
        let sol = solve_backward(&inst).unwrap();
        assert_eq!(sol.value, 3);
        assert_eq!(sol.plan.remanufacture, vec![1]);
        assert_eq!(sol.plan.manufacture, vec![1]);
        assert_eq!(sol.counters.candidates, 2);
    }

    #[test]
    fn known_partition_values() {
        assert_eq!(solve_backward(&reduced(&[10, 30, 20])).unwrap().value, 33);
        assert_eq!(
            solve_backward(&reduced(&[10, 33, 38, 5, 50, 77, 89, 114]))
                .unwrap()
                .value,
            216
        );
        assert_eq!(solve_dlspp_fast(&reduced(&[10, 34, 40])).unwrap().value, 46);
        assert_eq!(solve_dlspp_fast(&reduced(&[1, 1])).unwrap().value, 3);
        assert_eq!(
            solve_dlspp_fast(&reduced(&[10, 33, 40, 5, 8, 10, 6, 7, 11, 8]))
                .unwrap()
                .value,
            79
        );
    }

    #[test]
    fn fast_path_counts_two_terms_per_cell() {
        let sol = solve_dlspp_fast(&reduced(&[10, 30, 20])).unwrap();
        assert_eq!(sol.counters.cells, 43);
        assert_eq!(sol.counters.candidates, 86);
    }

    #[test]
    fn fast_path_rejects_general_instances() {
        let inst = LotSizingInstance::new(LotSizingParams::constant(
            vec![2, 2],
            vec![1, 1],
            REDUCED_COSTS,
        ))
        .unwrap();
        assert!(matches!(
            solve_dlspp_fast(&inst),
            Err(Error::NotReducedInstance { .. })
        ));
    }

    #[test]
    fn solver_refuses_assumption_violations() {
        let inst = LotSizingInstance::new(LotSizingParams::constant(
            vec![1],
            vec![0],
            UnitCosts::default(),
        ))
        .unwrap();
        assert!(matches!(
            solve_backward(&inst),
            Err(Error::AssumptionViolated(_))
        ));
    }

    #[test]
    fn tail_formula_examples() {
        assert_eq!(tail_closed_form(20, 0), 21);
        assert_eq!(tail_closed_form(1, 1), 1);
        assert_eq!(tail_closed_form(20, 7), 15);
        assert_eq!(tail_closed_form(20, 1), 21);
        assert_eq!(tail_closed_form(20, 25), 1);
    }

    #[test]
    fn windows_agree_on_value() {
        let inst = reduced(&[10, 33, 40, 5, 8]);
        let tight = solve_backward(&inst).unwrap();
        let config = SolverConfig {
            window: Window::FromZero,
            ..SolverConfig::default()
        };
        let wide = solve(&inst, &config).unwrap();
        assert_eq!(tight.value, wide.value);
        assert!(wide.counters.cells > tight.counters.cells);
    }
}
