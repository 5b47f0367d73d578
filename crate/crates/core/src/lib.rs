//! Exact solver for lot sizing with remanufacturing, and a partition-problem
//! decision procedure built on it.
//!
//! A partition instance `{a₁, …, aₙ}` with `Σaᵢ = 2C` becomes a lot-sizing
//! instance whose optimal cost is exactly `n + C` when an equal-sum split
//! exists and strictly more otherwise. The split is the set of periods in
//! which the optimal plan remanufactures.

pub mod bench;
pub mod dp;
pub mod error;
pub mod instance;
pub mod io;
pub mod oracle;
pub mod reduction;
pub mod rng;
pub mod selftest;

pub use dp::{
    compute_state_bounds, solve, solve_backward, solve_dlspp_fast, stage_value, tail_closed_form,
    Counters, DpSolution, Method, SolverConfig, StateBounds, Window,
};
pub use error::{Error, Result};
pub use instance::{
    evaluate_plan, validate_partition, AssumptionReport, LotSizingInstance, LotSizingParams,
    PartitionInstance, ProductionPlan, UnitCosts,
};
pub use reduction::{decide_and_extract, reduce, verify_subset, Decision, PartitionAnswer};
