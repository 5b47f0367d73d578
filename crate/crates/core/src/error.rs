use std::path::PathBuf;

use thiserror::Error;

use crate::instance::{AssumptionViolation, PlanConstraint};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("partition instance has no items")]
    EmptyInstance,

    #[error("item {index} is {value}; every item must be a positive integer")]
    NonPositiveItem { index: usize, value: i64 },

    #[error("item total {total} is odd, so no half-sum exists")]
    OddTotal { total: u64 },

    #[error("lot-sizing instance needs at least one period")]
    NoPeriods,

    #[error("parameter `{name}` has length {found}, expected {expected}")]
    LengthMismatch {
        name: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("demand in period {period} is zero; demands must be positive")]
    ZeroDemand { period: usize },

    #[error("instance magnitudes exceed the 63-bit cost guard")]
    Overflow,

    #[error("instance violates the cost assumptions: {0:?}")]
    AssumptionViolated(Vec<AssumptionViolation>),

    #[error("plan covers {found} periods, instance has {expected}")]
    PlanLength { expected: usize, found: usize },

    #[error("plan infeasible in period {period}: {constraint}")]
    InfeasiblePlan {
        period: usize,
        constraint: PlanConstraint,
    },

    #[error("continuation value for core level {state} is not in the next-period table")]
    MissingState { state: u64 },

    #[error("period index {period} out of range for {periods} periods")]
    PeriodOutOfRange { period: usize, periods: usize },

    #[error("instance does not have the reduced-instance cost pattern ({reason})")]
    NotReducedInstance { reason: &'static str },

    #[error("item number {index} is outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("oracle refused: {what} ({size}) exceeds cap {cap}")]
    TooLarge {
        what: &'static str,
        size: u64,
        cap: u64,
    },

    #[error("bad generator parameters: {0}")]
    BadParams(String),

    #[error("{}line {line}: cannot parse `{token}` as a positive integer", path_prefix(.path))]
    Parse {
        path: Option<PathBuf>,
        line: usize,
        token: String,
    },

    #[error("{}no items found", path_prefix(.path))]
    EmptyFile { path: Option<PathBuf> },

    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
}

fn path_prefix(path: &Option<PathBuf>) -> String {
    match path {
        Some(p) => format!("{}: ", p.display()),
        None => String::new(),
    }
}
