//! Random partition instances and the two runtime-scaling sweeps.
//!
//! Each range point draws its instance from its own SplitMix64 stream seeded
//! with `seed ^ point`, so widening a sweep never changes earlier rows.

use std::io::{self, Write};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::dp::SolverConfig;
use crate::error::{Error, Result};
use crate::instance::PartitionInstance;
use crate::reduction::{decide_and_extract_with, Decision};
use crate::rng::SplitMix64;

/// Items uniform on `[1, ⌊total/n⌋]` except the last, which takes the rest.
pub fn gen_fixed_total(n: usize, total: u64, rng: &mut SplitMix64) -> Result<Vec<u64>> {
    if n < 2 {
        return Err(Error::BadParams(format!("need n >= 2, got {n}")));
    }
    if total < n as u64 {
        return Err(Error::BadParams(format!(
            "total {total} is smaller than n = {n}"
        )));
    }
    let cap = total / n as u64;
    let mut items: Vec<u64> = (0..n - 1).map(|_| rng.uniform_from_one(cap)).collect();
    let drawn: u64 = items.iter().sum();
    items.push(total - drawn);
    Ok(items)
}

/// Five items summing to `c1`: four uniform on `[1, ⌊c1/5⌋]`, the fifth
/// takes the rest.
pub fn gen_scaled(c1: u64, rng: &mut SplitMix64) -> Result<Vec<u64>> {
    if c1 < 10 || !c1.is_multiple_of(2) {
        return Err(Error::BadParams(format!(
            "total {c1} must be even and at least 10"
        )));
    }
    gen_fixed_total(5, c1, rng)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub n: usize,
    pub half_sum: u64,
    /// Seed of the stream this row's instance was drawn from.
    pub seed: u64,
    pub decision: Decision,
    pub value: u64,
    pub cells: u64,
    pub candidates: u64,
    pub elapsed_ms: f64,
}

pub const CSV_HEADER: &str = "n,C,seed,decision,value,cells,candidates,elapsed_ms";

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        let decision = match self.decision {
            Decision::Solution => "yes",
            Decision::NoSolution => "no",
        };
        format!(
            "{},{},{},{},{},{},{},{:.3}",
            self.n,
            self.half_sum,
            self.seed,
            decision,
            self.value,
            self.cells,
            self.candidates,
            self.elapsed_ms
        )
    }
}

pub fn write_csv<W: Write>(records: &[BenchRecord], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(out, "{}", r.csv_row())?;
    }
    out.flush()
}

pub fn measure(items: Vec<u64>, seed: u64, config: &SolverConfig) -> Result<BenchRecord> {
    let p = PartitionInstance::from_positive(items)?;
    let half_sum = p
        .half_sum()
        .ok_or(Error::OddTotal { total: p.total() })?;
    let start = Instant::now();
    let answer = decide_and_extract_with(&p, config)?;
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let counters = answer.counters.unwrap_or_default();
    Ok(BenchRecord {
        n: p.len(),
        half_sum,
        seed,
        decision: answer.decision,
        value: answer.optimal_value.unwrap_or_default(),
        cells: counters.cells,
        candidates: counters.candidates,
        elapsed_ms,
    })
}

fn stepped(min: u64, max: u64, step: u64) -> Result<Vec<u64>> {
    if step == 0 {
        return Err(Error::BadParams("step must be positive".into()));
    }
    if min > max {
        return Err(Error::BadParams(format!("min {min} exceeds max {max}")));
    }
    Ok((min..=max).step_by(step as usize).collect())
}

/// Item-count sweep at a fixed total.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountSweep {
    pub min: usize,
    pub max: usize,
    pub step: usize,
    pub total: u64,
    pub seed: u64,
}

impl Default for CountSweep {
    fn default() -> Self {
        Self {
            min: 20,
            max: 120,
            step: 2,
            total: 10_000,
            seed: 1,
        }
    }
}

pub fn bench_n(sweep: &CountSweep, config: &SolverConfig) -> Result<Vec<BenchRecord>> {
    if sweep.min < 2 {
        return Err(Error::BadParams(format!("need min >= 2, got {}", sweep.min)));
    }
    if !sweep.total.is_multiple_of(2) {
        return Err(Error::BadParams(format!(
            "total {} must be even",
            sweep.total
        )));
    }
    let points = stepped(sweep.min as u64, sweep.max as u64, sweep.step as u64)?;
    points
        .par_iter()
        .map(|&n| {
            let seed = sweep.seed ^ n;
            let items = gen_fixed_total(n as usize, sweep.total, &mut SplitMix64::new(seed))?;
            measure(items, seed, config)
        })
        .collect()
}

/// Total-size sweep at five items.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TotalSweep {
    pub min_c1: u64,
    pub max_c1: u64,
    pub step: u64,
    pub seed: u64,
}

impl Default for TotalSweep {
    fn default() -> Self {
        Self {
            min_c1: 4_000,
            max_c1: 100_000,
            step: 1_000,
            seed: 1,
        }
    }
}

pub fn bench_c(sweep: &TotalSweep, config: &SolverConfig) -> Result<Vec<BenchRecord>> {
    let points = stepped(sweep.min_c1, sweep.max_c1, sweep.step)?;
    if let Some(bad) = points.iter().find(|&&c| c < 10 || c % 2 != 0) {
        return Err(Error::BadParams(format!(
            "total {bad} must be even and at least 10"
        )));
    }
    points
        .par_iter()
        .map(|&c1| {
            let seed = sweep.seed ^ c1;
            let items = gen_scaled(c1, &mut SplitMix64::new(seed))?;
            measure(items, seed, config)
        })
        .collect()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
