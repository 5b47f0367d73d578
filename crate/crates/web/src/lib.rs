//! wasm-bindgen bindings behind `www/index.html`.
//!
//! The exported functions take and return JSON strings; the `*_json`
//! functions hold the logic so they can be tested natively.

use lotcut::bench::gen_fixed_total;
use lotcut::dp::{solve, stage_value, Continuation, Counters, Method, SolverConfig};
use lotcut::io::parse_items;
use lotcut::reduction::{decide_and_extract_with, reduce, threshold, REDUCED_COSTS};
use lotcut::rng::SplitMix64;
use lotcut::{
    tail_closed_form, Decision, LotSizingInstance, LotSizingParams, PartitionInstance,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

fn config(fast: bool) -> SolverConfig {
    SolverConfig {
        method: if fast { Method::TwoBranch } else { Method::Full },
        ..SolverConfig::default()
    }
}

fn partition(text: &str) -> Result<PartitionInstance, String> {
    let items = parse_items(text, None).map_err(|e| e.to_string())?;
    PartitionInstance::from_positive(items).map_err(|e| e.to_string())
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct SolveView {
    items: Vec<u64>,
    half_sum: Option<u64>,
    threshold: Option<u64>,
    decision: Decision,
    value: Option<u64>,
    subset: Option<Vec<usize>>,
    remanufacture: Vec<u64>,
    manufacture: Vec<u64>,
    cores: Vec<u64>,
    counters: Option<Counters>,
}

pub fn solve_json(text: &str, fast: bool) -> Result<String, String> {
    let p = partition(text)?;
    let cfg = config(fast);
    let answer = decide_and_extract_with(&p, &cfg).map_err(|e| e.to_string())?;
    let plan = match reduce(&p) {
        Ok(inst) => Some(solve(&inst, &cfg).map_err(|e| e.to_string())?),
        Err(_) => None,
    };
    to_json(&SolveView {
        items: p.items().to_vec(),
        half_sum: p.half_sum(),
        threshold: threshold(&p),
        decision: answer.decision,
        value: answer.optimal_value,
        subset: answer.subset,
        remanufacture: plan.as_ref().map(|s| s.plan.remanufacture.clone()).unwrap_or_default(),
        manufacture: plan.as_ref().map(|s| s.plan.manufacture.clone()).unwrap_or_default(),
        cores: plan.map(|s| s.cores).unwrap_or_default(),
        counters: answer.counters,
    })
}

#[derive(Serialize)]
struct PeriodCurve {
    period: usize,
    /// Core level of `values[0]`.
    first_state: u64,
    values: Vec<u64>,
    policy: Vec<u64>,
    /// Core level on the optimal path.
    visited: u64,
}

/// Every period's cost-to-go over its state window.
pub fn curves_json(text: &str) -> Result<String, String> {
    let p = partition(text)?;
    let inst = reduce(&p).map_err(|e| e.to_string())?;
    let cfg = SolverConfig {
        keep_values: true,
        ..SolverConfig::default()
    };
    let sol = solve(&inst, &cfg).map_err(|e| e.to_string())?;
    let values = sol.table.values.clone().unwrap_or_default();
    let curves: Vec<PeriodCurve> = values
        .into_iter()
        .zip(sol.table.policy.iter())
        .enumerate()
        .map(|(i, (values, policy))| PeriodCurve {
            period: i + 1,
            first_state: sol.bounds.lower(i) + inst.returns()[i],
            values,
            policy: policy.clone(),
            visited: sol.cores[i],
        })
        .collect();
    to_json(&curves)
}

#[derive(Serialize)]
struct TailPoint {
    cores: u64,
    closed_form: u64,
    enumerated: u64,
}

/// Last-period cost over `J ∈ 0..=2D`, by formula and by enumeration.
pub fn tail_json(demand: u64) -> Result<String, String> {
    if demand == 0 {
        return Err("demand must be positive".into());
    }
    let inst = LotSizingInstance::new(LotSizingParams::constant(
        vec![demand],
        vec![0],
        REDUCED_COSTS,
    ))
    .map_err(|e| e.to_string())?;
    let mut counters = Counters::default();
    let points = (0..=2 * demand)
        .map(|j| {
            let stage = stage_value(&inst, 0, j, Continuation::Terminal, &mut counters)
                .map_err(|e| e.to_string())?;
            Ok(TailPoint {
                cores: j,
                closed_form: tail_closed_form(demand, j),
                enumerated: stage.cost,
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    to_json(&points)
}

/// Random items summing to `total`, one per line.
pub fn random_items(n: usize, total: u64, seed: u64) -> Result<String, String> {
    let items = gen_fixed_total(n, total, &mut SplitMix64::new(seed)).map_err(|e| e.to_string())?;
    Ok(items.iter().map(u64::to_string).collect::<Vec<_>>().join(" "))
}

#[wasm_bindgen]
pub fn solve_items(text: &str, fast: bool) -> Result<String, JsError> {
    solve_json(text, fast).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn value_curves(text: &str) -> Result<String, JsError> {
    curves_json(text).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn tail_curve(demand: u32) -> Result<String, JsError> {
    tail_json(u64::from(demand)).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn generate_items(n: u32, total: u32, seed: u32) -> Result<String, JsError> {
    random_items(n as usize, u64::from(total), u64::from(seed)).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn solve_view() {
        let v: Value = serde_json::from_str(&solve_json("10 30 20", false).unwrap()).unwrap();
        assert_eq!(v["decision"], "Solution");
        assert_eq!(v["value"], 33);
        assert_eq!(v["threshold"], 33);
        assert_eq!(v["cores"].as_array().unwrap().len(), 4);

        let odd: Value = serde_json::from_str(&solve_json("1 2", true).unwrap()).unwrap();
        assert_eq!(odd["decision"], "NoSolution");
        assert!(odd["value"].is_null());
        assert!(solve_json("", false).is_err());
    }

    #[test]
    fn curves_cover_each_period() {
        let v: Value = serde_json::from_str(&curves_json("10 30 20").unwrap()).unwrap();
        let periods = v.as_array().unwrap();
        assert_eq!(periods.len(), 3);
        assert_eq!(periods[1]["first_state"], 20);
        assert_eq!(periods[1]["values"].as_array().unwrap().len(), 11);
        assert_eq!(periods[0]["values"][0], 33);
    }

    #[test]
    fn tail_points_agree() {
        let v: Value = serde_json::from_str(&tail_json(6).unwrap()).unwrap();
        let points = v.as_array().unwrap();
        assert_eq!(points.len(), 13);
        assert!(points.iter().all(|p| p["closed_form"] == p["enumerated"]));
        assert!(tail_json(0).is_err());
    }

    #[test]
    fn generated_items_parse() {
        let text = random_items(6, 60, 3).unwrap();
        let items = parse_items(&text, None).unwrap();
        assert_eq!(items.iter().sum::<u64>(), 60);
        assert!(random_items(1, 60, 3).is_err());
    }
}
