//! Built-in regression fixtures: eight hand-picked partition instances and
//! five optional external datasets.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::dp::SolverConfig;
use crate::instance::PartitionInstance;
use crate::io::load_items_file;
use crate::reduction::{decide_and_extract_with, verify_subset, Decision};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fixture {
    pub items: &'static [u64],
    pub half_sum: u64,
    pub decision: Decision,
    pub value: u64,
}

pub const TABLE1: [Fixture; 8] = [
    Fixture {
        items: &[10, 34, 40],
        half_sum: 42,
        decision: Decision::NoSolution,
        value: 46,
    },
    Fixture {
        items: &[10, 30, 20],
        half_sum: 30,
        decision: Decision::Solution,
        value: 33,
    },
    Fixture {
        items: &[10, 33, 40, 5, 8],
        half_sum: 48,
        decision: Decision::Solution,
        value: 53,
    },
    Fixture {
        items: &[10, 33, 38, 5, 8],
        half_sum: 47,
        decision: Decision::NoSolution,
        value: 53,
    },
    Fixture {
        items: &[10, 33, 38, 5, 50, 77, 89, 114],
        half_sum: 208,
        decision: Decision::Solution,
        value: 216,
    },
    Fixture {
        items: &[10, 33, 38, 5, 52, 79, 89, 114],
        half_sum: 210,
        decision: Decision::NoSolution,
        value: 219,
    },
    Fixture {
        items: &[10, 33, 38, 5, 8, 10, 6, 7, 11, 8],
        half_sum: 68,
        decision: Decision::Solution,
        value: 78,
    },
    Fixture {
        items: &[10, 33, 40, 5, 8, 10, 6, 7, 11, 8],
        half_sum: 69,
        decision: Decision::Solution,
        value: 79,
    },
];

/// Expected `(n, C, value)` of an external dataset; all of them partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DatasetExpectation {
    pub name: &'static str,
    pub n: usize,
    pub half_sum: u64,
    pub value: u64,
}

pub const TABLE2: [DatasetExpectation; 5] = [
    DatasetExpectation { name: "p01", n: 10, half_sum: 27, value: 37 },
    DatasetExpectation { name: "p02", n: 10, half_sum: 2640, value: 2650 },
    DatasetExpectation { name: "p03", n: 9, half_sum: 1419, value: 1428 },
    DatasetExpectation { name: "p04", n: 5, half_sum: 32, value: 37 },
    DatasetExpectation { name: "p05", n: 9, half_sum: 11, value: 20 },
];

pub const DATA_ENV: &str = "LOTCUT_DATA";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

fn check_one(
    name: String,
    items: Vec<u64>,
    half_sum: u64,
    decision: Decision,
    value: u64,
    config: &SolverConfig,
) -> Check {
    let fail = |detail: String| Check {
        name: name.clone(),
        status: Status::Fail,
        detail,
    };
    let p = match PartitionInstance::from_positive(items) {
        Ok(p) => p,
        Err(e) => return fail(e.to_string()),
    };
    if p.half_sum() != Some(half_sum) {
        return fail(format!("half-sum {:?}, expected {half_sum}", p.half_sum()));
    }
    let answer = match decide_and_extract_with(&p, config) {
        Ok(a) => a,
        Err(e) => return fail(e.to_string()),
    };
    if answer.decision != decision || answer.optimal_value != Some(value) {
        return fail(format!(
            "got {:?} value {:?}, expected {decision:?} value {value}",
            answer.decision, answer.optimal_value
        ));
    }
    if let Some(subset) = &answer.subset {
        if !verify_subset(&p, subset).unwrap_or(false) {
            return fail(format!("subset {subset:?} does not sum to {half_sum}"));
        }
    }
    let detail = match &answer.subset {
        Some(s) => format!("{decision:?} value {value}, A = {s:?}"),
        None => format!("{decision:?} value {value}"),
    };
    Check {
        name,
        status: Status::Pass,
        detail,
    }
}

pub fn table1_checks(config: &SolverConfig) -> Vec<Check> {
    TABLE1
        .iter()
        .enumerate()
        .map(|(row, f)| {
            check_one(
                format!("table1 row {} (n={})", row + 1, f.items.len()),
                f.items.to_vec(),
                f.half_sum,
                f.decision,
                f.value,
                config,
            )
        })
        .collect()
}

/// Looks for `p01.txt`, `p01_w.txt`, then a bare `p01`, in either case.
pub fn find_dataset(dir: &Path, name: &str) -> Option<PathBuf> {
    let upper = name.to_uppercase();
    [name, upper.as_str()]
        .iter()
        .flat_map(|stem| [format!("{stem}.txt"), format!("{stem}_w.txt"), stem.to_string()])
        .map(|file| dir.join(file))
        .find(|p| p.is_file())
}

pub fn table2_checks(data_dir: Option<&Path>, config: &SolverConfig) -> Vec<Check> {
    TABLE2
        .iter()
        .map(|exp| {
            let name = format!("table2 {}", exp.name);
            let skipped = |detail: String| Check {
                name: name.clone(),
                status: Status::Skipped,
                detail,
            };
            let Some(dir) = data_dir.filter(|d| d.is_dir()) else {
                return skipped("no data directory".into());
            };
            let Some(path) = find_dataset(dir, exp.name) else {
                return skipped(format!("no {} file in {}", exp.name, dir.display()));
            };
            let items = match load_items_file(&path) {
                Ok(items) => items,
                Err(e) => {
                    return Check {
                        name,
                        status: Status::Fail,
                        detail: e.to_string(),
                    }
                }
            };
            if items.len() != exp.n {
                return Check {
                    name,
                    status: Status::Fail,
                    detail: format!("{} items, expected {}", items.len(), exp.n),
                };
            }
            check_one(
                name,
                items,
                exp.half_sum,
                Decision::Solution,
                exp.value,
                config,
            )
        })
        .collect()
}

pub fn run_selftest(data_dir: Option<&Path>, config: &SolverConfig) -> Vec<Check> {
    let mut checks = table1_checks(config);
    checks.extend(table2_checks(data_dir, config));
    checks
}
