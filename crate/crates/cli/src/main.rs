use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use lotcut::bench::{bench_c, bench_n, write_csv, BenchRecord, CountSweep, TotalSweep};
use lotcut::dp::{Method, SolverConfig, Window};
use lotcut::io::load_items_file;
use lotcut::oracle::{brute_force_partition, subset_sum_reachable, OracleLimits};
use lotcut::reduction::{decide_and_extract_with, reduce, threshold, Decision};
use lotcut::selftest::{run_selftest, Status, DATA_ENV};
use lotcut::PartitionInstance;

#[derive(Parser)]
#[command(name = "lotcut", version, about = "Decide partition instances through an exact lot-sizing DP")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct SolverFlags {
    /// Use the two-branch recursion (valid for reduced instances).
    #[arg(long)]
    fast: bool,
    /// Evaluate every shifted core level from 0 instead of the tight lower bound.
    #[arg(long)]
    wide_window: bool,
}

impl SolverFlags {
    fn config(self) -> SolverConfig {
        SolverConfig {
            window: if self.wide_window {
                Window::FromZero
            } else {
                Window::Tight
            },
            method: if self.fast {
                Method::TwoBranch
            } else {
                Method::Full
            },
            keep_values: false,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve the partition instance in FILE via the reduced lot-sizing DP.
    Solve {
        file: PathBuf,
        #[command(flatten)]
        flags: SolverFlags,
    },
    /// Decide FILE by subset enumeration and by the reachable-sums table.
    Oracle { file: PathBuf },
    /// Print the lot-sizing instance that FILE reduces to.
    Reduce { file: PathBuf },
    /// Sweep the item count at a fixed total and write CSV.
    BenchN {
        #[arg(long, default_value_t = 20)]
        min: usize,
        #[arg(long, default_value_t = 120)]
        max: usize,
        #[arg(long, default_value_t = 2)]
        step: usize,
        #[arg(long, default_value_t = 10_000)]
        total: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        flags: SolverFlags,
    },
    /// Sweep the item total at five items and write CSV.
    BenchC {
        #[arg(long, default_value_t = 4_000)]
        min: u64,
        #[arg(long, default_value_t = 100_000)]
        max: u64,
        #[arg(long, default_value_t = 1_000)]
        step: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        flags: SolverFlags,
    },
    /// Re-check the built-in fixtures, plus p01..p05 datasets when available.
    Selftest {
        #[arg(long, env = DATA_ENV)]
        data: Option<PathBuf>,
    },
}

type CliResult = Result<ExitCode, String>;

fn load(path: &Path) -> Result<PartitionInstance, String> {
    let items = load_items_file(path).map_err(|e| e.to_string())?;
    PartitionInstance::from_positive(items).map_err(|e| e.to_string())
}

fn decision_code(decision: Decision) -> ExitCode {
    match decision {
        Decision::Solution => ExitCode::SUCCESS,
        Decision::NoSolution => ExitCode::from(1),
    }
}

fn cmd_solve(path: &Path, config: SolverConfig) -> CliResult {
    let p = load(path)?;
    let start = Instant::now();
    let answer = decide_and_extract_with(&p, &config).map_err(|e| e.to_string())?;
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;

    let Some(limit) = threshold(&p) else {
        println!("NoSolution total={} is odd", p.total());
        println!("n={}", p.len());
        return Ok(decision_code(answer.decision));
    };
    let value = answer.optimal_value.unwrap_or_default();
    println!("{:?} value={value} threshold={limit}", answer.decision);
    println!("n={} C={}", p.len(), p.half_sum().unwrap_or_default());
    if let Some(subset) = &answer.subset {
        let sum: u64 = subset.iter().map(|&i| p.items()[i - 1]).sum();
        let listed: Vec<String> = subset.iter().map(usize::to_string).collect();
        println!("A={} (sum {sum})", listed.join(","));
    }
    if let Some(c) = answer.counters {
        println!("cells={} candidates={}", c.cells, c.candidates);
    }
    println!("elapsed_ms={elapsed_ms:.3}");
    Ok(decision_code(answer.decision))
}

fn cmd_oracle(path: &Path) -> CliResult {
    let p = load(path)?;
    let brute = brute_force_partition(&p, &OracleLimits::default()).map_err(|e| e.to_string())?;
    let reachable = p
        .half_sum()
        .is_some_and(|c| subset_sum_reachable(p.items(), c));
    println!("{:?} (enumeration)", brute.decision);
    if let Some(subset) = &brute.subset {
        let listed: Vec<String> = subset.iter().map(usize::to_string).collect();
        println!("A={}", listed.join(","));
    }
    println!("subset_sum_reachable={reachable}");
    if reachable != brute.decision.is_solution() {
        return Err("oracles disagree".into());
    }
    Ok(decision_code(brute.decision))
}

fn cmd_reduce(path: &Path) -> CliResult {
    let p = load(path)?;
    let inst = reduce(&p).map_err(|e| e.to_string())?;
    let params = inst.params();
    let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
    println!("N={}", inst.periods());
    println!("D={}", join(&params.demand));
    println!("R={}", join(&params.returns));
    println!("K_r={}", join(&params.remanufacture_setup));
    println!("dK_m={}", join(&params.manufacture_setup));
    println!("h_s={}", join(&params.serviceable_holding));
    println!("h_c={}", join(&params.core_holding));
    println!("c_r={}", join(&params.remanufacture_cost));
    println!("c_m={}", join(&params.manufacture_cost));
    println!("assumptions_ok={}", inst.check_assumptions().ok);
    Ok(ExitCode::SUCCESS)
}

fn write_records(records: &[BenchRecord], out: &Path) -> CliResult {
    let file = File::create(out).map_err(|e| format!("{}: {e}", out.display()))?;
    write_csv(records, BufWriter::new(file)).map_err(|e| format!("{}: {e}", out.display()))?;
    eprintln!("wrote {} rows to {}", records.len(), out.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_selftest(data: Option<&Path>) -> CliResult {
    let checks = run_selftest(data, &SolverConfig::default());
    let mut stdout = io::stdout().lock();
    for check in &checks {
        writeln!(stdout, "{check}").map_err(|e| e.to_string())?;
    }
    let failed = checks.iter().filter(|c| c.status == Status::Fail).count();
    let skipped = checks.iter().filter(|c| c.status == Status::Skipped).count();
    writeln!(
        stdout,
        "{} checks: {} passed, {failed} failed, {skipped} skipped",
        checks.len(),
        checks.len() - failed - skipped
    )
    .map_err(|e| e.to_string())?;
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Solve { file, flags } => cmd_solve(&file, flags.config()),
        Command::Oracle { file } => cmd_oracle(&file),
        Command::Reduce { file } => cmd_reduce(&file),
        Command::BenchN {
            min,
            max,
            step,
            total,
            seed,
            out,
            flags,
        } => {
            let sweep = CountSweep {
                min,
                max,
                step,
                total,
                seed,
            };
            let records = bench_n(&sweep, &flags.config()).map_err(|e| e.to_string())?;
            write_records(&records, &out)
        }
        Command::BenchC {
            min,
            max,
            step,
            seed,
            out,
            flags,
        } => {
            let sweep = TotalSweep {
                min_c1: min,
                max_c1: max,
                step,
                seed,
            };
            let records = bench_c(&sweep, &flags.config()).map_err(|e| e.to_string())?;
            write_records(&records, &out)
        }
        Command::Selftest { data } => cmd_selftest(data.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
