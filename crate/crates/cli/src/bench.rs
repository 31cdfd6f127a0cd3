//! Fused vs unfused MDA on random instances.
//!
//! CSV columns:
//!
//! | column | meaning |
//! |---|---|
//! | `kind` | `run` for a single instance, `mean` for the per-`n` average |
//! | `n`, `repetition`, `seed` | user count, repetition index and instance seed (empty on `mean` rows) |
//! | `fused_summed_size`, `unfused_summed_size` | total SFM ground size over the solve |
//! | `fused_calls`, `unfused_calls` | number of SFM calls |
//! | `fused_evals`, `unfused_evals` | objective evaluations |
//! | `r_aco` | minimum sum-rate |
//!
//! All numbers are exact; means are written as `p/q`.

use std::io::Write;

use serde::Serialize;

use omniscience::{Error, LinearOrdering, Rational, SfmStats, Solver, Strategy, Variant};

use crate::error::{CliError, Result};
use crate::gen::{generate, splitmix64, GenConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BenchConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub packets: usize,
    pub reps: usize,
    pub seed: u64,
    pub strategy: Strategy,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            n_min: 5,
            n_max: 12,
            packets: 20,
            reps: 20,
            seed: 0,
            strategy: Strategy::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub n: usize,
    pub repetition: usize,
    pub seed: u64,
    pub fused: SfmStats,
    pub unfused: SfmStats,
    pub r_aco: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchSummary {
    pub n: usize,
    pub runs: usize,
    pub fused_summed_size: Rational,
    pub unfused_summed_size: Rational,
    pub fused_calls: Rational,
    pub unfused_calls: Rational,
    pub fused_evals: Rational,
    pub unfused_evals: Rational,
    pub r_aco: Rational,
}

#[derive(Clone, Debug, Default)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub summaries: Vec<BenchSummary>,
    pub warnings: Vec<String>,
}

#[derive(Serialize)]
struct Record {
    kind: &'static str,
    n: usize,
    repetition: Option<usize>,
    seed: Option<u64>,
    fused_summed_size: Rational,
    unfused_summed_size: Rational,
    fused_calls: Rational,
    unfused_calls: Rational,
    fused_evals: Rational,
    unfused_evals: Rational,
    r_aco: Rational,
}

/// Seed of repetition `rep` at size `n`.
pub fn run_seed(base: u64, n: usize, rep: usize) -> u64 {
    splitmix64(splitmix64(base ^ ((n as u64) << 32)) ^ rep as u64)
}

fn run_one(cfg: &BenchConfig, n: usize, rep: usize) -> Result<Option<BenchRow>> {
    let seed = run_seed(cfg.seed, n, rep);
    let instance = generate(GenConfig {
        users: n,
        packets: cfg.packets,
        seed,
    })?;
    let engine = omniscience::sfm::BruteForce::new(cfg.strategy);
    let ordering = LinearOrdering::identity(n);
    let solve = |variant| match Solver::new(variant, &engine).mda(&instance, &ordering) {
        Ok(sol) => Ok(Some(sol)),
        Err(Error::TooLarge { .. }) => Ok(None),
        Err(e) => Err(CliError::from(e)),
    };
    let (Some(fused), Some(unfused)) = (solve(Variant::Fused)?, solve(Variant::Unfused)?) else {
        return Ok(None);
    };
    if fused.min_sum_rate != unfused.min_sum_rate || fused.rates != unfused.rates {
        return Err(CliError::Internal(format!(
            "fused and unfused solves disagree on n = {n}, seed = {seed}"
        )));
    }
    if fused.stats.summed_ground_size > unfused.stats.summed_ground_size {
        return Err(CliError::Internal(format!(
            "fused SFM size exceeds unfused on n = {n}, seed = {seed}"
        )));
    }
    Ok(Some(BenchRow {
        n,
        repetition: rep,
        seed,
        fused: fused.stats,
        unfused: unfused.stats,
        r_aco: fused.min_sum_rate,
    }))
}

pub fn run(cfg: &BenchConfig) -> Result<BenchReport> {
    if cfg.n_min < 2 || cfg.n_min > cfg.n_max {
        return Err(CliError::Input(format!(
            "bad user range {}..={}",
            cfg.n_min, cfg.n_max
        )));
    }
    if cfg.packets < 1 || cfg.reps < 1 {
        return Err(CliError::Input("packets and reps must be positive".into()));
    }
    let jobs: Vec<(usize, usize)> = (cfg.n_min..=cfg.n_max)
        .flat_map(|n| (0..cfg.reps).map(move |r| (n, r)))
        .collect();
    // outputs come back in job order whatever the strategy
    let results = cfg.strategy.map(&jobs, |&(n, rep)| run_one(cfg, n, rep));

    let mut report = BenchReport::default();
    for (&(n, rep), result) in jobs.iter().zip(results) {
        match result? {
            Some(row) => report.rows.push(row),
            None => report.warnings.push(format!(
                "skipped n = {n}, repetition {rep}: SFM ground exceeds the enumeration limit"
            )),
        }
    }
    for n in cfg.n_min..=cfg.n_max {
        let rows: Vec<&BenchRow> = report.rows.iter().filter(|r| r.n == n).collect();
        if rows.is_empty() {
            continue;
        }
        let runs = Rational::from(rows.len());
        let mean =
            |f: &dyn Fn(&BenchRow) -> Rational| rows.iter().map(|r| f(r)).sum::<Rational>() / runs;
        let count = |v: u64| Rational::from_integer(v as i128);
        report.summaries.push(BenchSummary {
            n,
            runs: rows.len(),
            fused_summed_size: mean(&|r| count(r.fused.summed_ground_size)),
            unfused_summed_size: mean(&|r| count(r.unfused.summed_ground_size)),
            fused_calls: mean(&|r| count(r.fused.calls)),
            unfused_calls: mean(&|r| count(r.unfused.calls)),
            fused_evals: mean(&|r| count(r.fused.evaluations)),
            unfused_evals: mean(&|r| count(r.unfused.evaluations)),
            r_aco: mean(&|r| r.r_aco),
        });
    }
    Ok(report)
}

pub fn write_csv<W: Write>(report: &BenchReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let count = |v: u64| Rational::from_integer(v as i128);
    for r in &report.rows {
        w.serialize(Record {
            kind: "run",
            n: r.n,
            repetition: Some(r.repetition),
            seed: Some(r.seed),
            fused_summed_size: count(r.fused.summed_ground_size),
            unfused_summed_size: count(r.unfused.summed_ground_size),
            fused_calls: count(r.fused.calls),
            unfused_calls: count(r.unfused.calls),
            fused_evals: count(r.fused.evaluations),
            unfused_evals: count(r.unfused.evaluations),
            r_aco: r.r_aco,
        })?;
    }
    for s in &report.summaries {
        w.serialize(Record {
            kind: "mean",
            n: s.n,
            repetition: None,
            seed: None,
            fused_summed_size: s.fused_summed_size,
            unfused_summed_size: s.unfused_summed_size,
            fused_calls: s.fused_calls,
            unfused_calls: s.unfused_calls,
            fused_evals: s.fused_evals,
            unfused_evals: s.unfused_evals,
            r_aco: s.r_aco,
        })?;
    }
    w.flush()?;
    Ok(())
}
