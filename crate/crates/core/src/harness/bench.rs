//! Batch runner comparing BISSA and KISSA against the exact optimum.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;

use super::{generate, GenSpec};
use crate::bissa::{bissa, BissaOutcome};
use crate::error::Result;
use crate::kissa::{kissa, KissaConfig};
use crate::model::Instance;
use crate::oracle::dp_solve;

pub const CSV_HEADER: &str =
    "id,m,n,corr,seed,exact,bissa,kissa,gap_bissa_pct,gap_kissa_pct,improvements,ms_bissa,ms_kissa";

const TIMING_COLUMNS: usize = 2;

pub struct BenchCase {
    pub id: usize,
    pub spec: GenSpec,
    pub instance: Instance<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RowResult {
    pub exact: f64,
    pub bissa: f64,
    pub kissa: f64,
    pub gap_bissa_pct: f64,
    pub gap_kissa_pct: f64,
    pub improvements: usize,
    pub ms_bissa: f64,
    pub ms_kissa: f64,
}

#[derive(Debug, Clone)]
pub struct GapRow {
    pub id: usize,
    pub spec: GenSpec,
    /// Error message when any solver failed on this case.
    pub outcome: std::result::Result<RowResult, String>,
}

#[derive(Debug, Clone, Default)]
pub struct GapReport {
    pub rows: Vec<GapRow>,
}

fn gap_pct(exact: f64, value: f64) -> f64 {
    if exact == 0.0 {
        0.0
    } else {
        100.0 * (exact - value) / exact
    }
}

fn run_case(case: &BenchCase, config: &KissaConfig<f64>) -> Result<RowResult> {
    let inst = &case.instance;
    let exact = dp_solve(inst)?.optimum_profit;

    let t0 = Instant::now();
    let outcome = bissa(inst)?;
    let ms_bissa = t0.elapsed().as_secs_f64() * 1e3;
    let bissa_profit = outcome.feasible_point().f1;

    let (kissa_profit, improvements, ms_kissa) = match &outcome {
        BissaOutcome::Optimal { .. } => (bissa_profit, 0, 0.0),
        BissaOutcome::Straddle(pair) => {
            let t1 = Instant::now();
            let run = kissa(inst, pair, config)?;
            let ms = t1.elapsed().as_secs_f64() * 1e3;
            (run.final_point.f1, run.improvements, ms)
        }
    };
    Ok(RowResult {
        exact,
        bissa: bissa_profit,
        kissa: kissa_profit,
        gap_bissa_pct: gap_pct(exact, bissa_profit),
        gap_kissa_pct: gap_pct(exact, kissa_profit),
        improvements,
        ms_bissa,
        ms_kissa,
    })
}

/// Runs every case; rows come back in input order. A failing case yields an
/// error row instead of aborting the batch.
pub fn run_cases(cases: &[BenchCase], config: &KissaConfig<f64>, parallel: bool) -> GapReport {
    let row = |case: &BenchCase| GapRow {
        id: case.id,
        spec: case.spec,
        outcome: run_case(case, config).map_err(|e| e.to_string()),
    };
    let rows = if parallel {
        cases.par_iter().map(row).collect()
    } else {
        cases.iter().map(row).collect()
    };
    GapReport { rows }
}

/// Generates one instance per spec (ids count from 0) and runs them.
pub fn run_benchmark(specs: &[GenSpec], config: &KissaConfig<f64>, parallel: bool) -> GapReport {
    let mut cases = Vec::new();
    let mut failed = Vec::new();
    for (id, spec) in specs.iter().enumerate() {
        match generate(spec) {
            Ok(instance) => cases.push(BenchCase {
                id,
                spec: *spec,
                instance,
            }),
            Err(e) => failed.push(GapRow {
                id,
                spec: *spec,
                outcome: Err(e.to_string()),
            }),
        }
    }
    let mut report = run_cases(&cases, config, parallel);
    report.rows.extend(failed);
    report.rows.sort_by_key(|r| r.id);
    report
}

impl GapReport {
    pub fn to_csv(&self) -> String {
        self.render_csv(true)
    }

    /// CSV without the wall-clock columns, which is reproducible run to run.
    pub fn to_csv_without_timing(&self) -> String {
        self.render_csv(false)
    }

    fn render_csv(&self, timing: bool) -> String {
        let columns: Vec<&str> = CSV_HEADER.split(',').collect();
        let keep = if timing {
            columns.len()
        } else {
            columns.len() - TIMING_COLUMNS
        };
        let mut out = columns[..keep].join(",");
        out.push('\n');
        for row in &self.rows {
            let s = &row.spec;
            let mut fields = vec![
                row.id.to_string(),
                s.m.to_string(),
                s.n.to_string(),
                s.correlation.to_string(),
                s.seed.to_string(),
            ];
            match &row.outcome {
                Ok(r) => fields.extend([
                    r.exact.to_string(),
                    r.bissa.to_string(),
                    r.kissa.to_string(),
                    format!("{:.6}", r.gap_bissa_pct),
                    format!("{:.6}", r.gap_kissa_pct),
                    r.improvements.to_string(),
                    format!("{:.3}", r.ms_bissa),
                    format!("{:.3}", r.ms_kissa),
                ]),
                Err(_) => fields.resize(columns.len(), String::new()),
            }
            fields.truncate(keep);
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>4} {:>5} {:>4} {:>6} {:>6} {:>12} {:>12} {:>12} {:>9} {:>9} {:>4}",
            "id", "m", "n", "corr", "seed", "exact", "bissa", "kissa", "gapB%", "gapK%", "imp"
        );
        for row in &self.rows {
            let s = &row.spec;
            let _ = write!(
                out,
                "{:>4} {:>5} {:>4} {:>6} {:>6} ",
                row.id, s.m, s.n, s.correlation, s.seed
            );
            let _ = match &row.outcome {
                Ok(r) => writeln!(
                    out,
                    "{:>12} {:>12} {:>12} {:>9.4} {:>9.4} {:>4}",
                    r.exact, r.bissa, r.kissa, r.gap_bissa_pct, r.gap_kissa_pct, r.improvements
                ),
                Err(e) => writeln!(out, "error: {e}"),
            };
        }
        let ok: Vec<&RowResult> = self.successes().collect();
        if !ok.is_empty() {
            let k = ok.len() as f64;
            let mean_b = ok.iter().map(|r| r.gap_bissa_pct).sum::<f64>() / k;
            let mean_k = ok.iter().map(|r| r.gap_kissa_pct).sum::<f64>() / k;
            let _ = writeln!(
                out,
                "{} ok, {} failed; mean gap bissa {:.4}%, kissa {:.4}%; improved {}/{}",
                ok.len(),
                self.rows.len() - ok.len(),
                mean_b,
                mean_k,
                self.improved_count(),
                ok.len()
            );
        }
        out
    }

    pub fn successes(&self) -> impl Iterator<Item = &RowResult> {
        self.rows.iter().filter_map(|r| r.outcome.as_ref().ok())
    }

    /// Number of cases where KISSA strictly improved on BISSA.
    pub fn improved_count(&self) -> usize {
        self.successes().filter(|r| r.improvements > 0).count()
    }
}
