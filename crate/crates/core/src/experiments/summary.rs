//! Per-cell statistics of a trial CSV and classic-vs-balanced significance.
//!
//! A cell is one `(benchmark, n, m, k, N, pop_mult)` combination. Each summary row
//! reports mean, median and sample standard deviation of `evaluations` per algorithm,
//! and, when both algorithms are present, the one-sided Mann–Whitney p-value for
//! "balanced needs fewer evaluations than classic".

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

use super::record::{read_records, RunRecord};
use super::stats::{mann_whitney_one_sided, Alternative};

pub const SUMMARY_HEADER: &str = "benchmark,n,m,k,N,pop_mult,\
classic_runs,classic_covered,classic_mean,classic_median,classic_stddev,\
balanced_runs,balanced_covered,balanced_mean,balanced_median,balanced_stddev,\
u_statistic,p_value,method";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub benchmark: String,
    pub n: usize,
    pub m: usize,
    pub k: Option<usize>,
    #[serde(rename = "N")]
    pub population_size: usize,
    pub pop_mult: Option<f64>,
    pub classic_runs: usize,
    pub classic_covered: usize,
    pub classic_mean: Option<f64>,
    pub classic_median: Option<f64>,
    pub classic_stddev: Option<f64>,
    pub balanced_runs: usize,
    pub balanced_covered: usize,
    pub balanced_mean: Option<f64>,
    pub balanced_median: Option<f64>,
    pub balanced_stddev: Option<f64>,
    pub u_statistic: Option<f64>,
    pub p_value: Option<f64>,
    pub method: Option<&'static str>,
}

#[derive(Default)]
struct Side {
    evaluations: Vec<f64>,
    covered: usize,
}

impl Side {
    fn mean(&self) -> Option<f64> {
        if self.evaluations.is_empty() {
            return None;
        }
        Some(self.evaluations.iter().sum::<f64>() / self.evaluations.len() as f64)
    }

    fn median(&self) -> Option<f64> {
        let mut v = self.evaluations.clone();
        if v.is_empty() {
            return None;
        }
        v.sort_by(f64::total_cmp);
        let mid = v.len() / 2;
        Some(if v.len() % 2 == 1 {
            v[mid]
        } else {
            (v[mid - 1] + v[mid]) / 2.0
        })
    }

    fn stddev(&self) -> Option<f64> {
        let mean = self.mean()?;
        let n = self.evaluations.len();
        if n < 2 {
            return Some(0.0);
        }
        let ss: f64 = self.evaluations.iter().map(|x| (x - mean).powi(2)).sum();
        Some((ss / (n - 1) as f64).sqrt())
    }
}

type CellKey = (String, usize, usize, Option<usize>, usize, Option<u64>);

pub fn summarize(records: &[RunRecord]) -> Result<Vec<SummaryRow>> {
    let mut cells: BTreeMap<CellKey, (Option<f64>, Side, Side)> = BTreeMap::new();
    for r in records {
        let key = (
            r.benchmark.clone(),
            r.n,
            r.m,
            r.k,
            r.population_size,
            r.pop_mult.map(f64::to_bits),
        );
        let cell = cells
            .entry(key)
            .or_insert_with(|| (r.pop_mult, Side::default(), Side::default()));
        let side = match r.algo.as_str() {
            "classic" => &mut cell.1,
            "balanced" => &mut cell.2,
            other => {
                return Err(Error::config(format!(
                    "unknown algorithm {other:?} in records"
                )))
            }
        };
        side.evaluations.push(r.evaluations as f64);
        side.covered += r.covered as usize;
    }

    cells
        .into_iter()
        .map(
            |((benchmark, n, m, k, population_size, _), (pop_mult, classic, balanced))| {
                let test = if classic.evaluations.is_empty() || balanced.evaluations.is_empty() {
                    None
                } else {
                    Some(mann_whitney_one_sided(
                        &balanced.evaluations,
                        &classic.evaluations,
                        Alternative::Less,
                    )?)
                };
                Ok(SummaryRow {
                    benchmark,
                    n,
                    m,
                    k,
                    population_size,
                    pop_mult,
                    classic_runs: classic.evaluations.len(),
                    classic_covered: classic.covered,
                    classic_mean: classic.mean(),
                    classic_median: classic.median(),
                    classic_stddev: classic.stddev(),
                    balanced_runs: balanced.evaluations.len(),
                    balanced_covered: balanced.covered,
                    balanced_mean: balanced.mean(),
                    balanced_median: balanced.median(),
                    balanced_stddev: balanced.stddev(),
                    u_statistic: test.map(|t| t.u_statistic),
                    p_value: test.map(|t| t.p_value),
                    method: test.map(|t| t.method.as_str()),
                })
            },
        )
        .collect()
}

pub fn write_summary<W: Write>(out: W, rows: &[SummaryRow]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record(SUMMARY_HEADER.split(','))?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a trial CSV and writes its summary.
pub fn summarize_file(input: &Path, output: &Path) -> Result<Vec<SummaryRow>> {
    let rows = summarize(&read_records(input)?)?;
    let file = File::create(output).map_err(|source| Error::Io {
        path: output.to_path_buf(),
        source,
    })?;
    write_summary(BufWriter::new(file), &rows).map_err(|e| Error::Io {
        path: output.to_path_buf(),
        source: e.into(),
    })?;
    Ok(rows)
}
