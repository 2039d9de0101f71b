use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Header of the trial CSV, in column order.
pub const CSV_HEADER: &str = "benchmark,n,m,k,algo,N,pop_mult,seed,iterations,evaluations,covered";

/// One trial: configuration, seed, and the cost of covering the Pareto front.
///
/// When `covered` is true, `evaluations == N * (iterations + 1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub benchmark: String,
    pub n: usize,
    pub m: usize,
    pub k: Option<usize>,
    pub algo: String,
    #[serde(rename = "N")]
    pub population_size: usize,
    pub pop_mult: Option<f64>,
    pub seed: u64,
    pub iterations: u64,
    pub evaluations: u64,
    pub covered: bool,
}

pub fn write_records<W: Write>(out: W, records: &[RunRecord]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if records.is_empty() {
        w.write_record(CSV_HEADER.split(','))?;
    }
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub(crate) fn parse_records<R: Read>(input: R, path: &Path) -> Result<Vec<RunRecord>> {
    let mut reader = csv::Reader::from_reader(input);
    let malformed = |line: u64, message: String| Error::MalformedRow {
        path: path.to_path_buf(),
        line,
        message,
    };
    let header = reader
        .headers()
        .map_err(|e| malformed(1, e.to_string()))?
        .iter()
        .collect::<Vec<_>>()
        .join(",");
    if header != CSV_HEADER {
        return Err(malformed(
            1,
            format!("expected header {CSV_HEADER:?}, found {header:?}"),
        ));
    }
    let mut records = Vec::new();
    for row in reader.deserialize::<RunRecord>() {
        let record = row.map_err(|e| {
            let line = e.position().map(|p| p.line()).unwrap_or(0);
            malformed(line, e.to_string())
        })?;
        records.push(record);
    }
    Ok(records)
}

pub fn read_records(path: &Path) -> Result<Vec<RunRecord>> {
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_records(std::io::BufReader::new(file), path)
}
