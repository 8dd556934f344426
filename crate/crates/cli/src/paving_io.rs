//! Paving and statistics files.
//!
//! Floats are written with Rust's shortest round-trip formatting, so reading
//! a file back gives the exact values that were written.

use std::io::{Read, Write};

use psiset_core::psi::{StatsRow, StatsSeries};
use psiset_core::{Interval, IntervalBox, Paving, Status};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const STATS_HEADER: [&str; 7] = [
    "iteration",
    "candidates",
    "accepted",
    "candidate_measure",
    "accepted_measure",
    "ratio_count",
    "ratio_measure",
];

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

pub fn paving_header(dim: usize) -> Vec<String> {
    let mut h = vec!["status".to_string(), "probability".to_string()];
    for i in 1..=dim {
        h.push(format!("lo_{i}"));
        h.push(format!("hi_{i}"));
    }
    h
}

/// Rows in canonical box order.
pub fn write_paving_csv<W: Write>(paving: &Paving, dim: usize, out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(paving_header(dim)).map_err(invalid)?;
    for (status, b, p) in paving.entries() {
        let mut row = vec![status.as_str().to_string(), p.to_string()];
        for c in b.components() {
            row.push(c.lo().to_string());
            row.push(c.hi().to_string());
        }
        w.write_record(&row).map_err(invalid)?;
    }
    w.flush().map_err(|e| invalid(format!("write failed: {e}")))
}

/// Parses a paving CSV. Iteration statistics are not part of the file and
/// come back empty.
pub fn read_paving_csv<R: Read>(input: R) -> Result<Paving, CliError> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers().map_err(invalid)?.clone();
    if header.len() < 4 || header.len() % 2 != 0 {
        return Err(invalid(format!("paving header has {} columns", header.len())));
    }
    let dim = (header.len() - 2) / 2;
    let expected = paving_header(dim);
    if header.iter().ne(expected.iter().map(String::as_str)) {
        return Err(invalid(format!("paving header must be `{}`", expected.join(","))));
    }
    let mut paving = Paving::default();
    for (line, record) in r.records().enumerate() {
        let record = record.map_err(invalid)?;
        let row = line + 2;
        let num = |i: usize| -> Result<f64, CliError> {
            record[i]
                .parse::<f64>()
                .map_err(|_| invalid(format!("row {row}: `{}` is not a number", &record[i])))
        };
        let status = Status::parse(&record[0])
            .ok_or_else(|| invalid(format!("row {row}: unknown status `{}`", &record[0])))?;
        let p = num(1)?;
        let components = (0..dim)
            .map(|k| {
                let (lo, hi) = (num(2 + 2 * k)?, num(3 + 2 * k)?);
                Interval::new(lo, hi).map_err(|e| invalid(format!("row {row}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let b = IntervalBox::new(components).map_err(invalid)?;
        match status {
            Status::Accepted => paving.accepted.push(b),
            Status::Rejected => paving.rejected.push(b),
            Status::Boundary => paving.boundary.push((b, p)),
        }
    }
    paving.sort_canonical();
    Ok(paving)
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct PavingJson {
    pub dim: usize,
    pub accepted_measure: f64,
    pub rejected_measure: f64,
    pub boundary_measure: f64,
    pub boxes: Vec<BoxJson>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct BoxJson {
    pub status: String,
    pub probability: f64,
    pub bounds: Vec<[f64; 2]>,
}

pub fn paving_json(paving: &Paving, dim: usize) -> PavingJson {
    PavingJson {
        dim,
        accepted_measure: paving.accepted_measure(),
        rejected_measure: paving.rejected_measure(),
        boundary_measure: paving.boundary_measure(),
        boxes: paving
            .entries()
            .into_iter()
            .map(|(s, b, p)| BoxJson {
                status: s.as_str().to_string(),
                probability: p,
                bounds: b.components().iter().map(|c| [c.lo(), c.hi()]).collect(),
            })
            .collect(),
    }
}

pub fn write_stats_csv<W: Write>(series: &StatsSeries, out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(STATS_HEADER).map_err(invalid)?;
    for r in &series.rows {
        w.write_record([
            r.iteration.to_string(),
            r.candidates.to_string(),
            r.accepted.to_string(),
            r.candidate_measure.to_string(),
            r.accepted_measure.to_string(),
            r.ratio_count.to_string(),
            r.ratio_measure.to_string(),
        ])
        .map_err(invalid)?;
    }
    w.flush().map_err(|e| invalid(format!("write failed: {e}")))
}

pub fn read_stats_csv<R: Read>(input: R) -> Result<Vec<StatsRow>, CliError> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers().map_err(invalid)?.clone();
    if header.iter().ne(STATS_HEADER) {
        return Err(invalid(format!("stats header must be `{}`", STATS_HEADER.join(","))));
    }
    r.records()
        .enumerate()
        .map(|(line, record)| {
            let record = record.map_err(invalid)?;
            let row = line + 2;
            let bad = |i: usize| invalid(format!("row {row}: bad value `{}` in `{}`", &record[i], STATS_HEADER[i]));
            let f = |i: usize| record[i].parse::<f64>().map_err(|_| bad(i));
            Ok(StatsRow {
                iteration: record[0].parse().map_err(|_| bad(0))?,
                candidates: record[1].parse().map_err(|_| bad(1))?,
                accepted: record[2].parse().map_err(|_| bad(2))?,
                candidate_measure: f(3)?,
                accepted_measure: f(4)?,
                ratio_count: f(5)?,
                ratio_measure: f(6)?,
            })
        })
        .collect()
}
