//! Sweep results as CSV: `k1..kn,label,x,y,class,violation`.
//!
//! Coordinates are stored exactly as they are written, so a file parses back
//! into an identical [`SweepResult`].

use std::io::{Read, Write};

use pivotlab::region::RegionReport;
use pivotlab::{PivotResult, Scalar};

use crate::error::{CliError, Result};
use crate::format::{format_num, parse_num, quantize};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub k: Vec<u64>,
    pub label: usize,
    /// `None` when the pivot is at infinity.
    pub pivot: Option<(f64, f64)>,
    pub class: String,
    pub violation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn from_report<T: Scalar>(report: &RegionReport<T>) -> Self {
        let rows = report
            .records
            .iter()
            .map(|r| SweepRow {
                k: r.k.clone(),
                label: r.label.0,
                pivot: match &r.pivot {
                    PivotResult::Finite(p) => Some((quantize(p.x.to_f64_lossy()), quantize(p.y.to_f64_lossy()))),
                    PivotResult::AtInfinity => None,
                },
                class: r.class.tag(),
                violation: r.violation.map(|v| v.to_string()),
            })
            .collect();
        SweepResult { rows }
    }

    pub fn violations(&self) -> usize {
        self.rows.iter().filter(|r| r.violation.is_some()).count()
    }

    pub fn finite(&self) -> impl Iterator<Item = (&SweepRow, (f64, f64))> {
        self.rows.iter().filter_map(|r| r.pivot.map(|p| (r, p)))
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let n = self.rows.first().map_or(0, |r| r.k.len());
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        let mut header: Vec<String> = (1..=n).map(|i| format!("k{i}")).collect();
        header.extend(["label", "x", "y", "class", "violation"].map(String::from));
        w.write_record(&header).map_err(csv_err)?;
        for r in &self.rows {
            let mut rec: Vec<String> = r.k.iter().map(u64::to_string).collect();
            rec.push(r.label.to_string());
            match r.pivot {
                Some((x, y)) => rec.extend([format_num(x), format_num(y)]),
                None => rec.extend(["inf".to_string(), "inf".to_string()]),
            }
            rec.push(r.class.clone());
            rec.push(r.violation.clone().unwrap_or_default());
            w.write_record(&rec).map_err(csv_err)?;
        }
        w.flush().map_err(|e| CliError::io("<csv>", e))?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory cannot fail");
        String::from_utf8(buf).expect("CSV output is ASCII")
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
        let header = reader.headers().map_err(csv_err)?.clone();
        let n = header.iter().take_while(|h| h.starts_with('k')).count();
        let expected = n + 5;
        if header.len() != expected || &header[n] != "label" {
            return Err(CliError::Format {
                line: 1,
                msg: "unrecognised sweep header".into(),
            });
        }
        let mut rows = Vec::new();
        for rec in reader.records() {
            let rec = rec.map_err(csv_err)?;
            let line = rec.position().map_or(0, |p| p.line());
            let bad = |what: &str| CliError::Format {
                line,
                msg: format!("bad {what}"),
            };
            if rec.len() != expected {
                return Err(bad("field count"));
            }
            let k = (0..n)
                .map(|i| rec[i].parse().map_err(|_| bad("k")))
                .collect::<Result<Vec<u64>>>()?;
            let label = rec[n].parse().map_err(|_| bad("label"))?;
            let pivot = match (&rec[n + 1], &rec[n + 2]) {
                ("inf", "inf") => None,
                (x, y) => Some((
                    parse_num(x).ok_or_else(|| bad("x"))?,
                    parse_num(y).ok_or_else(|| bad("y"))?,
                )),
            };
            let violation = Some(rec[n + 4].to_string()).filter(|v| !v.is_empty());
            rows.push(SweepRow {
                k,
                label,
                pivot,
                class: rec[n + 3].to_string(),
                violation,
            });
        }
        Ok(SweepResult { rows })
    }
}

fn csv_err(e: csv::Error) -> CliError {
    let line = e.position().map_or(0, |p| p.line());
    CliError::Format {
        line,
        msg: e.to_string(),
    }
}
