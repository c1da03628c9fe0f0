//! Point files: CSV (`x,y` per line, optional header) or JSON
//! (`{"points": [[x, y], ...], "delta": [...]}`).

use std::path::{Path, PathBuf};

use pivotlab::{Multiplicities, PointSet, Scalar};
use serde::Deserialize;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointFile {
    pub path: PathBuf,
    pub format: FileFormat,
}

impl PointFile {
    /// Format from the extension; anything but `.json` is read as CSV.
    pub fn new(path: impl Into<PathBuf>) -> Self {
        let path = path.into();
        let format = match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => FileFormat::Json,
            _ => FileFormat::Csv,
        };
        PointFile { path, format }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Loaded<T> {
    pub points: PointSet<T>,
    pub delta: Option<Multiplicities>,
}

pub fn load_points<T: Scalar>(file: &PointFile) -> Result<Loaded<T>> {
    let text = std::fs::read_to_string(&file.path).map_err(|e| CliError::io(file.path.display().to_string(), e))?;
    match file.format {
        FileFormat::Csv => parse_csv(&text),
        FileFormat::Json => parse_json(&text),
    }
}

pub fn load_path<T: Scalar>(path: &Path) -> Result<Loaded<T>> {
    load_points(&PointFile::new(path))
}

fn number<T: Scalar>(field: &str, line: u64) -> Result<T> {
    T::parse_literal(field).ok_or_else(|| CliError::Format {
        line,
        msg: format!("not a finite number: {field:?}"),
    })
}

pub fn parse_csv<T: Scalar>(text: &str) -> Result<Loaded<T>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut pairs = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Format {
            line: e.position().map_or(0, |p| p.line()),
            msg: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if i == 0 && record.len() == 2 && record[0].eq_ignore_ascii_case("x") && record[1].eq_ignore_ascii_case("y") {
            continue;
        }
        if record.len() != 2 {
            return Err(CliError::Format {
                line,
                msg: format!("expected 2 fields, found {}", record.len()),
            });
        }
        pairs.push((number(&record[0], line)?, number(&record[1], line)?));
    }
    Ok(Loaded {
        points: PointSet::from_pairs(pairs)?,
        delta: None,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonPoints {
    points: Vec<[serde_json::Number; 2]>,
    #[serde(default)]
    delta: Option<Vec<u64>>,
}

pub fn parse_json<T: Scalar>(text: &str) -> Result<Loaded<T>> {
    let raw: JsonPoints = serde_json::from_str(text).map_err(|e| CliError::Format {
        line: e.line() as u64,
        msg: e.to_string(),
    })?;
    let pairs = raw
        .points
        .iter()
        .map(|[x, y]| Ok((number(&x.to_string(), 0)?, number(&y.to_string(), 0)?)))
        .collect::<Result<Vec<_>>>()?;
    let points = PointSet::from_pairs(pairs)?;
    let delta = raw.delta.map(Multiplicities::new).transpose()?;
    if let Some(d) = &delta {
        if d.len() != points.len() {
            return Err(
                pivotlab::Error::Shape(format!("{} multiplicities for {} points", d.len(), points.len())).into(),
            );
        }
    }
    Ok(Loaded { points, delta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use pivotlab::{Error, Point, Rational};

    #[test]
    fn csv_examples() {
        let l: Loaded<f64> = parse_csv("0,0\n1,1").unwrap();
        assert_eq!(l.points.len(), 2);
        assert_eq!(l.delta, None);

        let l: Loaded<f64> = parse_csv("x,y\n0,0\n1, 1\n\n2,0\n").unwrap();
        assert_eq!(l.points.points()[2], Point::new(2.0, 0.0));

        match parse_csv::<f64>("abc,1\n2,3") {
            Err(CliError::Format { line, .. }) => assert_eq!(line, 1),
            other => panic!("{other:?}"),
        }
        match parse_csv::<f64>("x,y\n0,0\n1,2,3") {
            Err(CliError::Format { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_csv::<f64>("0,0"), Err(CliError::Core(Error::Shape(_)))));
        assert!(matches!(
            parse_csv::<f64>("1,0\n1,2"),
            Err(CliError::Core(Error::DegenerateX))
        ));
        assert!(matches!(
            parse_csv::<f64>("1,inf\n2,2"),
            Err(CliError::Format { line: 1, .. })
        ));
    }

    #[test]
    fn csv_is_exact_in_rational_mode() {
        let l: Loaded<Rational> = parse_csv("0.1,0\n0.2,1").unwrap();
        assert_eq!(l.points.points()[0].x, pivotlab::parse_rational("1/10").unwrap());
    }

    #[test]
    fn json_examples() {
        let l: Loaded<f64> = parse_json(r#"{"points":[[0,0],[1,1],[2,0]],"delta":[2,1,1]}"#).unwrap();
        assert_eq!(l.points.len(), 3);
        assert_eq!(l.delta.unwrap().as_slice(), &[2, 1, 1]);

        let l: Loaded<f64> = parse_json(r#"{"points":[[0,0.5],[1,1]]}"#).unwrap();
        assert_eq!(l.delta, None);

        assert!(matches!(
            parse_json::<f64>("{\"points\":\n[[0,0],[1]]}"),
            Err(CliError::Format { line: 2, .. })
        ));
        assert!(matches!(
            parse_json::<f64>(r#"{"points":[[0,0],[1,1]],"delta":[1]}"#),
            Err(CliError::Core(Error::Shape(_)))
        ));
        assert!(parse_json::<f64>(r#"{"points":[[0,0],[1,1]],"delta":[0,1]}"#).is_err());
    }

    #[test]
    fn format_from_extension() {
        assert_eq!(PointFile::new("a/b.JSON").format, FileFormat::Json);
        assert_eq!(PointFile::new("pts.csv").format, FileFormat::Csv);
        assert_eq!(PointFile::new("pts").format, FileFormat::Csv);
    }
}
