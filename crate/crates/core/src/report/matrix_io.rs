use std::path::Path;

use chrono::NaiveDate;

use crate::error::{Error, Result};
use crate::evolution::{build_matrix, MetricsMatrix};
use crate::metrics::{Metric, MetricsVector};

/// Output encodings of the matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MatrixFormat {
    Csv,
    Json,
}

impl std::str::FromStr for MatrixFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(MatrixFormat::Csv),
            "json" => Ok(MatrixFormat::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

pub fn csv_header() -> Vec<&'static str> {
    let mut h = vec!["variant", "date"];
    h.extend(Metric::ALL.iter().map(|m| m.abbrev()));
    h
}

/// Encodes the matrix. Output depends only on the matrix contents.
pub fn emit_matrix(matrix: &MetricsMatrix, format: MatrixFormat) -> Vec<u8> {
    match format {
        MatrixFormat::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(Vec::new());
            w.write_record(csv_header()).expect("in-memory write");
            for row in matrix.rows() {
                let mut rec = vec![
                    row.release_name.clone(),
                    row.release_date.format("%Y-%m-%d").to_string(),
                ];
                rec.extend(row.values().iter().map(u64::to_string));
                w.write_record(&rec).expect("in-memory write");
            }
            w.into_inner().expect("in-memory flush")
        }
        MatrixFormat::Json => {
            let mut out = serde_json::to_vec_pretty(matrix).expect("matrix serializes");
            out.push(b'\n');
            out
        }
    }
}

/// Reads a matrix in the CSV layout written by [`emit_matrix`].
pub fn parse_matrix_csv(text: &str, origin: &Path) -> Result<MetricsMatrix> {
    let err = |message: String| Error::Matrix {
        path: origin.to_path_buf(),
        message,
    };
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let header = r.headers().map_err(|e| err(e.to_string()))?.clone();
    let expected = csv_header();
    if header.iter().map(str::trim).ne(expected.iter().copied()) {
        return Err(err(format!("header must be `{}`", expected.join(","))));
    }
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| err(format!("line {line}: {e}")))?;
        let name = rec[0].trim().to_string();
        if name.is_empty() {
            return Err(err(format!("line {line}: empty variant name")));
        }
        let date = NaiveDate::parse_from_str(rec[1].trim(), "%Y-%m-%d")
            .map_err(|e| err(format!("line {line}: date `{}`: {e}", &rec[1])))?;
        let mut values = [0u64; 13];
        for (k, m) in Metric::ALL.iter().enumerate() {
            let cell = rec[k + 2].trim();
            values[k] = cell
                .parse()
                .map_err(|_| err(format!("line {line}: {m} value `{cell}` is not a non-negative integer")))?;
        }
        rows.push(MetricsVector::new(name, date, values));
    }
    build_matrix(rows).map_err(|_| err("no data rows".into()))
}

pub fn read_matrix_csv(path: &Path) -> Result<MetricsMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Matrix {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    parse_matrix_csv(&text, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix() -> MetricsMatrix {
        let d = |y, m, dd| NaiveDate::from_ymd_opt(y, m, dd).unwrap();
        build_matrix(vec![
            MetricsVector::new("r1", d(2014, 8, 3), [386, 4, 6, 0, 16, 29, 0, 55, 1, 26, 5, 125, 99]),
            MetricsVector::new("r2", d(2016, 5, 4), [374, 4, 6, 0, 16, 29, 0, 55, 1, 26, 5, 125, 99]),
            MetricsVector::new("r3", d(2018, 2, 1), [448, 4, 8, 0, 16, 33, 0, 61, 1, 30, 7, 161, 139]),
        ])
        .unwrap()
    }

    #[test]
    fn csv_layout() {
        let out = String::from_utf8(emit_matrix(&matrix(), MatrixFormat::Csv)).unwrap();
        let lines: Vec<_> = out.split_terminator('\n').collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(
            lines[0],
            "variant,date,LOC,NOP,NOC,NOI,NOA,NOM,NOL,NOID,NOPM,NOSM,NOIR,NOAA,NOMI"
        );
        assert_eq!(lines[3], "r3,2018-02-01,448,4,8,0,16,33,0,61,1,30,7,161,139");
        assert!(!out.contains('\r'));
        assert!(out.ends_with('\n'));
    }

    #[test]
    fn single_row_is_two_lines() {
        let m = build_matrix(vec![matrix().rows()[0].clone()]).unwrap();
        let out = String::from_utf8(emit_matrix(&m, MatrixFormat::Csv)).unwrap();
        assert_eq!(out.lines().count(), 2);
    }

    #[test]
    fn csv_round_trip_and_determinism() {
        let m = matrix();
        let a = emit_matrix(&m, MatrixFormat::Csv);
        assert_eq!(a, emit_matrix(&m, MatrixFormat::Csv));
        let back = parse_matrix_csv(std::str::from_utf8(&a).unwrap(), Path::new("m.csv")).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn json_mirrors_csv_fields() {
        let v: serde_json::Value = serde_json::from_slice(&emit_matrix(&matrix(), MatrixFormat::Json)).unwrap();
        let r3 = &v[2];
        assert_eq!(r3["variant"], "r3");
        assert_eq!(r3["date"], "2018-02-01");
        assert_eq!(r3["NOID"], 61);
        let keys: Vec<_> = r3.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys.len(), 15);
    }

    #[test]
    fn bad_csv_is_rejected() {
        let p = Path::new("x.csv");
        assert!(parse_matrix_csv("a,b\n1,2\n", p).is_err());
        let header = csv_header().join(",");
        assert!(parse_matrix_csv(&format!("{header}\n"), p).is_err());
        let bad = format!("{header}\nr1,2014-13-01,1,1,1,1,1,1,1,1,1,1,1,1,1\n");
        assert!(parse_matrix_csv(&bad, p).unwrap_err().to_string().contains("line 2"));
        let neg = format!("{header}\nr1,2014-01-01,-1,1,1,1,1,1,1,1,1,1,1,1,1\n");
        assert!(parse_matrix_csv(&neg, p).unwrap_err().to_string().contains("LOC"));
    }
}
