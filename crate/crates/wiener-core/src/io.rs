//! Plain-text file formats.
//!
//! A coefficient file is CSV with a one-line JSON header comment:
//!
//! ```text
//! # {"kind":"phi","params":[2.0],"count":3,"storage_order":"0,1,-1,2,-2,..."}
//! index,re,im
//! 0,1.00000000000000e0,0.00000000000000e0
//! ...
//! ```
//!
//! `count` is K for Fourier kinds and N otherwise. Every real number is
//! written with 15 significant digits, so identical inputs give identical
//! bytes and a write/read cycle reproduces the printed values exactly.

use crate::error::{Error, Result};
use crate::jacobi_quad::QuadratureRule;
use crate::modal::{canonical_index, BasisKind, ModalCoefficients};
use crate::stiffness::SparseStiffness;
use crate::Complex64;
use serde::{Deserialize, Serialize};
use std::io::{BufRead, BufReader, Read, Write};

pub const FOURIER_ORDER: &str = "0,1,-1,2,-2,...";
pub const POLYNOMIAL_ORDER: &str = "0,1,2,...";

/// A real number with 15 significant digits.
pub fn fmt_real(v: f64) -> String {
    if v == 0.0 {
        return format!("{:.14e}", 0.0);
    }
    format!("{v:.14e}")
}

/// Metadata line of a coefficient file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientHeader {
    pub kind: BasisKind,
    pub params: Vec<f64>,
    pub count: usize,
    pub storage_order: String,
}

impl CoefficientHeader {
    pub fn describe(coeffs: &ModalCoefficients) -> Self {
        let fourier = coeffs.kind.is_fourier();
        Self {
            kind: coeffs.kind,
            params: coeffs.params.clone(),
            count: coeffs.extent(),
            storage_order: if fourier {
                FOURIER_ORDER
            } else {
                POLYNOMIAL_ORDER
            }
            .to_string(),
        }
    }
}

fn io_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Io(msg.into()))
}

fn parse_f64(field: &str, what: &str) -> Result<f64> {
    field
        .trim()
        .parse()
        .map_err(|_| Error::Io(format!("cannot parse {what} `{field}`")))
}

/// Reads the `# {...}` header and hands back the remaining CSV text.
fn split_header<R: Read>(reader: R) -> Result<(String, String)> {
    let mut buf = BufReader::new(reader);
    let mut first = String::new();
    buf.read_line(&mut first)?;
    let json = match first.trim().strip_prefix('#') {
        Some(rest) => rest.trim().to_string(),
        None => return io_err("missing `# {...}` header line"),
    };
    let mut body = String::new();
    buf.read_to_string(&mut body)?;
    Ok((json, body))
}

fn csv_rows(body: &str) -> Result<Vec<csv::StringRecord>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(body.as_bytes());
    rdr.records().map(|r| r.map_err(Error::from)).collect()
}

pub fn write_coefficients<W: Write>(mut w: W, coeffs: &ModalCoefficients) -> Result<()> {
    let header = serde_json::to_string(&CoefficientHeader::describe(coeffs))?;
    writeln!(w, "# {header}")?;
    writeln!(w, "index,re,im")?;
    for (pos, v) in coeffs.entries.iter().enumerate() {
        writeln!(
            w,
            "{},{},{}",
            coeffs.index_at(pos),
            fmt_real(v.re),
            fmt_real(v.im)
        )?;
    }
    Ok(())
}

pub fn read_coefficients<R: Read>(reader: R) -> Result<ModalCoefficients> {
    let (json, body) = split_header(reader)?;
    let header: CoefficientHeader = serde_json::from_str(&json)?;
    let fourier = header.kind.is_fourier();
    let expected_order = if fourier {
        FOURIER_ORDER
    } else {
        POLYNOMIAL_ORDER
    };
    if header.storage_order != expected_order {
        return io_err(format!(
            "storage order `{}` does not match `{expected_order}`",
            header.storage_order
        ));
    }
    let len = if fourier {
        2 * header.count + 1
    } else {
        header.count
    };
    let rows = csv_rows(&body)?;
    if rows.len() != len {
        return io_err(format!(
            "header declares {len} rows, body has {}",
            rows.len()
        ));
    }
    let mut entries = Vec::with_capacity(len);
    for (pos, row) in rows.iter().enumerate() {
        if row.len() != 3 {
            return io_err(format!("row {pos} has {} fields, expected 3", row.len()));
        }
        let index: i64 = row[0]
            .parse()
            .map_err(|_| Error::Io(format!("cannot parse index `{}`", &row[0])))?;
        let expected = if fourier {
            canonical_index(pos)
        } else {
            pos as i64
        };
        if index != expected {
            return io_err(format!(
                "row {pos} holds index {index}, expected {expected}"
            ));
        }
        entries.push(Complex64::new(
            parse_f64(&row[1], "re")?,
            parse_f64(&row[2], "im")?,
        ));
    }
    ModalCoefficients::new(header.kind, header.params, entries)
}

/// Sample table: `point,re,im`.
pub fn write_samples<W: Write>(mut w: W, points: &[f64], values: &[Complex64]) -> Result<()> {
    writeln!(w, "point,re,im")?;
    for (p, v) in points.iter().zip(values) {
        writeln!(w, "{},{},{}", fmt_real(*p), fmt_real(v.re), fmt_real(v.im))?;
    }
    Ok(())
}

/// Reads `point,re,im` rows; a two-column `point,value` table is read as real
/// samples.
pub fn read_samples<R: Read>(mut reader: R) -> Result<(Vec<f64>, Vec<Complex64>)> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    let mut points = Vec::new();
    let mut values = Vec::new();
    for row in csv_rows(&text)? {
        let p = parse_f64(&row[0], "point")?;
        let re = parse_f64(row.get(1).unwrap_or(""), "re")?;
        let im = match row.get(2) {
            Some(f) => parse_f64(f, "im")?,
            None => 0.0,
        };
        points.push(p);
        values.push(Complex64::new(re, im));
    }
    Ok((points, values))
}

/// A plain list of points, one per line or as the first CSV column.
pub fn read_points<R: Read>(reader: R) -> Result<Vec<f64>> {
    let buf = BufReader::new(reader);
    let mut points = Vec::new();
    for line in buf.lines() {
        let line = line?;
        let first = line.split(',').next().unwrap_or("").trim();
        if first.is_empty() || first.starts_with('#') {
            continue;
        }
        match first.parse::<f64>() {
            Ok(v) => points.push(v),
            Err(_) if points.is_empty() => continue,
            Err(_) => return io_err(format!("cannot parse point `{first}`")),
        }
    }
    Ok(points)
}

/// Quadrature rule table: `n,node,weight`.
pub fn write_rule<W: Write>(mut w: W, rule: &QuadratureRule) -> Result<()> {
    writeln!(w, "n,node,weight")?;
    for (j, (x, wt)) in rule.nodes.iter().zip(&rule.weights).enumerate() {
        writeln!(w, "{j},{},{}", fmt_real(*x), fmt_real(*wt))?;
    }
    Ok(())
}

/// Stiffness triplets: `row_k,col_k,im_value` (all entries are imaginary).
pub fn write_triplets<W: Write>(mut w: W, m: &SparseStiffness) -> Result<()> {
    writeln!(w, "row_k,col_k,im_value")?;
    let mut sorted = m.triplets.clone();
    sorted.sort_by_key(|t| (t.0, t.1));
    for (r, c, v) in sorted {
        writeln!(w, "{r},{c},{}", fmt_real(v.im))?;
    }
    Ok(())
}

pub fn read_triplets<R: Read>(mut reader: R) -> Result<Vec<(i64, i64, f64)>> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    csv_rows(&text)?
        .iter()
        .map(|row| {
            let r = row[0]
                .parse()
                .map_err(|_| Error::Io(format!("bad row index `{}`", &row[0])))?;
            let c = row[1]
                .parse()
                .map_err(|_| Error::Io(format!("bad column index `{}`", &row[1])))?;
            Ok((r, c, parse_f64(&row[2], "value")?))
        })
        .collect()
}
