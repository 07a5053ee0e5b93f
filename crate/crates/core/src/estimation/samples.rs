use std::io::{Read, Write};

use crate::error::{Error, Result};

/// `n × d` table of finite floating values, stored by column.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleMatrix {
    labels: Vec<String>,
    columns: Vec<Vec<f64>>,
}

impl SampleMatrix {
    pub fn new(labels: Vec<String>, columns: Vec<Vec<f64>>) -> Result<Self> {
        if labels.len() != columns.len() || labels.is_empty() {
            return Err(Error::DimensionMismatch { expected: labels.len(), found: columns.len() });
        }
        let n = columns[0].len();
        if n < 2 {
            return Err(Error::InsufficientSample(format!("{n} rows; at least 2 required")));
        }
        for (label, col) in labels.iter().zip(&columns) {
            if col.len() != n {
                return Err(Error::InvalidInput(format!("column {label:?} has {} rows, expected {n}", col.len())));
            }
            if let Some(pos) = col.iter().position(|v| !v.is_finite()) {
                return Err(Error::InvalidInput(format!("column {label:?} row {pos} is not finite")));
            }
        }
        Ok(Self { labels, columns })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn rows(&self) -> usize {
        self.columns[0].len()
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.columns[j]
    }

    pub fn row_into(&self, r: usize, out: &mut [f64]) {
        for (o, col) in out.iter_mut().zip(&self.columns) {
            *o = col[r];
        }
    }

    /// Header row of labels, then one observation per row.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
        let labels: Vec<String> = rdr
            .headers()
            .map_err(csv_error)?
            .iter()
            .map(str::to_string)
            .collect();
        let mut columns = vec![Vec::new(); labels.len()];
        for record in rdr.records() {
            let record = record.map_err(csv_error)?;
            let line = record.position().map_or(0, |p| p.line() as usize);
            if record.len() != labels.len() {
                return Err(Error::Parse {
                    line,
                    column: 1,
                    message: format!("expected {} fields, found {}", labels.len(), record.len()),
                });
            }
            for (j, field) in record.iter().enumerate() {
                let v: f64 = field.parse().map_err(|_| Error::Parse {
                    line,
                    column: j + 1,
                    message: format!("not a number: {field:?}"),
                })?;
                columns[j].push(v);
            }
        }
        Self::new(labels, columns)
    }

    pub fn to_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let io = |e: csv::Error| Error::InvalidInput(e.to_string());
        w.write_record(&self.labels).map_err(io)?;
        for r in 0..self.rows() {
            w.write_record(self.columns.iter().map(|c| format!("{:?}", c[r]))).map_err(io)?;
        }
        w.flush().map_err(|e| Error::InvalidInput(e.to_string()))
    }
}

fn csv_error(e: csv::Error) -> Error {
    let (line, column) = e
        .position()
        .map_or((0, 0), |p| (p.line() as usize, 1));
    Error::Parse { line, column, message: e.to_string() }
}
