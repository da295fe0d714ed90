use std::io::Read;

use super::drive::DriveTable;
use super::spline::CubicSpline;
use crate::error::{Error, Result};

/// Reads a headed CSV of exactly `ncols` numeric columns, column-major.
fn read_columns<R: Read>(input: R, ncols: usize) -> Result<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).comment(Some(b'#')).from_reader(input);
    let header = reader.headers()?.len();
    if header != ncols {
        return Err(Error::Table(format!("expected {ncols} columns, header has {header}")));
    }
    let mut cols = vec![Vec::new(); ncols];
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        if record.len() != ncols {
            return Err(Error::Table(format!("row {}: expected {ncols} fields, got {}", i + 1, record.len())));
        }
        for (col, field) in cols.iter_mut().zip(record.iter()) {
            let v: f64 = field
                .parse()
                .map_err(|_| Error::Table(format!("row {}: not a number: {field:?}", i + 1)))?;
            col.push(v);
        }
    }
    Ok(cols)
}

impl DriveTable {
    /// Columns `t, coupling, detuning` with a header row.
    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut cols = read_columns(input, 3)?;
        let detuning = cols.pop().unwrap_or_default();
        let coupling = cols.pop().unwrap_or_default();
        let times = cols.pop().unwrap_or_default();
        Self::new(times, coupling, detuning)
    }
}

/// A `t, gamma` profile (as written by `ShortcutProfile::write_csv`).
pub fn read_gamma_csv<R: Read>(input: R) -> Result<CubicSpline> {
    let mut cols = read_columns(input, 2)?;
    let gamma = cols.pop().unwrap_or_default();
    let times = cols.pop().unwrap_or_default();
    CubicSpline::new(times, gamma)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_drive_table() {
        let text = "t,omega,delta\n# comment\n0, 1, -1\n1, 2, 0\n2, 1, 1\n";
        let table = DriveTable::read_csv(text.as_bytes()).unwrap();
        assert_eq!(table.times(), &[0.0, 1.0, 2.0]);
        assert_eq!(table.coupling_samples(), &[1.0, 2.0, 1.0]);
        assert_eq!(table.detuning_samples(), &[-1.0, 0.0, 1.0]);
    }

    #[test]
    fn rejects_malformed_tables() {
        assert!(DriveTable::read_csv("t,omega\n0,1\n1,1\n".as_bytes()).is_err());
        assert!(DriveTable::read_csv("t,omega,delta\n0,1,x\n1,1,1\n".as_bytes()).is_err());
        assert!(DriveTable::read_csv("t,omega,delta\n1,1,1\n0,1,1\n".as_bytes()).is_err());
        assert!(read_gamma_csv("t,gamma\n0,1,2\n".as_bytes()).is_err());
    }
}
