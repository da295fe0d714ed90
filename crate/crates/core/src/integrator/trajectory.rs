use std::io::{Read, Write};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::config::SimulationConfig;
use super::dop853::StepStats;
use crate::error::{Error, Result};
use crate::system::StateVector;

pub const CSV_HEADER: [&str; 12] = [
    "t", "re_c1", "im_c1", "re_c2", "im_c2", "P1", "P2", "norm", "abs_a_minus", "abs_a_plus",
    "gamma", "theta",
];

/// One dense-output sample. Populations and the norm are derived from `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRow {
    pub t: f64,
    pub c: StateVector,
    pub abs_a_minus: f64,
    pub abs_a_plus: f64,
    pub gamma: f64,
    pub theta: f64,
}

impl TrajectoryRow {
    pub fn p1(&self) -> f64 {
        self.c.p1()
    }

    pub fn p2(&self) -> f64 {
        self.c.p2()
    }

    pub fn norm(&self) -> f64 {
        self.c.norm()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRecord {
    pub config: SimulationConfig,
    pub stats: StepStats,
    pub rows: Vec<TrajectoryRow>,
}

impl TrajectoryRecord {
    pub fn first(&self) -> &TrajectoryRow {
        &self.rows[0]
    }

    pub fn last(&self) -> &TrajectoryRow {
        &self.rows[self.rows.len() - 1]
    }

    pub fn final_state(&self) -> StateVector {
        self.last().c
    }

    pub fn max_abs_a_minus(&self) -> f64 {
        self.rows.iter().fold(0.0, |m, r| m.max(r.abs_a_minus))
    }

    pub fn max_abs_a_plus(&self) -> f64 {
        self.rows.iter().fold(0.0, |m, r| m.max(r.abs_a_plus))
    }

    pub fn max_norm_deviation(&self) -> f64 {
        self.rows.iter().fold(0.0, |m, r| m.max((r.norm() - 1.0).abs()))
    }

    pub fn norm_range(&self) -> (f64, f64) {
        self.rows.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
            let n = r.norm();
            (lo.min(n), hi.max(n))
        })
    }

    pub fn peak_abs_gamma(&self) -> f64 {
        self.rows.iter().fold(0.0, |m, r| m.max(r.gamma.abs()))
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        write_rows_csv(&self.rows, out)
    }

    pub fn write_json<W: Write>(&self, out: W) -> Result<()> {
        serde_json::to_writer_pretty(out, self)?;
        Ok(())
    }

    pub fn read_json<R: Read>(input: R) -> Result<Self> {
        Ok(serde_json::from_reader(input)?)
    }
}

/// Rows as CSV with shortest round-trip decimal formatting.
pub fn write_rows_csv<W: Write>(rows: &[TrajectoryRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        let fields = [
            r.t,
            r.c.c1.re,
            r.c.c1.im,
            r.c.c2.re,
            r.c.c2.im,
            r.p1(),
            r.p2(),
            r.norm(),
            r.abs_a_minus,
            r.abs_a_plus,
            r.gamma,
            r.theta,
        ];
        w.write_record(fields.iter().map(|v| format!("{v:?}")))?;
    }
    w.flush()?;
    Ok(())
}

/// Parses the CSV layout written by [`write_rows_csv`]. Derived columns
/// (`P1`, `P2`, `norm`) are checked against the amplitudes, not stored.
pub fn read_rows_csv<R: Read>(input: R) -> Result<Vec<TrajectoryRow>> {
    let mut rd = csv::Reader::from_reader(input);
    let header = rd.headers()?.clone();
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(Error::Table(format!("unexpected trajectory header: {header:?}")));
    }
    let mut rows = Vec::new();
    for rec in rd.records() {
        let rec = rec?;
        let v = rec
            .iter()
            .map(|s| s.parse::<f64>().map_err(|e| Error::Table(format!("{s:?}: {e}"))))
            .collect::<Result<Vec<f64>>>()?;
        let row = TrajectoryRow {
            t: v[0],
            c: StateVector::new(C64::new(v[1], v[2]), C64::new(v[3], v[4])),
            abs_a_minus: v[8],
            abs_a_plus: v[9],
            gamma: v[10],
            theta: v[11],
        };
        if row.p1() != v[5] || row.p2() != v[6] || row.norm() != v[7] {
            return Err(Error::Table(format!("derived columns inconsistent at t = {}", v[0])));
        }
        rows.push(row);
    }
    Ok(rows)
}
