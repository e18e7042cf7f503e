//! Trajectory tables (CSV) and run documents (JSON).

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};
use xflow_core::analysis::VerificationReport;
use xflow_core::{
    cross_curvature_diag, sectional_curvatures, GeometryClass, MetricDiag, Termination, Trajectory,
};

use crate::config::RunConfig;

pub const CSV_HEADER: [&str; 10] = ["t", "A", "B", "C", "k23", "k31", "k12", "h11", "h22", "h33"];

/// One trajectory sample with its curvature data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleRow {
    pub t: f64,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub k23: f64,
    pub k31: f64,
    pub k12: f64,
    pub h11: f64,
    pub h22: f64,
    pub h33: f64,
}

impl SampleRow {
    pub fn new(geom: GeometryClass, t: f64, m: &MetricDiag) -> Self {
        let k = sectional_curvatures(geom, m);
        let h = cross_curvature_diag(geom, m);
        SampleRow {
            t,
            a: m.a(),
            b: m.b(),
            c: m.c(),
            k23: k.k23,
            k31: k.k31,
            k12: k.k12,
            h11: h.h11,
            h22: h.h22,
            h33: h.h33,
        }
    }

    pub fn to_array(&self) -> [f64; 10] {
        [
            self.t, self.a, self.b, self.c, self.k23, self.k31, self.k12, self.h11, self.h22,
            self.h33,
        ]
    }

    pub fn from_array(v: [f64; 10]) -> Self {
        let [t, a, b, c, k23, k31, k12, h11, h22, h33] = v;
        SampleRow {
            t,
            a,
            b,
            c,
            k23,
            k31,
            k12,
            h11,
            h22,
            h33,
        }
    }
}

pub fn sample_rows(traj: &Trajectory) -> Vec<SampleRow> {
    traj.times
        .iter()
        .zip(&traj.states)
        .map(|(t, m)| SampleRow::new(traj.geometry, *t, m))
        .collect()
}

/// 17 significant digits, enough to round-trip every `f64`.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_csv<W: Write>(out: W, rows: &[SampleRow]) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record(r.to_array().map(fmt_float))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> anyhow::Result<Vec<SampleRow>> {
    let mut rd = csv::Reader::from_reader(input);
    let header = rd.headers()?.clone();
    if header.iter().ne(CSV_HEADER) {
        anyhow::bail!("unexpected CSV header {:?}", header);
    }
    let mut rows = Vec::new();
    for rec in rd.records() {
        let rec = rec?;
        let mut v = [0.0; 10];
        for (slot, field) in v.iter_mut().zip(rec.iter()) {
            *slot = field.parse()?;
        }
        rows.push(SampleRow::from_array(v));
    }
    Ok(rows)
}

#[derive(Debug, Serialize)]
pub struct RunDocument<'a> {
    pub meta: &'a RunConfig,
    pub samples: Vec<SampleRow>,
    pub termination: &'a Termination,
    pub analysis: Option<VerificationReport>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_is_exact() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &[]).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "t,A,B,C,k23,k31,k12,h11,h22,h33\n"
        );
    }

    #[test]
    fn float_format_round_trips() {
        for x in [
            0.1,
            1.0 / 3.0,
            -2.5e-300,
            6.02214076e23,
            f64::MIN_POSITIVE,
            0.0,
        ] {
            assert_eq!(fmt_float(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_float(1.0), "1.0000000000000000e0");
    }

    #[test]
    fn row_matches_geometry() {
        let r = SampleRow::new(
            GeometryClass::Heisenberg,
            0.0,
            &MetricDiag::new(1.0, 1.0, 1.0).unwrap(),
        );
        assert_eq!(
            r.to_array(),
            [0.0, 1.0, 1.0, 1.0, -3.0, 1.0, 1.0, 1.0, -3.0, -3.0]
        );
    }
}
