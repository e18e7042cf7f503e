//! Parameter sweeps over grids of initial data.

use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use xflow_core::analysis::{estimate_blowup_time, first_negative, sl2r_region};
use xflow_core::analytic::{classify_branch, Branch, MonotoneQuantity};
use xflow_core::{
    integrate, Axis, FlowSpec, GeometryClass, IntegratorOptions, MetricDiag, Termination,
};

use crate::output::fmt_float;
use crate::InvalidInput;

pub const MAX_GRID_POINTS: usize = 1_000_000;

/// One axis of a grid: `v`, `min:max:count` or `min:max:count:log`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridAxis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub log: bool,
}

impl GridAxis {
    pub fn value(&self, k: usize) -> f64 {
        if self.count == 1 {
            return self.min;
        }
        let w = k as f64 / (self.count - 1) as f64;
        if self.log {
            self.min * (self.max / self.min).powf(w)
        } else {
            self.min + (self.max - self.min) * w
        }
    }
}

impl FromStr for GridAxis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| format!("`{p}` is not a number"))
        };
        let axis = match parts.as_slice() {
            [v] => GridAxis {
                min: num(v)?,
                max: num(v)?,
                count: 1,
                log: false,
            },
            [lo, hi, n] | [lo, hi, n, _] => {
                let log = match parts.get(3) {
                    None => false,
                    Some(&"log") => true,
                    Some(other) => {
                        return Err(format!("unknown spacing `{other}`, expected `log`"))
                    }
                };
                let count = n
                    .trim()
                    .parse()
                    .map_err(|_| format!("`{n}` is not a count"))?;
                GridAxis {
                    min: num(lo)?,
                    max: num(hi)?,
                    count,
                    log,
                }
            }
            _ => return Err(format!("expected v or min:max:count[:log], got `{s}`")),
        };
        if !(axis.min > 0.0 && axis.max >= axis.min && axis.max.is_finite()) {
            return Err(format!("need 0 < min <= max, got `{s}`"));
        }
        if axis.count == 0 {
            return Err("count must be at least 1".into());
        }
        Ok(axis)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanSpec {
    pub geometry: GeometryClass,
    pub flow: FlowSpec,
    pub axes: [GridAxis; 3],
    /// Rescale every datum to this volume `ABC`.
    pub volume: Option<f64>,
    pub options: IntegratorOptions,
}

impl ScanSpec {
    pub fn len(&self) -> usize {
        self.axes
            .iter()
            .fold(1usize, |n, a| n.saturating_mul(a.count))
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Initial datum at grid index `i`, with `C` varying fastest.
    pub fn point(&self, i: usize) -> [f64; 3] {
        let [a, b, c] = &self.axes;
        let (ia, rest) = (i / (b.count * c.count), i % (b.count * c.count));
        let (ib, ic) = (rest / c.count, rest % c.count);
        let mut p = [a.value(ia), b.value(ib), c.value(ic)];
        if let Some(v) = self.volume {
            let s = (v / (p[0] * p[1] * p[2])).cbrt();
            p = p.map(|x| x * s);
        }
        p
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub index: usize,
    #[serde(rename = "A0")]
    pub a0: f64,
    #[serde(rename = "B0")]
    pub b0: f64,
    #[serde(rename = "C0")]
    pub c0: f64,
    pub termination: String,
    pub t_end: f64,
    pub t0: Option<f64>,
    pub branch: Branch,
    /// Branch-specific outcome, see [`classify`].
    pub outcome: String,
    pub event_time: Option<f64>,
}

pub const SCAN_HEADER: [&str; 10] = [
    "index",
    "A0",
    "B0",
    "C0",
    "termination",
    "t_end",
    "t0",
    "branch",
    "outcome",
    "event_time",
];

/// Outcome labels:
/// - SL(2,R) generic: `region_entered` once `F1 < 0, F2 < 0` holds for good,
///   else `region_missed`; the event is the entry time.
/// - Sol generic: `gap_negative_before_t0` when `X_hi - 3 X_lo` turns negative
///   before the stop, else `gap_positive`; the event is the sign change.
/// - symmetric branches: `symmetric`; everything else `none`.
fn classify(traj: &xflow_core::Trajectory, branch: Branch) -> (String, Option<f64>) {
    let m0 = traj.initial;
    match branch {
        Branch::Sl2rGeneric => {
            let r = sl2r_region(traj);
            if r.retained {
                ("region_entered".into(), r.entered_at)
            } else {
                ("region_missed".into(), r.entered_at)
            }
        }
        Branch::SolGeneric => {
            let (hi, lo) = if m0.a() > m0.c() {
                (Axis::A, Axis::C)
            } else {
                (Axis::C, Axis::A)
            };
            let t1 = first_negative(
                traj,
                MonotoneQuantity::Gap {
                    hi,
                    lo,
                    weight: 3.0,
                },
            );
            match t1 {
                Some(t) if traj.is_singular() => ("gap_negative_before_t0".into(), Some(t)),
                _ => ("gap_positive".into(), t1),
            }
        }
        Branch::Sl2rSymmetric | Branch::SolSymmetric | Branch::Su2Round => {
            ("symmetric".into(), None)
        }
        _ => ("none".into(), None),
    }
}

pub fn scan_point(spec: &ScanSpec, index: usize) -> anyhow::Result<ScanRow> {
    let p = spec.point(index);
    let m0 = MetricDiag::from_array(p)?;
    let traj = integrate(spec.geometry, spec.flow, m0, &spec.options)?;
    let branch = classify_branch(spec.geometry, &m0);
    let (outcome, event_time) = if spec.flow == FlowSpec::NEGATIVE {
        classify(&traj, branch)
    } else {
        ("none".into(), None)
    };
    let t_end = match traj.termination {
        Termination::SingularTime { t_stop, .. } => t_stop,
        _ => traj.t_end(),
    };
    Ok(ScanRow {
        index,
        a0: p[0],
        b0: p[1],
        c0: p[2],
        termination: traj.termination.label().to_string(),
        t_end,
        t0: estimate_blowup_time(&traj).ok(),
        branch,
        outcome,
        event_time,
    })
}

/// Runs the whole grid; rows come back in grid order whatever the thread
/// count.
pub fn run_scan(spec: &ScanSpec, threads: Option<usize>) -> anyhow::Result<Vec<ScanRow>> {
    let n = spec.len();
    if n > MAX_GRID_POINTS {
        return Err(InvalidInput::msg(format!(
            "grid has {n} points, limit is {MAX_GRID_POINTS}"
        )));
    }
    spec.options.validate().map_err(InvalidInput::wrap)?;
    let work = || {
        (0..n)
            .into_par_iter()
            .map(|i| scan_point(spec, i))
            .collect::<anyhow::Result<Vec<_>>>()
    };
    match threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()?
            .install(work),
        None => work(),
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_float).unwrap_or_default()
}

fn branch_name(b: Branch) -> String {
    serde_json::to_value(b)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default()
}

pub fn write_scan_csv<W: Write>(out: W, rows: &[ScanRow]) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SCAN_HEADER)?;
    for r in rows {
        w.write_record([
            r.index.to_string(),
            fmt_float(r.a0),
            fmt_float(r.b0),
            fmt_float(r.c0),
            r.termination.clone(),
            fmt_float(r.t_end),
            opt(r.t0),
            branch_name(r.branch),
            r.outcome.clone(),
            opt(r.event_time),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_axis_parsing() {
        assert_eq!(
            "2".parse::<GridAxis>().unwrap(),
            GridAxis {
                min: 2.0,
                max: 2.0,
                count: 1,
                log: false
            }
        );
        let g: GridAxis = "1:4:4".parse().unwrap();
        assert_eq!(
            (0..4).map(|k| g.value(k)).collect::<Vec<_>>(),
            [1.0, 2.0, 3.0, 4.0]
        );
        let g: GridAxis = "1:100:3:log".parse().unwrap();
        assert!((g.value(1) - 10.0).abs() < 1e-12);
        assert!("0:1:3".parse::<GridAxis>().is_err());
        assert!("2:1:3".parse::<GridAxis>().is_err());
        assert!("1:2:0".parse::<GridAxis>().is_err());
        assert!("1:2:3:cubic".parse::<GridAxis>().is_err());
        assert!("1:2".parse::<GridAxis>().is_err());
    }

    fn spec(axes: [&str; 3]) -> ScanSpec {
        ScanSpec {
            geometry: GeometryClass::Sol,
            flow: FlowSpec::NEGATIVE,
            axes: axes.map(|s| s.parse().unwrap()),
            volume: None,
            options: IntegratorOptions::new(10.0).with_samples(256),
        }
    }

    #[test]
    fn grid_order_is_c_fastest() {
        let s = spec(["1:2:2", "3", "5:6:2"]);
        assert_eq!(s.len(), 4);
        assert_eq!(s.point(0), [1.0, 3.0, 5.0]);
        assert_eq!(s.point(1), [1.0, 3.0, 6.0]);
        assert_eq!(s.point(2), [2.0, 3.0, 5.0]);
    }

    #[test]
    fn volume_normalization() {
        let mut s = spec(["2", "4", "1"]);
        s.volume = Some(1.0);
        let p = s.point(0);
        assert!((p[0] * p[1] * p[2] - 1.0).abs() < 1e-14);
        assert!((p[0] / p[2] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn oversized_grid_rejected() {
        let s = spec(["1:2:1000", "1:2:1000", "1:2:2"]);
        let err = run_scan(&s, Some(1)).unwrap_err();
        assert!(err.downcast_ref::<InvalidInput>().is_some());
    }
}
