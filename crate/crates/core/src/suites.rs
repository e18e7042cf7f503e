//! Named verification runs per geometry.

use serde::{Deserialize, Serialize};

use crate::analysis::{verify, VerificationReport};
use crate::error::Result;
use crate::flows::FlowSpec;
use crate::geometry::{GeometryClass, MetricDiag};
use crate::integrator::{integrate, IntegratorOptions, Trajectory};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteRun {
    pub name: &'static str,
    pub geometry: GeometryClass,
    pub flow: FlowSpec,
    pub initial: [f64; 3],
    pub t_max: f64,
}

const fn run(
    name: &'static str,
    geometry: GeometryClass,
    flow: FlowSpec,
    initial: [f64; 3],
    t_max: f64,
) -> SuiteRun {
    SuiteRun {
        name,
        geometry,
        flow,
        initial,
        t_max,
    }
}

/// Runs for one geometry: every catalog branch under `-XCF` plus one
/// volume-normalized run.
pub fn suite(geom: GeometryClass) -> Vec<SuiteRun> {
    use FlowSpec as F;
    use GeometryClass as G;
    match geom {
        G::Heisenberg => vec![
            run(
                "heisenberg-global",
                G::Heisenberg,
                F::NEGATIVE,
                [1.0, 1.0, 1.0],
                100.0,
            ),
            run(
                "heisenberg-nxcf",
                G::Heisenberg,
                F::NORMALIZED,
                [1.0, 2.0, 3.0],
                100.0,
            ),
        ],
        G::Sol => vec![
            run("sol-symmetric", G::Sol, F::NEGATIVE, [1.0, 8.0, 1.0], 10.0),
            run("sol-generic", G::Sol, F::NEGATIVE, [2.0, 4.0, 1.0], 10.0),
            run("sol-wide", G::Sol, F::NEGATIVE, [5.0, 4.0, 1.0], 10.0),
            run("sol-nxcf", G::Sol, F::NORMALIZED, [2.0, 4.0, 1.0], 10.0),
        ],
        G::Su2 => vec![
            run("su2-round", G::Su2, F::NEGATIVE, [2.0, 2.0, 2.0], 10.0),
            run("su2-generic", G::Su2, F::NEGATIVE, [3.0, 2.0, 1.0], 10.0),
            run("su2-nxcf", G::Su2, F::NORMALIZED, [3.0, 2.0, 1.0], 10.0),
        ],
        G::Sl2r => vec![
            run("sl2r-symmetric", G::Sl2r, F::NEGATIVE, [1.0, 1.0, 1.0], 1e6),
            run("sl2r-generic", G::Sl2r, F::NEGATIVE, [1.0, 2.0, 1.0], 10.0),
            run("sl2r-nxcf", G::Sl2r, F::NORMALIZED, [1.0, 2.0, 1.0], 10.0),
        ],
        G::E2 => vec![
            run("e2-flat", G::E2, F::NEGATIVE, [3.0, 3.0, 1.0], 10.0),
            run("e2-cigar", G::E2, F::NEGATIVE, [2.0, 1.0, 1.0], 1e8),
            run("e2-nxcf", G::E2, F::NORMALIZED, [2.0, 1.0, 1.0], 100.0),
        ],
        G::Trivial => vec![
            run("trivial", G::Trivial, F::NEGATIVE, [1.0, 2.0, 3.0], 10.0),
            run(
                "trivial-nxcf",
                G::Trivial,
                F::NORMALIZED,
                [1.0, 2.0, 3.0],
                10.0,
            ),
        ],
    }
}

pub fn all_suites() -> Vec<SuiteRun> {
    GeometryClass::ALL.into_iter().flat_map(suite).collect()
}

impl SuiteRun {
    pub fn options(&self) -> IntegratorOptions {
        IntegratorOptions::new(self.t_max)
    }

    pub fn integrate(&self) -> Result<Trajectory> {
        integrate(
            self.geometry,
            self.flow,
            MetricDiag::from_array(self.initial)?,
            &self.options(),
        )
    }

    pub fn execute(&self) -> Result<(Trajectory, VerificationReport)> {
        let traj = self.integrate()?;
        let report = verify(&traj);
        Ok((traj, report))
    }
}
