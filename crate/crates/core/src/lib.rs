//! Negative, positive and normalized cross curvature flow on locally
//! homogeneous 3-manifolds.
//!
//! A left-invariant metric on a unimodular 3-dimensional Lie group is
//! diagonal in a Milnor frame, `g = A f¹⊗f¹ + B f²⊗f² + C f³⊗f³`, and the
//! cross curvature flow reduces to an ODE system in `(A, B, C)`. This crate
//! provides:
//!
//! - [`geometry`]: structure signs, sectional curvatures and the cross
//!   curvature tensor for each geometry class,
//! - [`flows`]: right-hand sides of `-XCF`, `+XCF` and the normalized flow,
//! - [`integrator`]: an adaptive Dormand–Prince 5(4) integrator with dense
//!   output and finite-time singularity detection,
//! - [`analytic`]: closed-form solutions and the catalogs of conserved
//!   quantities, monotone quantities and asymptotic laws,
//! - [`analysis`]: blow-up time estimation, power-law fitting and
//!   trajectory verification reports,
//! - [`suites`]: the named verification runs per geometry.

pub mod analysis;
pub mod analytic;
mod error;
pub mod flows;
pub mod geometry;
pub mod integrator;
pub mod suites;

pub use analysis::{
    estimate_blowup_time, estimate_limit_plus_power, fit_power_law, verify, FitRegime, PowerLawFit,
    VerificationReport,
};
pub use analytic::{AsymptoticLaw, Variable};
pub use error::{FlowError, Result};
pub use flows::{flow_rhs, mean_cross, Direction, FlowSpec, RhsTriple};
pub use geometry::{
    cross_curvature_diag, cross_from_sectional, scalar_curvature, sectional_curvatures,
    structure_signs, Axis, CrossDiag, CurvTriple, GeometryClass, MetricDiag,
};
pub use integrator::{integrate, sample_at, IntegratorOptions, Termination, Trajectory};
