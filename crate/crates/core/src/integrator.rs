//! Adaptive integration of the flow ODEs through finite-time singularities.
//!
//! The stepper is the Dormand–Prince 5(4) pair with FSAL, Hairer's
//! proportional-integral step controller and the pair's fifth-order
//! continuous extension. Every accepted step keeps its interpolation
//! coefficients, so output rows are produced after the run on a grid that
//! already knows where the run ended:
//!
//! - half the rows are uniform in `t`;
//! - for a singular run the other half are geometric in `t_stop - t`, for a
//!   regular run geometric in `t + τ`, where `τ` is the initial relaxation
//!   time `min |X / X'|`.
//!
//! A run halts when a component leaves `[floor, ceil]` (both relative to the
//! initial data) or when the step size falls below `1e-14 (1 + t)`.

use serde::{Deserialize, Serialize};

use crate::error::{FlowError, Result};
use crate::flows::{flow_rhs, FlowSpec};
use crate::geometry::{Axis, GeometryClass, MetricDiag};

// Dormand–Prince 5(4) tableau. The system is autonomous, so the abscissae
// only appear in the consistency test.
#[cfg_attr(not(test), allow(dead_code))]
const C2: f64 = 1.0 / 5.0;
#[cfg_attr(not(test), allow(dead_code))]
const C3: f64 = 3.0 / 10.0;
#[cfg_attr(not(test), allow(dead_code))]
const C4: f64 = 4.0 / 5.0;
#[cfg_attr(not(test), allow(dead_code))]
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

// Step controller.
const SAFETY: f64 = 0.9;
const BETA: f64 = 0.04;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;

/// Share of the user tolerance granted to the local error of one step.
/// The flows amplify errors near a collapse (relative error in a component
/// that vanishes like `sqrt(T0 - t)` grows like `1 / (T0 - t)`), so the
/// per-step budget is kept two decades below the requested accuracy.
pub const LOCAL_ERROR_FRACTION: f64 = 1e-2;

/// Relative step size below which the run is declared singular.
pub const STEP_UNDERFLOW: f64 = 1e-14;
/// A component outside `[BAND_LO, BAND_HI]` times its initial value counts
/// as vanishing or exploding in the termination summary.
pub const BAND_LO: f64 = 1e-2;
pub const BAND_HI: f64 = 1e2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorOptions {
    pub rtol: f64,
    pub atol: f64,
    pub t_max: f64,
    pub max_steps: usize,
    /// Component floor is `floor_factor * min(A0, B0, C0)`.
    pub floor_factor: f64,
    /// Component ceiling is `ceil_factor * max(A0, B0, C0)`.
    pub ceil_factor: f64,
    /// Number of dense-output rows (upper bound after de-duplication).
    pub samples: usize,
}

impl IntegratorOptions {
    pub fn new(t_max: f64) -> Self {
        IntegratorOptions {
            rtol: 1e-10,
            atol: 1e-13,
            t_max,
            max_steps: 10_000_000,
            floor_factor: 1e-10,
            ceil_factor: 1e10,
            samples: 2048,
        }
    }

    pub fn with_tolerances(mut self, rtol: f64, atol: f64) -> Self {
        self.rtol = rtol;
        self.atol = atol;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_max_steps(mut self, max_steps: usize) -> Self {
        self.max_steps = max_steps;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(FlowError::InvalidOptions(msg.to_string()));
        if !(self.rtol > 0.0 && self.atol > 0.0) {
            return bad("rtol and atol must be positive");
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return bad("t_max must be positive and finite");
        }
        if !(self.floor_factor > 0.0 && self.floor_factor < 1.0 && self.ceil_factor > 1.0) {
            return bad("need 0 < floor_factor < 1 < ceil_factor");
        }
        if self.samples < 4 {
            return bad("at least 4 samples required");
        }
        if self.max_steps == 0 {
            return bad("max_steps must be positive");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopCause {
    Floor,
    Ceiling,
    StepUnderflow,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Termination {
    ReachedTMax,
    SingularTime {
        t_stop: f64,
        vanishing: Vec<Axis>,
        exploding: Vec<Axis>,
        cause: StopCause,
    },
    StepBudgetExhausted {
        t_reached: f64,
    },
}

impl Termination {
    pub fn label(&self) -> &'static str {
        match self {
            Termination::ReachedTMax => "reached_t_max",
            Termination::SingularTime { .. } => "singular_time",
            Termination::StepBudgetExhausted { .. } => "step_budget_exhausted",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct StepStats {
    pub accepted: usize,
    pub rejected: usize,
    pub rhs_evals: usize,
}

/// One accepted step with its continuous extension.
#[derive(Debug, Clone, PartialEq)]
struct Segment {
    t0: f64,
    h: f64,
    end: [f64; 3],
    rcont: [[f64; 3]; 5],
}

impl Segment {
    fn eval(&self, t: f64) -> [f64; 3] {
        if t >= self.t0 + self.h {
            return self.end;
        }
        let theta = (t - self.t0) / self.h;
        let theta1 = 1.0 - theta;
        let r = &self.rcont;
        let mut y = [0.0; 3];
        for i in 0..3 {
            y[i] = r[0][i]
                + theta * (r[1][i] + theta1 * (r[2][i] + theta * (r[3][i] + theta1 * r[4][i])));
        }
        if y.iter().all(|v| *v > 0.0 && v.is_finite()) {
            y
        } else {
            // The quintic can undershoot in the last steps before a collapse;
            // fall back to the chord, which stays positive.
            let mut lin = [0.0; 3];
            for i in 0..3 {
                lin[i] = r[0][i] + theta * r[1][i];
            }
            lin
        }
    }
}

/// Sampled solution of one flow run.
#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    pub geometry: GeometryClass,
    pub spec: FlowSpec,
    pub initial: MetricDiag,
    pub times: Vec<f64>,
    pub states: Vec<MetricDiag>,
    pub termination: Termination,
    pub stats: StepStats,
    #[serde(skip)]
    dense: Vec<Segment>,
}

impl Trajectory {
    /// Builds a trajectory from externally computed samples, e.g. a closed
    /// form. Interpolation between samples is linear.
    pub fn from_samples(
        geometry: GeometryClass,
        spec: FlowSpec,
        times: Vec<f64>,
        states: Vec<MetricDiag>,
        termination: Termination,
    ) -> Result<Self> {
        if times.is_empty() || times.len() != states.len() {
            return Err(FlowError::InvalidOptions(
                "times and states must be non-empty and of equal length".into(),
            ));
        }
        if times[0] != 0.0 || times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(FlowError::InvalidOptions(
                "times must start at 0 and increase strictly".into(),
            ));
        }
        Ok(Trajectory {
            geometry,
            spec,
            initial: states[0],
            times,
            states,
            termination,
            stats: StepStats::default(),
            dense: Vec::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn t_end(&self) -> f64 {
        *self
            .times
            .last()
            .expect("trajectory has at least one sample")
    }

    pub fn final_state(&self) -> MetricDiag {
        *self
            .states
            .last()
            .expect("trajectory has at least one sample")
    }

    pub fn is_singular(&self) -> bool {
        matches!(self.termination, Termination::SingularTime { .. })
    }

    /// Interpolated state at `t`, using the integrator's continuous extension
    /// when available.
    pub fn sample_at(&self, t: f64) -> Result<MetricDiag> {
        let t_end = self.t_end();
        if !(0.0..=t_end).contains(&t) {
            return Err(FlowError::OutOfRange { t, t_end });
        }
        if t == 0.0 {
            return Ok(self.states[0]);
        }
        if !self.dense.is_empty() {
            return Ok(dense_eval(&self.dense, t));
        }
        let i = self.times.partition_point(|&s| s < t);
        if self.times[i] == t {
            return Ok(self.states[i]);
        }
        let (t0, t1) = (self.times[i - 1], self.times[i]);
        let w = (t - t0) / (t1 - t0);
        let (y0, y1) = (self.states[i - 1].to_array(), self.states[i].to_array());
        let mut y = [0.0; 3];
        for k in 0..3 {
            y[k] = (1.0 - w) * y0[k] + w * y1[k];
        }
        MetricDiag::from_array(y)
    }
}

fn dense_eval(dense: &[Segment], t: f64) -> MetricDiag {
    let i = dense
        .partition_point(|s| s.t0 + s.h < t)
        .min(dense.len() - 1);
    MetricDiag::from_array(dense[i].eval(t)).expect("continuous extension stays positive")
}

pub fn sample_at(traj: &Trajectory, t: f64) -> Result<MetricDiag> {
    traj.sample_at(t)
}

fn rhs(geom: GeometryClass, spec: FlowSpec, y: &[f64; 3]) -> Option<[f64; 3]> {
    let m = MetricDiag::from_array(*y).ok()?;
    let r = flow_rhs(geom, &m, spec).to_array();
    r.iter().all(|v| v.is_finite()).then_some(r)
}

fn axpy(y: &[f64; 3], h: f64, terms: &[(f64, &[f64; 3])]) -> [f64; 3] {
    let mut out = *y;
    for i in 0..3 {
        let mut s = 0.0;
        for (c, k) in terms {
            s += c * k[i];
        }
        out[i] += h * s;
    }
    out
}

fn initial_step(
    geom: GeometryClass,
    spec: FlowSpec,
    y0: &[f64; 3],
    f0: &[f64; 3],
    opts: &IntegratorOptions,
) -> (f64, usize) {
    let sk: Vec<f64> = y0
        .iter()
        .map(|y| LOCAL_ERROR_FRACTION * (opts.atol + opts.rtol * y.abs()))
        .collect();
    let dnf: f64 = (0..3).map(|i| (f0[i] / sk[i]).powi(2)).sum();
    let dny: f64 = (0..3).map(|i| (y0[i] / sk[i]).powi(2)).sum();
    let mut h = if dnf <= 1e-10 || dny <= 1e-10 {
        1e-6
    } else {
        0.01 * (dny / dnf).sqrt()
    };
    h = h.min(opts.t_max);
    let y1 = axpy(y0, h, &[(1.0, f0)]);
    let Some(f1) = rhs(geom, spec, &y1) else {
        return (h * 1e-3, 1);
    };
    let der2 = (0..3)
        .map(|i| ((f1[i] - f0[i]) / sk[i]).powi(2))
        .sum::<f64>()
        .sqrt()
        / h;
    let der12 = der2.abs().max(dnf.sqrt());
    let h1 = if der12 <= 1e-15 {
        (h * 1e-3).max(1e-6)
    } else {
        (0.01 / der12).powf(0.2)
    };
    ((100.0 * h).min(h1).min(opts.t_max), 1)
}

/// Sample times: uniform rows plus geometric rows towards the end of the run.
fn sample_grid(t_end: f64, n: usize, singular: bool, tau: f64, h_last: f64) -> Vec<f64> {
    let n_uni = n / 2;
    let n_geo = n - n_uni;
    let mut grid: Vec<f64> = (0..n_uni)
        .map(|i| t_end * i as f64 / (n_uni - 1) as f64)
        .collect();
    if singular {
        let d_max = t_end;
        let d_min = h_last.max(4.0 * f64::EPSILON * t_end).min(d_max);
        grid.extend((0..n_geo).map(|j| {
            let d = d_max * (d_min / d_max).powf(j as f64 / (n_geo - 1) as f64);
            t_end - d
        }));
    } else if tau.is_finite() && tau > 0.0 && tau < t_end {
        let ratio = (t_end + tau) / tau;
        grid.extend((0..n_geo).map(|j| tau * ratio.powf(j as f64 / (n_geo - 1) as f64) - tau));
    }
    grid.push(t_end);
    grid.retain(|t| (0.0..=t_end).contains(t));
    grid.sort_by(f64::total_cmp);
    grid.dedup_by(|b, a| *b <= *a);
    grid
}

/// Integrates `spec` on `geom` from `m0` up to `opts.t_max` or a singular time.
pub fn integrate(
    geom: GeometryClass,
    spec: FlowSpec,
    m0: MetricDiag,
    opts: &IntegratorOptions,
) -> Result<Trajectory> {
    opts.validate()?;
    let y0 = m0.to_array();
    let floor = opts.floor_factor * m0.min_component();
    let ceil = opts.ceil_factor * m0.max_component();
    let mut stats = StepStats::default();

    let f0 = rhs(geom, spec, &y0).expect("rhs is finite on valid metrics");
    stats.rhs_evals += 1;
    let tau = (0..3)
        .filter(|&i| f0[i] != 0.0)
        .map(|i| (y0[i] / f0[i]).abs())
        .fold(f64::INFINITY, f64::min);

    let (mut h, evals) = initial_step(geom, spec, &y0, &f0, opts);
    stats.rhs_evals += evals;

    let expo1 = 0.2 - BETA * 0.75;
    let mut facold: f64 = 1e-4;
    let mut last_rejected = false;
    let mut t = 0.0;
    let mut y = y0;
    let mut k1 = f0;
    let mut dense: Vec<Segment> = Vec::new();
    let mut steps = 0usize;

    let termination = loop {
        if t >= opts.t_max {
            break Termination::ReachedTMax;
        }
        if steps >= opts.max_steps {
            break Termination::StepBudgetExhausted { t_reached: t };
        }
        if h < STEP_UNDERFLOW * (1.0 + t) {
            break singular_at(t, &y, &y0, floor, ceil, StopCause::StepUnderflow);
        }
        let mut last = false;
        if t + h >= opts.t_max * (1.0 - 4.0 * f64::EPSILON) {
            h = opts.t_max - t;
            last = true;
        }
        steps += 1;

        let trial = dp_step(geom, spec, &y, &k1, h);
        stats.rhs_evals += trial.evals;
        let Some(step) = trial.result else {
            // Non-positive or non-finite stage: keep the state in the domain.
            stats.rejected += 1;
            h *= 0.5;
            last_rejected = true;
            continue;
        };

        let mut err = 0.0;
        for i in 0..3 {
            let sk = LOCAL_ERROR_FRACTION
                * (opts.atol + opts.rtol * y[i].abs().max(step.y_new[i].abs()));
            err += (step.err[i] / sk).powi(2);
        }
        let err = (err / 3.0).sqrt();
        if !err.is_finite() {
            stats.rejected += 1;
            h *= 0.5;
            last_rejected = true;
            continue;
        }

        let fac11 = err.powf(expo1);
        if err <= 1.0 {
            let fac = (fac11 / facold.powf(BETA) / SAFETY).clamp(1.0 / FAC_MAX, 1.0 / FAC_MIN);
            let mut h_new = h / fac;
            facold = err.max(1e-4);
            if last_rejected {
                h_new = h_new.min(h);
            }
            last_rejected = false;
            stats.accepted += 1;

            let ydiff: [f64; 3] = std::array::from_fn(|i| step.y_new[i] - y[i]);
            let bspl: [f64; 3] = std::array::from_fn(|i| h * k1[i] - ydiff[i]);
            let r4: [f64; 3] = std::array::from_fn(|i| ydiff[i] - h * step.k7[i] - bspl[i]);
            dense.push(Segment {
                t0: t,
                h,
                end: step.y_new,
                rcont: [y, ydiff, bspl, r4, step.dense5],
            });

            t = if last { opts.t_max } else { t + h };
            y = step.y_new;
            k1 = step.k7;
            h = h_new;

            if y.iter().any(|&v| v < floor) {
                break singular_at(t, &y, &y0, floor, ceil, StopCause::Floor);
            }
            if y.iter().any(|&v| v > ceil) {
                break singular_at(t, &y, &y0, floor, ceil, StopCause::Ceiling);
            }
        } else {
            stats.rejected += 1;
            h /= (fac11 / SAFETY).min(1.0 / FAC_MIN);
            last_rejected = true;
        }
    };

    let t_end = t;
    let h_last = dense.last().map_or(t_end, |s| s.h);
    let singular = matches!(termination, Termination::SingularTime { .. });
    let mut traj = Trajectory {
        geometry: geom,
        spec,
        initial: m0,
        times: Vec::new(),
        states: Vec::new(),
        termination,
        stats,
        dense,
    };
    if t_end == 0.0 {
        traj.times.push(0.0);
        traj.states.push(m0);
        return Ok(traj);
    }
    for s in sample_grid(t_end, opts.samples, singular, tau, h_last) {
        let m = if s == 0.0 {
            m0
        } else {
            dense_eval(&traj.dense, s)
        };
        traj.times.push(s);
        traj.states.push(m);
    }
    Ok(traj)
}

fn singular_at(
    t: f64,
    y: &[f64; 3],
    y0: &[f64; 3],
    floor: f64,
    ceil: f64,
    cause: StopCause,
) -> Termination {
    let vanishing = Axis::ALL
        .into_iter()
        .filter(|a| {
            let i = a.index();
            y[i] < floor || y[i] < BAND_LO * y0[i]
        })
        .collect();
    let exploding = Axis::ALL
        .into_iter()
        .filter(|a| {
            let i = a.index();
            y[i] > ceil || y[i] > BAND_HI * y0[i]
        })
        .collect();
    Termination::SingularTime {
        t_stop: t,
        vanishing,
        exploding,
        cause,
    }
}

struct StepOutput {
    y_new: [f64; 3],
    k7: [f64; 3],
    err: [f64; 3],
    dense5: [f64; 3],
}

struct Trial {
    result: Option<StepOutput>,
    evals: usize,
}

fn dp_step(geom: GeometryClass, spec: FlowSpec, y: &[f64; 3], k1: &[f64; 3], h: f64) -> Trial {
    let mut evals = 0;
    let mut eval = |s: [f64; 3]| {
        evals += 1;
        rhs(geom, spec, &s)
    };
    let result = (|| {
        let k2 = eval(axpy(y, h, &[(A21, k1)]))?;
        let k3 = eval(axpy(y, h, &[(A31, k1), (A32, &k2)]))?;
        let k4 = eval(axpy(y, h, &[(A41, k1), (A42, &k2), (A43, &k3)]))?;
        let k5 = eval(axpy(y, h, &[(A51, k1), (A52, &k2), (A53, &k3), (A54, &k4)]))?;
        let k6 = eval(axpy(
            y,
            h,
            &[(A61, k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
        ))?;
        let y_new = axpy(
            y,
            h,
            &[(A71, k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)],
        );
        let k7 = eval(y_new)?;
        let err = axpy(
            &[0.0; 3],
            h,
            &[
                (E1, k1),
                (E3, &k3),
                (E4, &k4),
                (E5, &k5),
                (E6, &k6),
                (E7, &k7),
            ],
        );
        let dense5 = axpy(
            &[0.0; 3],
            h,
            &[
                (D1, k1),
                (D3, &k3),
                (D4, &k4),
                (D5, &k5),
                (D6, &k6),
                (D7, &k7),
            ],
        );
        Some(StepOutput {
            y_new,
            k7,
            err,
            dense5,
        })
    })();
    Trial { result, evals }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: f64, b: f64, c: f64) -> MetricDiag {
        MetricDiag::new(a, b, c).unwrap()
    }

    #[test]
    fn tableau_rows_sum_to_abscissae() {
        assert!((A21 - C2).abs() < 1e-15);
        assert!((A31 + A32 - C3).abs() < 1e-15);
        assert!((A41 + A42 + A43 - C4).abs() < 1e-15);
        assert!((A51 + A52 + A53 + A54 - C5).abs() < 1e-14);
        assert!((A61 + A62 + A63 + A64 + A65 - 1.0).abs() < 1e-14);
        assert!((A71 + A73 + A74 + A75 + A76 - 1.0).abs() < 1e-15);
        assert!((E1 + E3 + E4 + E5 + E6 + E7).abs() < 1e-16);
    }

    #[test]
    fn fifth_order_on_scalar_decay() {
        // Round SU(2): s' = -2/s, s^2 = 4 - 4t. Fixed steps through the raw
        // stepper at two step sizes.
        let geom = GeometryClass::Su2;
        let y0 = [2.0, 2.0, 2.0];
        let exact = |t: f64| (4.0 - 4.0 * t).sqrt();
        let run = |n: usize| {
            let h = 0.5 / n as f64;
            let mut y = y0;
            let mut k1 = rhs(geom, FlowSpec::NEGATIVE, &y).unwrap();
            for _ in 0..n {
                let s = dp_step(geom, FlowSpec::NEGATIVE, &y, &k1, h)
                    .result
                    .unwrap();
                y = s.y_new;
                k1 = s.k7;
            }
            (y[0] - exact(0.5)).abs()
        };
        let (e1, e2) = (run(10), run(20));
        let order = (e1 / e2).log2();
        assert!(order > 4.7, "observed order {order}");
    }

    #[test]
    fn options_validation() {
        assert!(IntegratorOptions::new(1.0).validate().is_ok());
        assert!(IntegratorOptions::new(-1.0).validate().is_err());
        assert!(IntegratorOptions::new(1.0)
            .with_tolerances(0.0, 1e-12)
            .validate()
            .is_err());
        let mut o = IntegratorOptions::new(1.0);
        o.floor_factor = 2.0;
        assert!(o.validate().is_err());
    }

    #[test]
    fn stationary_run_is_exact() {
        let traj = integrate(
            GeometryClass::E2,
            FlowSpec::NEGATIVE,
            m(3.0, 3.0, 1.0),
            &IntegratorOptions::new(100.0),
        )
        .unwrap();
        assert_eq!(traj.termination, Termination::ReachedTMax);
        assert!(traj.states.iter().all(|s| s.to_array() == [3.0, 3.0, 1.0]));
        assert_eq!(traj.t_end(), 100.0);
    }

    #[test]
    fn times_increase_and_states_positive() {
        let traj = integrate(
            GeometryClass::Sol,
            FlowSpec::NEGATIVE,
            m(2.0, 4.0, 1.0),
            &IntegratorOptions::new(10.0),
        )
        .unwrap();
        assert!(traj.is_singular());
        assert_eq!(traj.times[0], 0.0);
        assert!(traj.times.windows(2).all(|w| w[1] > w[0]));
        assert!(traj.states.iter().all(|s| s.min_component() > 0.0));
    }

    #[test]
    fn sample_at_bounds() {
        let m0 = m(1.0, 1.0, 1.0);
        let traj = integrate(
            GeometryClass::Heisenberg,
            FlowSpec::NEGATIVE,
            m0,
            &IntegratorOptions::new(1.0),
        )
        .unwrap();
        assert_eq!(traj.sample_at(0.0).unwrap(), m0);
        assert!(traj.sample_at(-1e-9).is_err());
        assert!(traj.sample_at(1.5).is_err());
    }

    #[test]
    fn budget_is_reported() {
        let opts = IntegratorOptions::new(1e6).with_max_steps(5);
        let traj = integrate(
            GeometryClass::Heisenberg,
            FlowSpec::NEGATIVE,
            m(1.0, 1.0, 1.0),
            &opts,
        )
        .unwrap();
        assert!(matches!(
            traj.termination,
            Termination::StepBudgetExhausted { .. }
        ));
    }

    #[test]
    fn grid_shapes() {
        let g = sample_grid(1.0, 100, true, f64::INFINITY, 1e-12);
        assert_eq!(g[0], 0.0);
        assert_eq!(*g.last().unwrap(), 1.0);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        assert!(g.iter().filter(|&&t| 1.0 - t < 1e-6).count() > 20);
        let g = sample_grid(1e6, 100, false, 0.5, 1.0);
        assert!(g.iter().filter(|&&t| t < 10.0).count() > 8);
    }
}
