//! Post-processing of trajectories: singular-time estimation, power-law
//! fits, limit extraction and verification reports against the catalogs in
//! [`crate::analytic`].

use serde::{Deserialize, Serialize};

use crate::analytic::{
    classify_branch, conserved_quantities, expected_asymptotics, heisenberg_exact,
    monotone_quantities, sol_symmetric_blowup, sol_symmetric_exact, su2_round_blowup,
    su2_round_exact, AsymptoticLaw, Branch, Clause, Coefficient, LawRegime, MonotoneQuantity,
    Trend, Variable,
};
use crate::error::{FlowError, Result};
use crate::flows::FlowSpec;
use crate::geometry::{sl2r_f, Axis, GeometryClass, MetricDiag};
use crate::integrator::{Termination, Trajectory};

/// Fewest samples accepted in a power-law window.
pub const MIN_FIT_SAMPLES: usize = 32;
/// Inner edge of the blow-up window as a fraction of `T0`.
pub const BLOWUP_WINDOW_FLOOR: f64 = 1e-5;
/// Inner edge of the singular-time regression window as a fraction of `T0`.
pub const T0_WINDOW_FLOOR: f64 = 1e-6;
/// Distance from the stop event, in units of the last sample gap, kept out
/// of every window.
pub const STOP_GUARD: f64 = 100.0;
/// Per-sample relative slack for monotonicity checks.
pub const MONOTONE_SLACK: f64 = 1e-9;
pub const CONSERVED_TOL: f64 = 1e-9;
pub const CLOSED_FORM_TOL: f64 = 1e-8;
pub const BLOWUP_TIME_TOL: f64 = 1e-5;
pub const SYMMETRY_TOL: f64 = 1e-9;
pub const QUADRATURE_TOL: f64 = 1e-4;
pub const RATIO_TOL: f64 = 1e-2;
pub const CIGAR_DRIFT_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FitRegime {
    /// Power of `t`, window `[t_end / 10, t_end]`.
    Infinity,
    /// Power of `T0 - t`, window one decade of `T0 - t` away from the stop.
    BlowUp { t0: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub exponent: f64,
    pub coefficient: f64,
    pub r2: f64,
    pub window: (f64, f64),
    pub samples: usize,
}

/// Least squares `y = a + b x`, returning `(a, b, r²)`.
fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (xi, yi) in x.iter().zip(y) {
        let (dx, dy) = (xi - mx, yi - my);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    let b = sxy / sxx;
    let a = my - b * mx;
    let r2 = if syy == 0.0 {
        1.0
    } else {
        (b * sxy / syy).clamp(0.0, 1.0)
    };
    (a, b, r2)
}

/// Indices of samples inside the fit window for `regime`.
fn window_indices(times: &[f64], regime: FitRegime) -> (Vec<usize>, (f64, f64)) {
    let t_last = *times.last().unwrap_or(&0.0);
    let (lo, hi) = match regime {
        FitRegime::Infinity => (t_last / 10.0, t_last),
        FitRegime::BlowUp { t0 } => {
            let gap = if times.len() >= 2 {
                t_last - times[times.len() - 2]
            } else {
                0.0
            };
            let guard = (t0 - t_last).max(0.0).max(gap);
            let d_lo = (BLOWUP_WINDOW_FLOOR * t0).max(STOP_GUARD * guard);
            ((t0 - 10.0 * d_lo).max(0.0), t0 - d_lo)
        }
    };
    let idx = (0..times.len())
        .filter(|&i| times[i] >= lo && times[i] <= hi)
        .collect();
    (idx, (lo, hi))
}

/// Power-law fit of an arbitrary sampled series.
pub fn fit_power_law_series(
    times: &[f64],
    values: &[f64],
    regime: FitRegime,
) -> Result<PowerLawFit> {
    let (idx, window) = window_indices(times, regime);
    if idx.len() < MIN_FIT_SAMPLES {
        return Err(FlowError::InsufficientSamples {
            found: idx.len(),
            needed: MIN_FIT_SAMPLES,
        });
    }
    let mut x = Vec::with_capacity(idx.len());
    let mut y = Vec::with_capacity(idx.len());
    for &i in &idx {
        let (t, v) = (times[i], values[i]);
        if !(v > 0.0) {
            return Err(FlowError::NonPositive { t, value: v });
        }
        let s = match regime {
            FitRegime::Infinity => t,
            FitRegime::BlowUp { t0 } => t0 - t,
        };
        x.push(s.ln());
        y.push(v.ln());
    }
    let (a, b, r2) = linear_fit(&x, &y);
    Ok(PowerLawFit {
        exponent: b,
        coefficient: a.exp(),
        r2,
        window,
        samples: idx.len(),
    })
}

fn series(traj: &Trajectory, variable: Variable) -> Vec<f64> {
    traj.states.iter().map(|m| variable.eval(m)).collect()
}

/// Fits `variable ~ c t^p` or `c (T0 - t)^p` on the regime's window.
pub fn fit_power_law(
    traj: &Trajectory,
    variable: Variable,
    regime: FitRegime,
) -> Result<PowerLawFit> {
    fit_power_law_series(&traj.times, &series(traj, variable), regime)
}

/// Root of a linear fit of `v` against `t` over one decade of `t_ref - t`.
fn linear_root(times: &[f64], v: &[f64], t_ref: f64) -> Result<f64> {
    let n = times.len();
    let t_last = times[n - 1];
    let gap = t_last - times[n - 2];
    let d_lo = (T0_WINDOW_FLOOR * t_ref).max(STOP_GUARD * gap.max(t_ref - t_last));
    let mut d = Vec::new();
    let mut y = Vec::new();
    for i in 0..n {
        let di = t_ref - times[i];
        if di >= d_lo && di <= 10.0 * d_lo {
            d.push(di);
            y.push(v[i]);
        }
    }
    if d.len() < 4 {
        return Err(FlowError::InsufficientSamples {
            found: d.len(),
            needed: 4,
        });
    }
    // v = a + b d vanishes at d = -a / b, i.e. t = t_ref + a / b.
    let (a, b, _) = linear_fit(&d, &y);
    Ok(t_ref + a / b)
}

/// Estimates the singular time `T0` of a trajectory that stopped singular.
///
/// A vanishing component `V` behaves like `sqrt(T0 - t)`, so `V²` is close
/// to linear in `t` near the end; an exploding one is used through `1 / V²`.
/// The root of a linear fit is refined once after re-centring the window
/// on the first estimate.
pub fn estimate_blowup_time(traj: &Trajectory) -> Result<f64> {
    let Termination::SingularTime {
        vanishing,
        exploding,
        ..
    } = &traj.termination
    else {
        return Err(FlowError::NotSingular);
    };
    if traj.len() < 6 {
        return Err(FlowError::InsufficientSamples {
            found: traj.len(),
            needed: 6,
        });
    }
    let last = traj.final_state();
    let by_value = |axes: &[Axis], smallest: bool| {
        axes.iter().copied().min_by(|x, y| {
            let o = last.get(*x).total_cmp(&last.get(*y));
            if smallest {
                o
            } else {
                o.reverse()
            }
        })
    };
    let (axis, shrinking) = if let Some(x) = by_value(vanishing, true) {
        (x, true)
    } else if let Some(x) = by_value(exploding, false) {
        (x, false)
    } else {
        let x0 = traj.initial;
        let x = Axis::ALL
            .into_iter()
            .max_by(|p, q| {
                let lp = (last.get(*p) / x0.get(*p)).ln().abs();
                let lq = (last.get(*q) / x0.get(*q)).ln().abs();
                lp.total_cmp(&lq)
            })
            .expect("three axes");
        (x, last.get(x) < x0.get(x))
    };
    let v: Vec<f64> = traj
        .states
        .iter()
        .map(|m| {
            let x = m.get(axis);
            if shrinking {
                x * x
            } else {
                1.0 / (x * x)
            }
        })
        .collect();
    let crude = linear_root(&traj.times, &v, traj.t_end())?;
    linear_root(&traj.times, &v, crude.max(traj.t_end()))
}

/// Fits `variable = L + c t^p` on `[t_end / 10, t_end]` for a given `p`.
pub fn estimate_limit_plus_power(
    traj: &Trajectory,
    variable: Variable,
    exponent_hint: f64,
) -> Result<(f64, f64)> {
    limit_plus_power_series(&traj.times, &series(traj, variable), exponent_hint)
}

pub fn limit_plus_power_series(
    times: &[f64],
    values: &[f64],
    exponent_hint: f64,
) -> Result<(f64, f64)> {
    let (idx, _) = window_indices(times, FitRegime::Infinity);
    if idx.len() < MIN_FIT_SAMPLES {
        return Err(FlowError::InsufficientSamples {
            found: idx.len(),
            needed: MIN_FIT_SAMPLES,
        });
    }
    let v: Vec<f64> = idx.iter().map(|&i| values[i]).collect();
    let rising = v[v.len() - 1] >= v[0];
    let broken = v.windows(2).any(|w| {
        let step = if rising { w[0] - w[1] } else { w[1] - w[0] };
        step > MONOTONE_SLACK * w[0].abs().max(w[1].abs())
    });
    if broken {
        return Err(FlowError::NonMonotoneTail);
    }
    let x: Vec<f64> = idx.iter().map(|&i| times[i].powf(exponent_hint)).collect();
    let (l, c, _) = linear_fit(&x, &v);
    Ok((l, c))
}

/// Where a trajectory sits relative to the SL(2,R) region `F1 < 0, F2 < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionCheck {
    pub initially_inside: bool,
    /// First sample time with both `F1` and `F2` negative.
    pub entered_at: Option<f64>,
    /// No later sample leaves the region.
    pub retained: bool,
}

pub fn sl2r_region(traj: &Trajectory) -> RegionCheck {
    let inside: Vec<bool> = traj
        .states
        .iter()
        .map(|m| {
            let f = sl2r_f(m);
            f[0] < 0.0 && f[1] < 0.0
        })
        .collect();
    let first = inside.iter().position(|&b| b);
    RegionCheck {
        initially_inside: inside[0],
        entered_at: first.map(|i| traj.times[i]),
        retained: first.is_some_and(|i| inside[i..].iter().all(|&b| b)),
    }
}

/// First sample time at which `q` is negative.
pub fn first_negative(traj: &Trajectory, q: MonotoneQuantity) -> Option<f64> {
    traj.states
        .iter()
        .zip(&traj.times)
        .find(|(m, _)| q.eval(m) < 0.0)
        .map(|(_, t)| *t)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConservedCheck {
    pub name: String,
    pub initial: f64,
    pub max_rel_drift: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotoneCheck {
    pub name: String,
    pub trend: Trend,
    /// Largest step against the trend, relative to the local magnitude.
    pub max_violation: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawCheck {
    pub law: AsymptoticLaw,
    pub fit: Option<PowerLawFit>,
    pub exponent_tol: f64,
    /// Coefficient the fit is compared with, when one is pinned.
    pub expected_coefficient: Option<f64>,
    pub coefficient_tol: f64,
    /// Extra fitted constants used to build the expected coefficient.
    pub constants: Vec<(String, f64)>,
    pub pass: bool,
    pub note: Option<String>,
}

/// A scalar pass/fail check outside the catalogs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtraCheck {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub geometry: GeometryClass,
    pub flow: FlowSpec,
    pub initial: MetricDiag,
    pub branch: Branch,
    pub termination: Termination,
    pub blowup_time: Option<f64>,
    pub conserved: Vec<ConservedCheck>,
    pub monotone: Vec<MonotoneCheck>,
    pub laws: Vec<LawCheck>,
    pub extras: Vec<ExtraCheck>,
    pub region: Option<RegionCheck>,
    pub pass: bool,
}

impl VerificationReport {
    /// Names of every failing entry.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        out.extend(
            self.conserved
                .iter()
                .filter(|c| !c.pass)
                .map(|c| format!("conserved {}", c.name)),
        );
        out.extend(
            self.monotone
                .iter()
                .filter(|c| !c.pass)
                .map(|c| format!("monotone {}", c.name)),
        );
        out.extend(
            self.laws
                .iter()
                .filter(|c| !c.pass)
                .map(|c| format!("law {} ({})", c.law.variable, c.law.description)),
        );
        out.extend(
            self.extras
                .iter()
                .filter(|c| !c.pass)
                .map(|c| c.name.clone()),
        );
        if self
            .region
            .is_some_and(|r| !(r.entered_at.is_some() && r.retained))
        {
            out.push("sl2r region".to_string());
        }
        out
    }

    pub fn extra(&self, name: &str) -> Option<&ExtraCheck> {
        self.extras.iter().find(|e| e.name == name)
    }

    pub fn law(&self, variable: Variable) -> Option<&LawCheck> {
        self.laws.iter().find(|l| l.law.variable == variable)
    }
}

/// `(exponent, coefficient)` tolerances for a catalog law.
pub fn law_tolerances(law: &AsymptoticLaw) -> (f64, f64) {
    match law.clause {
        Clause::HeisenbergGlobal => (0.005, 0.02),
        Clause::SolCollapse => match law.variable {
            Variable::AMinusC | Variable::CMinusA => (0.05, 0.02),
            _ => (0.02, 0.02),
        },
        Clause::Su2Collapse => (0.02, 0.02),
        Clause::Sl2rPancake => match law.variable {
            Variable::AMinusLimit => (0.0, 0.10),
            _ => (0.01, 0.02),
        },
        Clause::Sl2rCollapse => (0.02, 0.03),
        Clause::E2Cigar => (0.02, 0.05),
    }
}

fn rel(x: f64, y: f64) -> f64 {
    if x == y {
        0.0
    } else {
        (x - y).abs() / y.abs()
    }
}

fn extra(name: &str, value: f64, threshold: f64) -> ExtraCheck {
    ExtraCheck {
        name: name.to_string(),
        value,
        threshold,
        pass: value <= threshold,
    }
}

fn conserved_checks(traj: &Trajectory) -> Vec<ConservedCheck> {
    let initial = conserved_quantities(traj.geometry, traj.spec, &traj.initial);
    initial
        .into_iter()
        .enumerate()
        .map(|(k, (name, q0))| {
            let drift = traj
                .states
                .iter()
                .map(|m| rel(conserved_quantities(traj.geometry, traj.spec, m)[k].1, q0))
                .fold(0.0, f64::max);
            ConservedCheck {
                name,
                initial: q0,
                max_rel_drift: drift,
                pass: drift <= CONSERVED_TOL,
            }
        })
        .collect()
}

/// Size against which rounding in `q` is judged. A gap that closes up is
/// compared with its larger term, since its own value carries no digits.
fn magnitude(q: MonotoneQuantity, m: &MetricDiag) -> f64 {
    match q {
        MonotoneQuantity::Gap { hi, lo, weight } => m.get(hi).max(weight * m.get(lo)),
        _ => q.eval(m).abs(),
    }
}

fn monotone_checks(traj: &Trajectory) -> Vec<MonotoneCheck> {
    monotone_quantities(traj.geometry, &traj.initial)
        .into_iter()
        .map(|(q, trend)| {
            let v: Vec<(f64, f64)> = traj
                .states
                .iter()
                .map(|m| (q.eval(m), magnitude(q, m)))
                .collect();
            let worst = v
                .windows(2)
                .map(|w| {
                    let against = match trend {
                        Trend::Increasing => w[0].0 - w[1].0,
                        Trend::Decreasing => w[1].0 - w[0].0,
                    };
                    if against <= 0.0 {
                        0.0
                    } else {
                        against / w[0].1.max(w[1].1)
                    }
                })
                .fold(0.0, f64::max);
            MonotoneCheck {
                name: q.to_string(),
                trend,
                max_violation: worst,
                pass: worst <= MONOTONE_SLACK,
            }
        })
        .collect()
}

/// Fitted constants shared between laws of one run.
struct Context<'a> {
    traj: &'a Trajectory,
    t0: Option<Result<f64>>,
    a_limit: Option<Result<(f64, f64)>>,
}

impl Context<'_> {
    fn t0(&mut self) -> Result<f64> {
        let traj = self.traj;
        self.t0
            .get_or_insert_with(|| estimate_blowup_time(traj))
            .clone()
    }

    fn a_limit(&mut self) -> Result<(f64, f64)> {
        let traj = self.traj;
        self.a_limit
            .get_or_insert_with(|| estimate_limit_plus_power(traj, Variable::A, -1.0 / 3.0))
            .clone()
    }

    fn regime(&mut self, law: &AsymptoticLaw) -> Result<FitRegime> {
        Ok(match law.regime {
            LawRegime::Infinity => FitRegime::Infinity,
            LawRegime::BlowUp => FitRegime::BlowUp { t0: self.t0()? },
        })
    }

    /// `(E1, E2)` with `A + B -> 2 E1` and `A - B ~ 2 E2 t^(-1/6)`.
    fn cigar_constants(&mut self) -> Result<(f64, f64)> {
        let a0 = self.traj.initial;
        let gap = if a0.a() > a0.b() {
            Variable::AMinusB
        } else {
            Variable::BMinusA
        };
        let (sum, _) = estimate_limit_plus_power(self.traj, Variable::APlusB, -1.0 / 3.0)?;
        let fit = fit_power_law(self.traj, gap, FitRegime::Infinity)?;
        Ok((sum / 2.0, fit.coefficient / 2.0))
    }
}

fn check_law(ctx: &mut Context<'_>, law: AsymptoticLaw) -> LawCheck {
    let (exponent_tol, coefficient_tol) = law_tolerances(&law);
    let mut check = LawCheck {
        law,
        fit: None,
        exponent_tol,
        expected_coefficient: None,
        coefficient_tol,
        constants: Vec::new(),
        pass: false,
        note: None,
    };
    let outcome = (|| -> Result<()> {
        let law = &check.law;
        if law.variable == Variable::AMinusLimit {
            // The exponent enters as the fitting hint; only the coefficient
            // relation is tested.
            let (limit, c) = ctx.a_limit()?;
            let ratio = c / limit.powf(5.0 / 3.0);
            let want = 1.0 / (8.0 * 3f64.cbrt());
            check.constants = vec![
                ("A_inf".into(), limit),
                ("c".into(), c),
                ("c/A_inf^(5/3)".into(), ratio),
            ];
            check.expected_coefficient = Some(want);
            check.pass = limit > 0.0 && rel(ratio, want) <= coefficient_tol;
            return Ok(());
        }
        let regime = ctx.regime(law)?;
        let fit = fit_power_law(ctx.traj, law.variable, regime)?;
        check.fit = Some(fit);
        let expected = match law.coefficient {
            Coefficient::Known(c) => Some(c),
            Coefficient::Fitted => None,
            Coefficient::CubeRootOfLimit => {
                let (limit, _) = ctx.a_limit()?;
                check.constants.push(("A_inf".into(), limit));
                Some((24.0 * limit).cbrt())
            }
            Coefficient::LimitCorrection => None,
            Coefficient::CigarRatio => {
                let (e1, e2) = ctx.cigar_constants()?;
                check.constants = vec![("E1".into(), e1), ("E2".into(), e2)];
                Some(8.0 * e2 / e1 * 6f64.sqrt())
            }
        };
        check.expected_coefficient = expected;
        let exp_ok = (fit.exponent - law.exponent.value()).abs() <= exponent_tol;
        let coef_ok = expected.is_none_or(|c| rel(fit.coefficient, c) <= coefficient_tol);
        check.pass = exp_ok && coef_ok;
        Ok(())
    })();
    if let Err(e) = outcome {
        check.pass = false;
        check.note = Some(e.to_string());
    }
    check
}

/// Maximum componentwise relative deviation from `exact` over samples with
/// `t <= t_cut`.
fn closed_form_dev(
    traj: &Trajectory,
    t_cut: f64,
    exact: impl Fn(f64) -> Result<MetricDiag>,
) -> f64 {
    let mut dev: f64 = 0.0;
    for (t, m) in traj.times.iter().zip(&traj.states) {
        if *t > t_cut {
            break;
        }
        match exact(*t) {
            Ok(e) => {
                for (x, y) in m.to_array().iter().zip(e.to_array()) {
                    dev = dev.max(rel(*x, y));
                }
            }
            Err(_) => return f64::INFINITY,
        }
    }
    dev
}

fn value_at(traj: &Trajectory, t: f64) -> MetricDiag {
    let i = traj.times.partition_point(|&s| s < t).min(traj.len() - 1);
    traj.states[i]
}

fn branch_extras(traj: &Trajectory, branch: Branch, t0: Option<f64>, out: &mut Vec<ExtraCheck>) {
    let m0 = traj.initial;
    let (a0, b0, c0) = (m0.a(), m0.b(), m0.c());
    let fit_end = |t0: f64| {
        window_indices(&traj.times, FitRegime::BlowUp { t0 })
            .0
            .last()
            .map(|&i| traj.states[i])
    };
    match branch {
        Branch::HeisenbergGlobal => {
            let dev = closed_form_dev(traj, f64::INFINITY, |t| heisenberg_exact(&m0, t));
            out.push(extra("closed form deviation", dev, CLOSED_FORM_TOL));
        }
        Branch::SolSymmetric => {
            let t_exact = sol_symmetric_blowup(b0);
            let dev = closed_form_dev(traj, 0.99 * t_exact, |t| sol_symmetric_exact(a0, b0, t));
            out.push(extra("closed form deviation", dev, CLOSED_FORM_TOL));
            out.push(extra(
                "blow-up time error",
                t0.map_or(f64::INFINITY, |t| rel(t, t_exact)),
                BLOWUP_TIME_TOL,
            ));
            let sym = traj
                .states
                .iter()
                .map(|m| rel(m.c(), m.a()))
                .fold(0.0, f64::max);
            out.push(extra("A=C symmetry", sym, SYMMETRY_TOL));
        }
        Branch::SolGeneric => {
            let (hi, lo) = if a0 > c0 {
                (Axis::A, Axis::C)
            } else {
                (Axis::C, Axis::A)
            };
            let q = MonotoneQuantity::Gap {
                hi,
                lo,
                weight: 3.0,
            };
            // 0 when the sign change happened before the stop, 1 otherwise.
            let missed = if first_negative(traj, q).is_some() && traj.is_singular() {
                0.0
            } else {
                1.0
            };
            out.push(extra(&format!("{q} sign change"), missed, 0.0));
        }
        Branch::Su2Round => {
            let t_exact = su2_round_blowup(a0);
            let dev = closed_form_dev(traj, 0.99 * t_exact, |t| su2_round_exact(a0, t));
            out.push(extra("closed form deviation", dev, CLOSED_FORM_TOL));
            out.push(extra(
                "blow-up time error",
                t0.map_or(f64::INFINITY, |t| rel(t, t_exact)),
                BLOWUP_TIME_TOL,
            ));
        }
        Branch::Su2Generic => {
            let spread = t0.and_then(fit_end).map_or(f64::INFINITY, |m| {
                m.max_component() / m.min_component() - 1.0
            });
            out.push(extra("max/min ratio at window end", spread, RATIO_TOL));
        }
        Branch::Sl2rSymmetric => {
            let sym = traj
                .states
                .iter()
                .map(|m| rel(m.c(), m.b()))
                .fold(0.0, f64::max);
            out.push(extra("B=C symmetry", sym, SYMMETRY_TOL));
            // d(A⁹B³)/dt = 24 A¹⁰ on the symmetric branch.
            let mut integral = a0.powi(9) * b0.powi(3);
            let mut worst: f64 = 0.0;
            for k in 1..traj.len() {
                let (p, q) = (traj.states[k - 1], traj.states[k]);
                let dt = traj.times[k] - traj.times[k - 1];
                integral += 0.5 * dt * 24.0 * (p.a().powi(10) + q.a().powi(10));
                worst = worst.max(rel(q.a().powi(9) * q.b().powi(3), integral));
            }
            out.push(extra("A^9B^3 quadrature", worst, QUADRATURE_TOL));
        }
        Branch::Sl2rGeneric => {
            let big = if b0 > c0 { Axis::B } else { Axis::C };
            let spread = t0
                .and_then(fit_end)
                .map_or(f64::INFINITY, |m| rel(m.a() / m.get(big), 1.0));
            out.push(extra(&format!("A/{big} at window end"), spread, RATIO_TOL));
        }
        Branch::E2Generic => {
            let q = |m: &MetricDiag| (m.a() - m.b()).powi(2) * m.c();
            let end = traj.final_state();
            let start = value_at(traj, traj.t_end() / 10.0);
            out.push(extra(
                "(A-B)^2C change over last decade",
                rel(q(&start), q(&end)),
                CIGAR_DRIFT_TOL,
            ));
        }
        Branch::E2Flat | Branch::Trivial => {
            let moved = traj
                .states
                .iter()
                .map(|m| if *m == m0 { 0.0 } else { 1.0 })
                .fold(0.0, f64::max);
            out.push(extra("stationary", moved, 0.0));
        }
    }
}

/// Checks a trajectory against every catalog entry that applies to it.
///
/// Catalog laws and monotone quantities are only stated for `-XCF`; other
/// flows get the conserved-quantity checks alone.
pub fn verify(traj: &Trajectory) -> VerificationReport {
    let branch = classify_branch(traj.geometry, &traj.initial);
    let blowup_time = estimate_blowup_time(traj).ok();
    let conserved = conserved_checks(traj);
    let negative = traj.spec == FlowSpec::NEGATIVE;
    let mut monotone = Vec::new();
    let mut laws = Vec::new();
    let mut extras = Vec::new();
    let mut region = None;
    if negative {
        monotone = monotone_checks(traj);
        let mut ctx = Context {
            traj,
            t0: blowup_time.map(Ok),
            a_limit: None,
        };
        laws = expected_asymptotics(traj.geometry, traj.spec, &traj.initial)
            .unwrap_or_default()
            .into_iter()
            .map(|law| check_law(&mut ctx, law))
            .collect();
        branch_extras(traj, branch, blowup_time, &mut extras);
        if branch == Branch::Sl2rGeneric {
            region = Some(sl2r_region(traj));
        }
    }
    let mut report = VerificationReport {
        geometry: traj.geometry,
        flow: traj.spec,
        initial: traj.initial,
        branch,
        termination: traj.termination.clone(),
        blowup_time,
        conserved,
        monotone,
        laws,
        extras,
        region,
        pass: false,
    };
    report.pass = report.failures().is_empty();
    report
}
