//! Closed-form solutions and the catalogs of exact laws.
//!
//! Three families have explicit solutions under `-XCF`: every Heisenberg
//! metric, the `A = C` Sol metrics and the round SU(2) metrics. For the
//! remaining branches the catalogs list what is known qualitatively:
//! first integrals, monotone combinations and the leading-order power laws
//! at the end of the flow.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{FlowError, Result};
use crate::flows::FlowSpec;
use crate::geometry::{Axis, GeometryClass, MetricDiag};

/// Heisenberg `-XCF` solution from `m0` at time `t`.
///
/// With `R0 = -2 A0 / (B0 C0)` and `q = 1 + 7 R0² t`:
/// `A = A0 q^(-1/14)`, `B = B0 q^(3/14)`, `C = C0 q^(3/14)`.
pub fn heisenberg_exact(m0: &MetricDiag, t: f64) -> Result<MetricDiag> {
    if !(t >= 0.0) {
        return Err(FlowError::OutOfRange {
            t,
            t_end: f64::INFINITY,
        });
    }
    let r0 = -2.0 * m0.a() / (m0.b() * m0.c());
    let q = 1.0 + 7.0 * r0 * r0 * t;
    let grow = q.powf(3.0 / 14.0);
    MetricDiag::new(m0.a() * q.powf(-1.0 / 14.0), m0.b() * grow, m0.c() * grow)
}

/// Singular time `B0² / 64` of the symmetric Sol solution.
pub fn sol_symmetric_blowup(b0: f64) -> f64 {
    b0 * b0 / 64.0
}

/// Sol `-XCF` solution with `A0 = C0`: `B = sqrt(B0² - 64t)`, `A = C = A0 B0 / B`.
pub fn sol_symmetric_exact(a0: f64, b0: f64, t: f64) -> Result<MetricDiag> {
    let t0 = sol_symmetric_blowup(b0);
    if !(t >= 0.0) {
        return Err(FlowError::OutOfRange { t, t_end: t0 });
    }
    if t >= t0 {
        return Err(FlowError::SingularTime { t, t0 });
    }
    let b = (b0 * b0 - 64.0 * t).sqrt();
    let a = a0 * b0 / b;
    MetricDiag::new(a, b, a)
}

/// Singular time `s0² / 4` of the round SU(2) solution.
pub fn su2_round_blowup(s0: f64) -> f64 {
    s0 * s0 / 4.0
}

/// Round SU(2) `-XCF` solution: `A = B = C = s` with `s' = -2/s`, so
/// `s = sqrt(s0² - 4t)`.
pub fn su2_round_exact(s0: f64, t: f64) -> Result<MetricDiag> {
    let t0 = su2_round_blowup(s0);
    if !(t >= 0.0) {
        return Err(FlowError::OutOfRange { t, t_end: t0 });
    }
    if t >= t0 {
        return Err(FlowError::SingularTime { t, t0 });
    }
    let s = (s0 * s0 - 4.0 * t).sqrt();
    MetricDiag::new(s, s, s)
}

/// Qualitative branch of the initial data, decided by exact equalities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    HeisenbergGlobal,
    SolSymmetric,
    SolGeneric,
    Su2Round,
    Su2Generic,
    Sl2rSymmetric,
    Sl2rGeneric,
    E2Flat,
    E2Generic,
    Trivial,
}

pub fn classify_branch(geom: GeometryClass, m0: &MetricDiag) -> Branch {
    let (a, b, c) = (m0.a(), m0.b(), m0.c());
    match geom {
        GeometryClass::Heisenberg => Branch::HeisenbergGlobal,
        GeometryClass::Sol if a == c => Branch::SolSymmetric,
        GeometryClass::Sol => Branch::SolGeneric,
        GeometryClass::Su2 if a == b && b == c => Branch::Su2Round,
        GeometryClass::Su2 => Branch::Su2Generic,
        GeometryClass::Sl2r if b == c => Branch::Sl2rSymmetric,
        GeometryClass::Sl2r => Branch::Sl2rGeneric,
        GeometryClass::E2 if a == b => Branch::E2Flat,
        GeometryClass::E2 => Branch::E2Generic,
        GeometryClass::Trivial => Branch::Trivial,
    }
}

/// First integrals of the flow at `m`.
///
/// Heisenberg `-XCF` keeps `A³B`, `A³C` and `B/C`; every normalized flow
/// keeps the volume `ABC`.
pub fn conserved_quantities(
    geom: GeometryClass,
    spec: FlowSpec,
    m: &MetricDiag,
) -> Vec<(String, f64)> {
    let (a, b, c) = (m.a(), m.b(), m.c());
    if spec.normalized {
        return vec![("ABC".to_string(), m.volume())];
    }
    if geom == GeometryClass::Heisenberg && spec == FlowSpec::NEGATIVE {
        return vec![
            ("A³B".to_string(), a.powi(3) * b),
            ("A³C".to_string(), a.powi(3) * c),
            ("B/C".to_string(), b / c),
        ];
    }
    Vec::new()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    Increasing,
    Decreasing,
}

/// Scalar combinations of `(A, B, C)` with a known monotone trend.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MonotoneQuantity {
    Coord(Axis),
    /// `X_hi - weight * X_lo`.
    Gap {
        hi: Axis,
        lo: Axis,
        weight: f64,
    },
    Ratio(Axis, Axis),
    /// `w1 / X1 + w2 / X2`.
    InverseSum {
        first: (Axis, f64),
        second: (Axis, f64),
    },
    /// `(X_a - X_b)² X_c`.
    SquaredGapTimes {
        a: Axis,
        b: Axis,
        c: Axis,
    },
}

impl MonotoneQuantity {
    pub fn eval(&self, m: &MetricDiag) -> f64 {
        match *self {
            MonotoneQuantity::Coord(x) => m.get(x),
            MonotoneQuantity::Gap { hi, lo, weight } => m.get(hi) - weight * m.get(lo),
            MonotoneQuantity::Ratio(x, y) => m.get(x) / m.get(y),
            MonotoneQuantity::InverseSum { first, second } => {
                first.1 / m.get(first.0) + second.1 / m.get(second.0)
            }
            MonotoneQuantity::SquaredGapTimes { a, b, c } => {
                (m.get(a) - m.get(b)).powi(2) * m.get(c)
            }
        }
    }
}

fn coef(w: f64) -> String {
    if w == 1.0 {
        String::new()
    } else {
        format!("{w}")
    }
}

impl fmt::Display for MonotoneQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MonotoneQuantity::Coord(x) => write!(f, "{x}"),
            MonotoneQuantity::Gap { hi, lo, weight } => write!(f, "{hi}-{}{lo}", coef(weight)),
            MonotoneQuantity::Ratio(x, y) => write!(f, "{x}/{y}"),
            MonotoneQuantity::InverseSum { first, second } => {
                write!(f, "{}/{}+{}/{}", first.1, first.0, second.1, second.0)
            }
            MonotoneQuantity::SquaredGapTimes { a, b, c } => write!(f, "({a}-{b})^2{c}"),
        }
    }
}

/// Monotone combinations under `-XCF` that apply to the initial data `m0`.
/// Empty when the data sits on a fixed point or no ordering hypothesis holds.
pub fn monotone_quantities(geom: GeometryClass, m0: &MetricDiag) -> Vec<(MonotoneQuantity, Trend)> {
    use MonotoneQuantity::*;
    use Trend::*;
    let (a, b, c) = (m0.a(), m0.b(), m0.c());
    match geom {
        GeometryClass::Heisenberg => {
            vec![
                (Coord(Axis::A), Decreasing),
                (Coord(Axis::B), Increasing),
                (Coord(Axis::C), Increasing),
            ]
        }
        GeometryClass::Sol if a == c => Vec::new(),
        GeometryClass::Sol => {
            let (hi, lo) = if a > c {
                (Axis::A, Axis::C)
            } else {
                (Axis::C, Axis::A)
            };
            vec![
                (
                    Gap {
                        hi,
                        lo,
                        weight: 1.0,
                    },
                    Decreasing,
                ),
                (Ratio(hi, lo), Decreasing),
                (
                    Gap {
                        hi,
                        lo,
                        weight: 3.0,
                    },
                    Decreasing,
                ),
                (Coord(lo), Increasing),
            ]
        }
        GeometryClass::Su2 => {
            let mut order = Axis::ALL;
            order.sort_by(|x, y| m0.get(*y).total_cmp(&m0.get(*x)));
            let [p, q, r] = order;
            vec![
                (
                    Gap {
                        hi: p,
                        lo: q,
                        weight: 1.0,
                    },
                    Decreasing,
                ),
                (
                    Gap {
                        hi: p,
                        lo: r,
                        weight: 1.0,
                    },
                    Decreasing,
                ),
                (Ratio(p, q), Decreasing),
                (Ratio(p, r), Decreasing),
            ]
        }
        GeometryClass::Sl2r if b == c => vec![
            (
                InverseSum {
                    first: (Axis::A, 4.0),
                    second: (Axis::B, 1.0),
                },
                Decreasing,
            ),
            (Coord(Axis::A), Decreasing),
            (Coord(Axis::B), Increasing),
        ],
        GeometryClass::Sl2r => Vec::new(),
        GeometryClass::E2 if a == b => Vec::new(),
        GeometryClass::E2 => {
            let (hi, lo) = if a > b {
                (Axis::A, Axis::B)
            } else {
                (Axis::B, Axis::A)
            };
            vec![
                (
                    SquaredGapTimes {
                        a: hi,
                        b: lo,
                        c: Axis::C,
                    },
                    Increasing,
                ),
                (Coord(Axis::C), Increasing),
                (
                    Gap {
                        hi,
                        lo,
                        weight: 1.0,
                    },
                    Decreasing,
                ),
            ]
        }
        GeometryClass::Trivial => Vec::new(),
    }
}

/// Quantity followed by an asymptotic law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variable {
    A,
    B,
    C,
    AMinusB,
    AMinusC,
    APlusB,
    BMinusA,
    CMinusA,
    /// `A - A∞`, with the limit fitted from the same trajectory.
    AMinusLimit,
}

impl Variable {
    /// Value at `m`; for [`Variable::AMinusLimit`] this is `A` itself.
    pub fn eval(self, m: &MetricDiag) -> f64 {
        let (a, b, c) = (m.a(), m.b(), m.c());
        match self {
            Variable::A | Variable::AMinusLimit => a,
            Variable::B => b,
            Variable::C => c,
            Variable::AMinusB => a - b,
            Variable::AMinusC => a - c,
            Variable::APlusB => a + b,
            Variable::BMinusA => b - a,
            Variable::CMinusA => c - a,
        }
    }

    pub fn axis(axis: Axis) -> Variable {
        match axis {
            Axis::A => Variable::A,
            Axis::B => Variable::B,
            Axis::C => Variable::C,
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variable::A => "A",
            Variable::B => "B",
            Variable::C => "C",
            Variable::AMinusB => "A-B",
            Variable::AMinusC => "A-C",
            Variable::APlusB => "A+B",
            Variable::BMinusA => "B-A",
            Variable::CMinusA => "C-A",
            Variable::AMinusLimit => "A-A_inf",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LawRegime {
    /// `t -> ∞`, power of `t`.
    Infinity,
    /// `t -> T0⁻`, power of `T0 - t`.
    BlowUp,
}

/// Rational exponent `num / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Exponent {
    pub num: i32,
    pub den: i32,
}

impl Exponent {
    pub const fn new(num: i32, den: i32) -> Self {
        Exponent { num, den }
    }

    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Leading coefficient of a law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coefficient {
    Known(f64),
    /// A constant with no closed form; only the exponent is pinned.
    Fitted,
    /// `(24 A∞)^(1/3)` with `A∞` the fitted limit of `A`.
    CubeRootOfLimit,
    /// `A∞^(5/3) / (8 · 3^(1/3))`.
    LimitCorrection,
    /// `(8 E2 / E1) √6` with `A ± B ~ 2E1, 2E2 t^(-1/6)`.
    CigarRatio,
}

/// Which closed statement a law belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    HeisenbergGlobal,
    SolCollapse,
    Su2Collapse,
    Sl2rPancake,
    Sl2rCollapse,
    E2Cigar,
}

impl Clause {
    pub const ALL: [Clause; 6] = [
        Clause::HeisenbergGlobal,
        Clause::SolCollapse,
        Clause::Su2Collapse,
        Clause::Sl2rPancake,
        Clause::Sl2rCollapse,
        Clause::E2Cigar,
    ];
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticLaw {
    pub variable: Variable,
    pub regime: LawRegime,
    pub exponent: Exponent,
    pub coefficient: Coefficient,
    pub clause: Clause,
    pub description: String,
}

impl AsymptoticLaw {
    fn new(
        clause: Clause,
        variable: Variable,
        regime: LawRegime,
        exponent: Exponent,
        coefficient: Coefficient,
        description: &str,
    ) -> Self {
        AsymptoticLaw {
            variable,
            regime,
            exponent,
            coefficient,
            clause,
            description: description.to_string(),
        }
    }
}

/// Leading-order laws for `-XCF` from `m0`.
pub fn expected_asymptotics(
    geom: GeometryClass,
    spec: FlowSpec,
    m0: &MetricDiag,
) -> Result<Vec<AsymptoticLaw>> {
    use Coefficient::*;
    use LawRegime::*;
    if spec != FlowSpec::NEGATIVE {
        return Err(FlowError::UnsupportedFlow {
            geometry: geom,
            flow: spec.to_string(),
        });
    }
    let (a0, b0, c0) = (m0.a(), m0.b(), m0.c());
    let half = Exponent::new(1, 2);
    let neg_half = Exponent::new(-1, 2);
    let laws = match classify_branch(geom, m0) {
        Branch::HeisenbergGlobal => {
            let r0 = -2.0 * a0 / (b0 * c0);
            let k = 7.0 * r0 * r0;
            let cl = Clause::HeisenbergGlobal;
            let grow = k.powf(3.0 / 14.0);
            vec![
                AsymptoticLaw::new(
                    cl,
                    Variable::A,
                    Infinity,
                    Exponent::new(-1, 14),
                    Known(a0 * k.powf(-1.0 / 14.0)),
                    "A = A0 (1 + 7 R0² t)^(-1/14)",
                ),
                AsymptoticLaw::new(
                    cl,
                    Variable::B,
                    Infinity,
                    Exponent::new(3, 14),
                    Known(b0 * grow),
                    "B = B0 (1 + 7 R0² t)^(3/14)",
                ),
                AsymptoticLaw::new(
                    cl,
                    Variable::C,
                    Infinity,
                    Exponent::new(3, 14),
                    Known(c0 * grow),
                    "C = C0 (1 + 7 R0² t)^(3/14)",
                ),
            ]
        }
        Branch::SolSymmetric => {
            let cl = Clause::SolCollapse;
            vec![
                AsymptoticLaw::new(
                    cl,
                    Variable::B,
                    BlowUp,
                    half,
                    Known(8.0),
                    "B = sqrt(64 (T0 - t))",
                ),
                AsymptoticLaw::new(
                    cl,
                    Variable::A,
                    BlowUp,
                    neg_half,
                    Known(a0 * b0 / 8.0),
                    "A = A0 B0 / sqrt(64 (T0 - t))",
                ),
                AsymptoticLaw::new(
                    cl,
                    Variable::C,
                    BlowUp,
                    neg_half,
                    Known(a0 * b0 / 8.0),
                    "C = A0 B0 / sqrt(64 (T0 - t))",
                ),
            ]
        }
        Branch::SolGeneric => {
            let cl = Clause::SolCollapse;
            let gap = if a0 > c0 {
                Variable::AMinusC
            } else {
                Variable::CMinusA
            };
            vec![
                AsymptoticLaw::new(
                    cl,
                    Variable::B,
                    BlowUp,
                    half,
                    Known(8.0),
                    "B ~ sqrt(64 (T0 - t))",
                ),
                AsymptoticLaw::new(
                    cl,
                    Variable::A,
                    BlowUp,
                    neg_half,
                    Fitted,
                    "A ~ E1 / sqrt(T0 - t)",
                ),
                AsymptoticLaw::new(
                    cl,
                    Variable::C,
                    BlowUp,
                    neg_half,
                    Fitted,
                    "C ~ E1 / sqrt(T0 - t)",
                ),
                AsymptoticLaw::new(cl, gap, BlowUp, half, Fitted, "|A - C| ~ E2 sqrt(T0 - t)"),
            ]
        }
        Branch::Su2Round | Branch::Su2Generic => Axis::ALL
            .into_iter()
            .map(|x| {
                AsymptoticLaw::new(
                    Clause::Su2Collapse,
                    Variable::axis(x),
                    BlowUp,
                    half,
                    Known(2.0),
                    "A, B, C ~ 2 sqrt(T0 - t)",
                )
            })
            .collect(),
        Branch::Sl2rSymmetric => {
            let cl = Clause::Sl2rPancake;
            vec![
                AsymptoticLaw::new(
                    cl,
                    Variable::B,
                    Infinity,
                    Exponent::new(1, 3),
                    CubeRootOfLimit,
                    "B ~ (24 A∞ t)^(1/3)",
                ),
                AsymptoticLaw::new(
                    cl,
                    Variable::C,
                    Infinity,
                    Exponent::new(1, 3),
                    CubeRootOfLimit,
                    "C = B ~ (24 A∞ t)^(1/3)",
                ),
                AsymptoticLaw::new(
                    cl,
                    Variable::AMinusLimit,
                    Infinity,
                    Exponent::new(-1, 3),
                    LimitCorrection,
                    "A - A∞ ~ A∞^(5/3) t^(-1/3) / (8 · 3^(1/3))",
                ),
            ]
        }
        Branch::Sl2rGeneric => {
            let cl = Clause::Sl2rCollapse;
            // The system is symmetric in B and C; B0 < C0 swaps their roles.
            let (big, small) = if b0 > c0 {
                (Axis::B, Axis::C)
            } else {
                (Axis::C, Axis::B)
            };
            vec![
                AsymptoticLaw::new(
                    cl,
                    Variable::A,
                    BlowUp,
                    neg_half,
                    Fitted,
                    "A ~ E / sqrt(T0 - t)",
                ),
                AsymptoticLaw::new(
                    cl,
                    Variable::axis(big),
                    BlowUp,
                    neg_half,
                    Fitted,
                    "B ~ E / sqrt(T0 - t)",
                ),
                AsymptoticLaw::new(
                    cl,
                    Variable::axis(small),
                    BlowUp,
                    half,
                    Known(8.0),
                    "C ~ 8 sqrt(T0 - t)",
                ),
            ]
        }
        Branch::E2Generic => {
            let cl = Clause::E2Cigar;
            let gap = if a0 > b0 {
                Variable::AMinusB
            } else {
                Variable::BMinusA
            };
            vec![
                AsymptoticLaw::new(
                    cl,
                    gap,
                    Infinity,
                    Exponent::new(-1, 6),
                    Fitted,
                    "|A - B| ~ 2 E2 t^(-1/6)",
                ),
                AsymptoticLaw::new(
                    cl,
                    Variable::APlusB,
                    Infinity,
                    Exponent::new(0, 1),
                    Fitted,
                    "A + B -> 2 E1",
                ),
                AsymptoticLaw::new(
                    cl,
                    Variable::C,
                    Infinity,
                    Exponent::new(1, 3),
                    CigarRatio,
                    "C ~ (8 E2 / E1) sqrt(6) t^(1/3)",
                ),
            ]
        }
        Branch::E2Flat | Branch::Trivial => Vec::new(),
    };
    Ok(laws)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: f64, b: f64, c: f64) -> MetricDiag {
        MetricDiag::new(a, b, c).unwrap()
    }

    fn rel(x: f64, y: f64) -> f64 {
        (x - y).abs() / y.abs()
    }

    #[test]
    fn heisenberg_examples() {
        let m0 = m(1.0, 1.0, 1.0);
        assert_eq!(heisenberg_exact(&m0, 0.0).unwrap(), m0);
        let s = heisenberg_exact(&m0, 10.0).unwrap();
        assert!(rel(s.a(), 281f64.powf(-1.0 / 14.0)) < 1e-15);
        assert!(rel(s.b(), 281f64.powf(3.0 / 14.0)) < 1e-15);
        assert!(rel(s.a(), 0.668_486_137_594_278) < 1e-14);
        assert!(rel(s.c(), 3.347_516_935_484_476) < 1e-14);
        assert!(heisenberg_exact(&m0, -1.0).is_err());
        let m0 = m(0.7, 2.0, 3.5);
        for t in [0.0, 0.3, 17.0, 4e5] {
            let s = heisenberg_exact(&m0, t).unwrap();
            assert!(rel(s.a().powi(3) * s.b(), 0.7f64.powi(3) * 2.0) < 1e-13);
        }
    }

    #[test]
    fn sol_symmetric_examples() {
        assert_eq!(
            sol_symmetric_exact(1.0, 8.0, 0.0).unwrap().to_array(),
            [1.0, 8.0, 1.0]
        );
        assert_eq!(
            sol_symmetric_exact(1.0, 8.0, 0.75).unwrap().to_array(),
            [2.0, 4.0, 2.0]
        );
        assert!(matches!(
            sol_symmetric_exact(1.0, 8.0, 1.0),
            Err(FlowError::SingularTime { .. })
        ));
    }

    #[test]
    fn su2_round_examples() {
        assert_eq!(su2_round_exact(2.0, 0.0).unwrap().to_array(), [2.0; 3]);
        assert_eq!(su2_round_exact(2.0, 0.75).unwrap().to_array(), [1.0; 3]);
        assert!(su2_round_exact(2.0, 1.0).is_err());
        let t = 1.0 - 1e-8;
        let s = su2_round_exact(2.0, t).unwrap();
        assert!(rel(s.a(), 2.0 * (1.0 - t).sqrt()) < 1e-7);
    }

    #[test]
    fn conserved_examples() {
        let q = conserved_quantities(
            GeometryClass::Heisenberg,
            FlowSpec::NEGATIVE,
            &m(1.0, 2.0, 4.0),
        );
        let want = [("A³B", 2.0), ("A³C", 4.0), ("B/C", 0.5)];
        assert_eq!(q.len(), 3);
        for ((n, v), (wn, wv)) in q.iter().zip(want) {
            assert_eq!(n, wn);
            assert_eq!(*v, wv);
        }
        let q = conserved_quantities(GeometryClass::Su2, FlowSpec::NORMALIZED, &m(1.0, 2.0, 3.0));
        assert_eq!(q, vec![("ABC".to_string(), 6.0)]);
        assert!(
            conserved_quantities(GeometryClass::Sl2r, FlowSpec::NEGATIVE, &m(1.0, 2.0, 3.0))
                .is_empty()
        );
    }

    #[test]
    fn monotone_examples() {
        let sol = monotone_quantities(GeometryClass::Sol, &m(3.0, 1.0, 2.0));
        let names: Vec<String> = sol.iter().map(|(q, _)| q.to_string()).collect();
        assert_eq!(names, ["A-C", "A/C", "A-3C", "C"]);
        assert_eq!(sol[3].1, Trend::Increasing);
        let su2 = monotone_quantities(GeometryClass::Su2, &m(3.0, 2.0, 1.0));
        let names: Vec<String> = su2.iter().map(|(q, _)| q.to_string()).collect();
        assert_eq!(names, ["A-B", "A-C", "A/B", "A/C"]);
        assert!(su2.iter().all(|(_, t)| *t == Trend::Decreasing));
        assert!(monotone_quantities(GeometryClass::E2, &m(2.0, 2.0, 1.0)).is_empty());
        let sl = monotone_quantities(GeometryClass::Sl2r, &m(1.0, 1.0, 1.0));
        assert_eq!(sl[0].0.to_string(), "4/A+1/B");
        assert_eq!(sl[0].0.eval(&m(2.0, 4.0, 4.0)), 2.25);
        let e2 = monotone_quantities(GeometryClass::E2, &m(3.0, 1.0, 2.0));
        assert_eq!(e2[0].0.to_string(), "(A-B)^2C");
        assert_eq!(e2[0].0.eval(&m(3.0, 1.0, 2.0)), 8.0);
    }

    #[test]
    fn su2_ordering_is_relabelled() {
        let q = monotone_quantities(GeometryClass::Su2, &m(1.0, 3.0, 2.0));
        let names: Vec<String> = q.iter().map(|(q, _)| q.to_string()).collect();
        assert_eq!(names, ["B-C", "B-A", "B/C", "B/A"]);
    }

    #[test]
    fn asymptotic_examples() {
        let sol = expected_asymptotics(GeometryClass::Sol, FlowSpec::NEGATIVE, &m(2.0, 4.0, 1.0))
            .unwrap();
        assert!(sol.iter().any(|l| l.variable == Variable::B
            && l.regime == LawRegime::BlowUp
            && l.exponent == Exponent::new(1, 2)
            && l.coefficient == Coefficient::Known(8.0)));
        let sl = expected_asymptotics(GeometryClass::Sl2r, FlowSpec::NEGATIVE, &m(1.0, 1.0, 1.0))
            .unwrap();
        assert!(sl.iter().any(|l| l.variable == Variable::B
            && l.regime == LawRegime::Infinity
            && l.exponent == Exponent::new(1, 3)
            && l.coefficient == Coefficient::CubeRootOfLimit));
        let su = expected_asymptotics(GeometryClass::Su2, FlowSpec::NEGATIVE, &m(3.0, 2.0, 1.0))
            .unwrap();
        assert!(su.iter().any(|l| l.variable == Variable::A
            && l.regime == LawRegime::BlowUp
            && l.coefficient == Coefficient::Known(2.0)));
        assert!(
            expected_asymptotics(GeometryClass::Sol, FlowSpec::NORMALIZED, &m(1.0, 1.0, 1.0))
                .is_err()
        );
    }

    #[test]
    fn sl2r_swapped_branch() {
        let laws = expected_asymptotics(GeometryClass::Sl2r, FlowSpec::NEGATIVE, &m(1.0, 1.0, 2.0))
            .unwrap();
        let c8 = laws
            .iter()
            .find(|l| l.coefficient == Coefficient::Known(8.0))
            .unwrap();
        assert_eq!(c8.variable, Variable::B);
    }

    #[test]
    fn catalog_covers_every_clause() {
        let samples = [
            (GeometryClass::Heisenberg, m(1.0, 1.0, 1.0)),
            (GeometryClass::Sol, m(2.0, 4.0, 1.0)),
            (GeometryClass::Su2, m(3.0, 2.0, 1.0)),
            (GeometryClass::Sl2r, m(1.0, 1.0, 1.0)),
            (GeometryClass::Sl2r, m(1.0, 2.0, 1.0)),
            (GeometryClass::E2, m(2.0, 1.0, 1.0)),
        ];
        let mut seen = Vec::new();
        for (g, m0) in samples {
            let laws = expected_asymptotics(g, FlowSpec::NEGATIVE, &m0).unwrap();
            assert!(!laws.is_empty());
            let first = laws[0].clause;
            assert!(laws.iter().all(|l| l.clause == first));
            seen.push(first);
        }
        for c in Clause::ALL {
            assert!(seen.contains(&c), "{c:?} uncovered");
        }
    }
}
