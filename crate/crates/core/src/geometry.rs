//! Curvature of left-invariant diagonal metrics in a Milnor frame.
//!
//! Every geometry uses the frame of its own analysis, with brackets
//! `[f_i, f_j] = 2 ε_k f_k` circularly:
//!
//! | class      | (ε1, ε2, ε3) |
//! |------------|--------------|
//! | Heisenberg | (+1, 0, 0)   |
//! | Sol        | (+1, 0, −1)  |
//! | SU(2)      | (+1, +1, +1) |
//! | SL(2,R)    | (−1, +1, +1) |
//! | E(2)       | (+1, +1, 0)  |
//! | Trivial    | (0, 0, 0)    |
//!
//! The curvature formulas below are evaluated in factored form, exactly as
//! they are usually written for each class. [`cross_from_sectional`] is the
//! generic route through `h_ii = g_ii k_j k_l` and serves as the oracle for
//! [`cross_curvature_diag`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{FlowError, Result};

/// Homogeneous model geometry.
///
/// `Trivial` stands for every geometry whose cross curvature tensor vanishes
/// identically: flat `R³`, `H²×R` and `S²×R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeometryClass {
    Heisenberg,
    Sol,
    Su2,
    Sl2r,
    E2,
    Trivial,
}

impl GeometryClass {
    pub const ALL: [GeometryClass; 6] = [
        GeometryClass::Heisenberg,
        GeometryClass::Sol,
        GeometryClass::Su2,
        GeometryClass::Sl2r,
        GeometryClass::E2,
        GeometryClass::Trivial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeometryClass::Heisenberg => "heisenberg",
            GeometryClass::Sol => "sol",
            GeometryClass::Su2 => "su2",
            GeometryClass::Sl2r => "sl2r",
            GeometryClass::E2 => "e2",
            GeometryClass::Trivial => "trivial",
        }
    }
}

impl fmt::Display for GeometryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeometryClass {
    type Err = FlowError;

    fn from_str(s: &str) -> Result<Self> {
        GeometryClass::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| FlowError::UnknownGeometry(s.to_string()))
    }
}

/// One of the three Milnor-frame directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    A,
    B,
    C,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::A, Axis::B, Axis::C];

    pub fn index(self) -> usize {
        match self {
            Axis::A => 0,
            Axis::B => 1,
            Axis::C => 2,
        }
    }

    pub fn from_index(i: usize) -> Axis {
        Axis::ALL[i]
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::A => "A",
            Axis::B => "B",
            Axis::C => "C",
        })
    }
}

/// Milnor-frame metric coefficients `(A, B, C)`, all strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMetric", into = "RawMetric")]
pub struct MetricDiag {
    a: f64,
    b: f64,
    c: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMetric {
    #[serde(rename = "A")]
    a: f64,
    #[serde(rename = "B")]
    b: f64,
    #[serde(rename = "C")]
    c: f64,
}

impl TryFrom<RawMetric> for MetricDiag {
    type Error = FlowError;

    fn try_from(r: RawMetric) -> Result<Self> {
        MetricDiag::new(r.a, r.b, r.c)
    }
}

impl From<MetricDiag> for RawMetric {
    fn from(m: MetricDiag) -> Self {
        RawMetric {
            a: m.a,
            b: m.b,
            c: m.c,
        }
    }
}

impl MetricDiag {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        if ok(a) && ok(b) && ok(c) {
            Ok(MetricDiag { a, b, c })
        } else {
            Err(FlowError::InvalidMetric(a, b, c))
        }
    }

    pub fn from_array(v: [f64; 3]) -> Result<Self> {
        MetricDiag::new(v[0], v[1], v[2])
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> f64 {
        self.b
    }

    #[inline]
    pub fn c(&self) -> f64 {
        self.c
    }

    #[inline]
    pub fn get(&self, axis: Axis) -> f64 {
        match axis {
            Axis::A => self.a,
            Axis::B => self.b,
            Axis::C => self.c,
        }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    /// Riemannian volume density `ABC` of the frame.
    pub fn volume(&self) -> f64 {
        self.a * self.b * self.c
    }

    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        MetricDiag::new(lambda * self.a, lambda * self.b, lambda * self.c)
    }

    pub fn min_component(&self) -> f64 {
        self.a.min(self.b).min(self.c)
    }

    pub fn max_component(&self) -> f64 {
        self.a.max(self.b).max(self.c)
    }
}

/// Principal sectional curvatures `K(f2∧f3)`, `K(f3∧f1)`, `K(f1∧f2)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CurvTriple {
    pub k23: f64,
    pub k31: f64,
    pub k12: f64,
}

impl CurvTriple {
    pub fn to_array(self) -> [f64; 3] {
        [self.k23, self.k31, self.k12]
    }
}

/// Diagonal entries of the cross curvature tensor in the Milnor frame.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CrossDiag {
    pub h11: f64,
    pub h22: f64,
    pub h33: f64,
}

impl CrossDiag {
    pub fn to_array(self) -> [f64; 3] {
        [self.h11, self.h22, self.h33]
    }
}

/// Bracket signs `(ε1, ε2, ε3)` of the Milnor frame used for `geom`.
pub fn structure_signs(geom: GeometryClass) -> [i8; 3] {
    match geom {
        GeometryClass::Heisenberg => [1, 0, 0],
        GeometryClass::Sol => [1, 0, -1],
        GeometryClass::Su2 => [1, 1, 1],
        GeometryClass::Sl2r => [-1, 1, 1],
        GeometryClass::E2 => [1, 1, 0],
        GeometryClass::Trivial => [0, 0, 0],
    }
}

/// SU(2) auxiliary polynomials `(X, Y, Z)`; `k_i = -X_i / (ABC)`.
fn su2_xyz(a: f64, b: f64, c: f64) -> [f64; 3] {
    let x = 3.0 * a * a - (b - c).powi(2) - 2.0 * a * b - 2.0 * a * c;
    let y = 3.0 * b * b - (a - c).powi(2) - 2.0 * a * b - 2.0 * b * c;
    let z = 3.0 * c * c - (a - b).powi(2) - 2.0 * b * c - 2.0 * a * c;
    [x, y, z]
}

/// SL(2,R) polynomials `(F1, F2, F3)`; `k_i = F_i / (ABC)`.
///
/// Written in the factored forms `F1 = (B-C)^2 - A(3A+2B+2C)` and
/// `F3 = (B-C)(2A+B+3C) + A^2`, with `F2` the image of `F3` under `B <-> C`.
/// Each expression maps to its partner under `B <-> C` operation by
/// operation, so `B = C` gives bitwise `F2 = F3` and the symmetric
/// submanifold is preserved exactly in floating point.
pub fn sl2r_f(m: &MetricDiag) -> [f64; 3] {
    let (a, b, c) = (m.a, m.b, m.c);
    let f1 = (b - c).powi(2) - a * (3.0 * a + 2.0 * (b + c));
    let f2 = (c - b) * (2.0 * a + c + 3.0 * b) + a * a;
    let f3 = (b - c) * (2.0 * a + b + 3.0 * c) + a * a;
    [f1, f2, f3]
}

/// E(2) auxiliary polynomials `(X, Y, Z)`; `k_i = -X_i / (ABC)`.
fn e2_xyz(a: f64, b: f64) -> [f64; 3] {
    let x = (a - b) * (3.0 * a + b);
    let y = (b - a) * (3.0 * b + a);
    let z = -(a - b).powi(2);
    [x, y, z]
}

pub fn sectional_curvatures(geom: GeometryClass, m: &MetricDiag) -> CurvTriple {
    let (a, b, c) = (m.a, m.b, m.c);
    let abc = a * b * c;
    match geom {
        GeometryClass::Heisenberg => CurvTriple {
            k23: -3.0 * a / (b * c),
            k31: a / (b * c),
            k12: a / (b * c),
        },
        GeometryClass::Sol => CurvTriple {
            k23: ((a - c).powi(2) - 4.0 * a * a) / abc,
            k31: (a + c).powi(2) / abc,
            k12: ((a - c).powi(2) - 4.0 * c * c) / abc,
        },
        GeometryClass::Su2 => CurvTriple {
            k23: (b - c).powi(2) / abc - 3.0 * a / (b * c) + 2.0 / b + 2.0 / c,
            k31: (c - a).powi(2) / abc - 3.0 * b / (c * a) + 2.0 / c + 2.0 / a,
            k12: (a - b).powi(2) / abc - 3.0 * c / (a * b) + 2.0 / a + 2.0 / b,
        },
        GeometryClass::Sl2r => {
            let [f1, f2, f3] = sl2r_f(m);
            let abc = a * (b * c);
            CurvTriple {
                k23: f1 / abc,
                k31: f2 / abc,
                k12: f3 / abc,
            }
        }
        GeometryClass::E2 => CurvTriple {
            k23: (b - a) * (b + 3.0 * a) / abc,
            k31: (a - b) * (a + 3.0 * b) / abc,
            k12: (a - b).powi(2) / abc,
        },
        GeometryClass::Trivial => CurvTriple::default(),
    }
}

/// Cross curvature tensor from the explicit per-class polynomial forms.
pub fn cross_curvature_diag(geom: GeometryClass, m: &MetricDiag) -> CrossDiag {
    let (a, b, c) = (m.a, m.b, m.c);
    let abc2 = (a * b * c).powi(2);
    match geom {
        GeometryClass::Heisenberg => CrossDiag {
            h11: a.powi(3) / (b * b * c * c),
            h22: -3.0 * a * a / (b * c * c),
            h33: -3.0 * a * a / (b * b * c),
        },
        GeometryClass::Sol => CrossDiag {
            h11: -(a * (a + c).powi(3) * (3.0 * c - a)) / abc2,
            h22: b * (3.0 * a - c) * (3.0 * c - a) * (a + c).powi(2) / abc2,
            h33: -(c * (a + c).powi(3) * (3.0 * a - c)) / abc2,
        },
        GeometryClass::Su2 => {
            let [x, y, z] = su2_xyz(a, b, c);
            CrossDiag {
                h11: a * y * z / abc2,
                h22: b * z * x / abc2,
                h33: c * x * y / abc2,
            }
        }
        GeometryClass::Sl2r => {
            let [f1, f2, f3] = sl2r_f(m);
            let abc2 = (a * (b * c)).powi(2);
            CrossDiag {
                h11: a * (f2 * f3) / abc2,
                h22: b * (f3 * f1) / abc2,
                h33: c * (f1 * f2) / abc2,
            }
        }
        GeometryClass::E2 => {
            let [x, y, z] = e2_xyz(a, b);
            CrossDiag {
                h11: a * y * z / abc2,
                h22: b * z * x / abc2,
                h33: c * x * y / abc2,
            }
        }
        GeometryClass::Trivial => CrossDiag::default(),
    }
}

/// Generic route `h_ii = g_ii k_j k_l` from the principal sectional curvatures.
pub fn cross_from_sectional(m: &MetricDiag, k: &CurvTriple) -> CrossDiag {
    CrossDiag {
        h11: m.a * k.k31 * k.k12,
        h22: m.b * k.k12 * k.k23,
        h33: m.c * k.k23 * k.k31,
    }
}

pub fn scalar_curvature(geom: GeometryClass, m: &MetricDiag) -> f64 {
    let k = sectional_curvatures(geom, m);
    2.0 * (k.k23 + k.k31 + k.k12)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: f64, b: f64, c: f64) -> MetricDiag {
        MetricDiag::new(a, b, c).unwrap()
    }

    fn close(x: f64, y: f64) -> bool {
        (x - y).abs() <= 1e-14 * (1.0 + y.abs())
    }

    #[test]
    fn signs_follow_section_frames() {
        assert_eq!(structure_signs(GeometryClass::Su2), [1, 1, 1]);
        assert_eq!(structure_signs(GeometryClass::Heisenberg), [1, 0, 0]);
        assert_eq!(structure_signs(GeometryClass::Sl2r), [-1, 1, 1]);
        assert_eq!(structure_signs(GeometryClass::Sol), [1, 0, -1]);
        assert_eq!(structure_signs(GeometryClass::E2), [1, 1, 0]);
        assert_eq!(structure_signs(GeometryClass::Trivial), [0, 0, 0]);
    }

    #[test]
    fn rejects_non_positive_components() {
        assert!(MetricDiag::new(0.0, 1.0, 1.0).is_err());
        assert!(MetricDiag::new(1.0, -2.0, 1.0).is_err());
        assert!(MetricDiag::new(1.0, 1.0, f64::NAN).is_err());
        assert!(MetricDiag::new(1.0, 1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn heisenberg_unit_curvatures() {
        let k = sectional_curvatures(GeometryClass::Heisenberg, &m(1.0, 1.0, 1.0));
        assert_eq!(k.to_array(), [-3.0, 1.0, 1.0]);
        let h = cross_curvature_diag(GeometryClass::Heisenberg, &m(1.0, 1.0, 1.0));
        assert_eq!(h.to_array(), [1.0, -3.0, -3.0]);
        assert_eq!(
            scalar_curvature(GeometryClass::Heisenberg, &m(1.0, 1.0, 1.0)),
            -2.0
        );
    }

    #[test]
    fn e2_flat_when_a_equals_b() {
        let k = sectional_curvatures(GeometryClass::E2, &m(1.0, 1.0, 5.0));
        assert_eq!(k.to_array(), [0.0, 0.0, 0.0]);
        assert_eq!(scalar_curvature(GeometryClass::E2, &m(4.0, 4.0, 0.5)), 0.0);
    }

    #[test]
    fn su2_round_unit() {
        let k = sectional_curvatures(GeometryClass::Su2, &m(1.0, 1.0, 1.0));
        assert_eq!(k.to_array(), [1.0, 1.0, 1.0]);
        assert_eq!(scalar_curvature(GeometryClass::Su2, &m(1.0, 1.0, 1.0)), 6.0);
    }

    #[test]
    fn e2_cross_tensor_at_2_1_1() {
        // X = 7, Y = -5, Z = -1, (ABC)^2 = 4.
        let g = m(2.0, 1.0, 1.0);
        let k = sectional_curvatures(GeometryClass::E2, &g);
        assert_eq!(k.to_array(), [-3.5, 2.5, 0.5]);
        let h = cross_curvature_diag(GeometryClass::E2, &g);
        assert_eq!(h.to_array(), [2.5, -1.75, -8.75]);
        assert_eq!(cross_from_sectional(&g, &k), h);
    }

    #[test]
    fn trivial_is_flat() {
        let g = m(0.3, 7.0, 2.0);
        assert_eq!(
            cross_curvature_diag(GeometryClass::Trivial, &g).to_array(),
            [0.0; 3]
        );
        assert_eq!(
            sectional_curvatures(GeometryClass::Trivial, &g).to_array(),
            [0.0; 3]
        );
        let zero = CurvTriple::default();
        assert_eq!(cross_from_sectional(&g, &zero).to_array(), [0.0; 3]);
    }

    #[test]
    fn oracle_matches_heisenberg_unit() {
        let k = CurvTriple {
            k23: -3.0,
            k31: 1.0,
            k12: 1.0,
        };
        let h = cross_from_sectional(&m(1.0, 1.0, 1.0), &k);
        assert_eq!(h.to_array(), [1.0, -3.0, -3.0]);
    }

    #[test]
    fn sign_facts() {
        // SL(2,R), B > C: F3 = (B-C)(2A+B+3C) + A^2 > A^2.
        let g = m(0.7, 3.0, 1.2);
        let f3 = sl2r_f(&g)[2];
        assert!(f3 > 0.7 * 0.7);
        assert!(close(f3, (3.0 - 1.2) * (1.4 + 3.0 + 3.6) + 0.49));
        // SU(2), A >= B >= C: Y, Z <= -C^2.
        let [_, y, z] = su2_xyz(5.0, 3.0, 2.0);
        assert!(y <= -4.0 && z <= -4.0);
    }

    #[test]
    fn sl2r_factored_forms_match_expanded() {
        let g = m(0.9, 2.3, 1.7);
        let (a, b, c) = (0.9, 2.3, 1.7);
        let expanded = [
            -3.0 * a * a + b * b + c * c - 2.0 * b * c - 2.0 * a * c - 2.0 * a * b,
            -3.0 * b * b + a * a + c * c + 2.0 * b * c + 2.0 * a * c - 2.0 * a * b,
            -3.0 * c * c + a * a + b * b + 2.0 * b * c - 2.0 * a * c + 2.0 * a * b,
        ];
        for (f, e) in sl2r_f(&g).iter().zip(expanded) {
            assert!(close(*f, e), "{f} vs {e}");
        }
    }

    #[test]
    fn sl2r_symmetric_point_is_bitwise_symmetric() {
        for (a, b) in [(1.0, 1.0), (0.37, 5.1), (3.3, 0.01)] {
            let g = m(a, b, b);
            let [_, f2, f3] = sl2r_f(&g);
            assert_eq!(f2, f3);
            let h = cross_curvature_diag(GeometryClass::Sl2r, &g);
            assert_eq!(h.h22, h.h33);
        }
    }

    #[test]
    fn names_round_trip() {
        for g in GeometryClass::ALL {
            assert_eq!(g.name().parse::<GeometryClass>().unwrap(), g);
        }
        assert!("h3".parse::<GeometryClass>().is_err());
    }
}
