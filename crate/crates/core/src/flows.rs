//! Right-hand sides of the cross curvature flows on `(A, B, C)`.
//!
//! `-XCF` is `∂g/∂t = -2h`, `+XCF` is `∂g/∂t = +2h`, and the normalized flow
//! adds `(2/3) h̄ g`, which keeps `ABC` fixed. For homogeneous metrics the
//! averaged trace `h̄` equals the pointwise trace `g^{ij} h_ij`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{FlowError, Result};
use crate::geometry::{cross_curvature_diag, CrossDiag, GeometryClass, MetricDiag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Negative,
    Positive,
}

/// Flow direction plus the volume-normalization flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct FlowSpec {
    pub direction: Direction,
    pub normalized: bool,
}

impl FlowSpec {
    /// `-XCF`.
    pub const NEGATIVE: FlowSpec = FlowSpec {
        direction: Direction::Negative,
        normalized: false,
    };
    /// `+XCF`.
    pub const POSITIVE: FlowSpec = FlowSpec {
        direction: Direction::Positive,
        normalized: false,
    };
    /// `NXCF`, the volume-normalized negative flow.
    pub const NORMALIZED: FlowSpec = FlowSpec {
        direction: Direction::Negative,
        normalized: true,
    };
    pub const NORMALIZED_POSITIVE: FlowSpec = FlowSpec {
        direction: Direction::Positive,
        normalized: true,
    };

    pub const ALL: [FlowSpec; 4] = [
        FlowSpec::NEGATIVE,
        FlowSpec::POSITIVE,
        FlowSpec::NORMALIZED,
        FlowSpec::NORMALIZED_POSITIVE,
    ];

    pub fn name(self) -> &'static str {
        match (self.direction, self.normalized) {
            (Direction::Negative, false) => "xcf-",
            (Direction::Positive, false) => "xcf+",
            (Direction::Negative, true) => "nxcf",
            (Direction::Positive, true) => "nxcf+",
        }
    }

    fn sign(self) -> f64 {
        match self.direction {
            Direction::Negative => -1.0,
            Direction::Positive => 1.0,
        }
    }
}

impl fmt::Display for FlowSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FlowSpec {
    type Err = FlowError;

    fn from_str(s: &str) -> Result<Self> {
        FlowSpec::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| FlowError::UnknownFlow(s.to_string()))
    }
}

impl TryFrom<String> for FlowSpec {
    type Error = FlowError;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<FlowSpec> for String {
    fn from(f: FlowSpec) -> String {
        f.name().to_string()
    }
}

/// Time derivatives `(dA/dt, dB/dt, dC/dt)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RhsTriple {
    pub da: f64,
    pub db: f64,
    pub dc: f64,
}

impl RhsTriple {
    pub fn to_array(self) -> [f64; 3] {
        [self.da, self.db, self.dc]
    }
}

/// Trace `g^{ij} h_ij = h11/A + h22/B + h33/C`.
pub fn mean_cross(m: &MetricDiag, h: &CrossDiag) -> f64 {
    h.h11 / m.a() + h.h22 / m.b() + h.h33 / m.c()
}

pub fn flow_rhs(geom: GeometryClass, m: &MetricDiag, spec: FlowSpec) -> RhsTriple {
    let h = cross_curvature_diag(geom, m);
    let s = 2.0 * spec.sign();
    let mut rhs = RhsTriple {
        da: s * h.h11,
        db: s * h.h22,
        dc: s * h.h33,
    };
    if spec.normalized {
        // The correction has the opposite sign of the h term: -2h + (2/3)h̄g.
        let k = -spec.sign() * (2.0 / 3.0) * mean_cross(m, &h);
        rhs.da += k * m.a();
        rhs.db += k * m.b();
        rhs.dc += k * m.c();
    }
    rhs
}
