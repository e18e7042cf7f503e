use thiserror::Error;

use crate::geometry::GeometryClass;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlowError {
    #[error("metric components must be positive and finite, got ({0}, {1}, {2})")]
    InvalidMetric(f64, f64, f64),

    #[error("unknown geometry `{0}`")]
    UnknownGeometry(String),

    #[error("unknown flow `{0}`")]
    UnknownFlow(String),

    #[error("invalid integrator options: {0}")]
    InvalidOptions(String),

    #[error("singular time {t0} reached (requested t = {t})")]
    SingularTime { t: f64, t0: f64 },

    #[error("time {t} outside the sampled range [0, {t_end}]")]
    OutOfRange { t: f64, t_end: f64 },

    #[error("trajectory did not end in a singular time")]
    NotSingular,

    #[error("fit window holds {found} samples, at least {needed} required")]
    InsufficientSamples { found: usize, needed: usize },

    #[error("non-positive value {value} at t = {t} in the fit window")]
    NonPositive { t: f64, value: f64 },

    #[error("tail is not monotone, limit fit is unreliable")]
    NonMonotoneTail,

    #[error("no asymptotic catalog for {geometry} under {flow}")]
    UnsupportedFlow {
        geometry: GeometryClass,
        flow: String,
    },
}

pub type Result<T> = std::result::Result<T, FlowError>;
