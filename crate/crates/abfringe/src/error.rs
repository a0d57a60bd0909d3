use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by model construction, special functions, quadrature and
/// table emission.
#[derive(Debug, Error)]
pub enum Error {
    /// A scalar argument violated its documented bound.
    #[error("{name} must be {requirement}, got {value}")]
    InvalidArgument {
        name: &'static str,
        requirement: &'static str,
        value: f64,
    },

    /// A classical path would intersect the solenoid.
    #[error("solenoid radius {radius} m exceeds the {leg} clearance {clearance} m")]
    PathClearance {
        radius: f64,
        clearance: f64,
        leg: &'static str,
    },

    /// Y0/Y1 are singular at the origin and undefined for x <= 0.
    #[error("Bessel Y is undefined for x <= 0 (got {x})")]
    BesselDomain { x: f64 },

    #[error("invalid integration interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },

    #[error("step count must be >= {min}, got {n}")]
    InvalidStepCount { n: usize, min: usize },

    #[error("time {t} s outside the leg interval [{lo}, {hi}] s")]
    TimeOutsideLeg { t: f64, lo: f64, hi: f64 },

    /// A required input was not supplied (e.g. a sweep mode needing a drive).
    #[error("missing input: {what}")]
    MissingInput { what: &'static str },

    #[error("no rows to emit")]
    EmptyTable,

    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
