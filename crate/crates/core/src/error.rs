use thiserror::Error;

/// Errors raised by constructions and numerical routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("grid too coarse to lift: angle gap {gap:.6} at sample {index}")]
    GridTooCoarse { index: usize, gap: f64 },
    #[error("grid mismatch: {left} vs {right} samples")]
    GridMismatch { left: usize, right: usize },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("sample {index} has modulus {modulus} (expected 1)")]
    NotUnitModulus { index: usize, modulus: f64 },
    #[error("non-smooth map supplied without its analytic derivative")]
    MissingDerivative,
    #[error("{name} = {value} outside {range}")]
    IndexOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("map varies by {variation:.3e} on [0, {lambda}] where it must be constant")]
    NotLocallyConstant { lambda: f64, variation: f64 },
    #[error("{count} balls of radius {radius} do not fit disjointly")]
    Overcrowded { count: usize, radius: f64 },
    #[error("invalid radial profile: {0}")]
    InvalidProfile(String),
    #[error("degenerate request: {0}")]
    Degenerate(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
