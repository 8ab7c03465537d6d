//! Error type shared by all core operations.

use thiserror::Error;

/// Errors produced by transforms, masks and checkers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid grid geometry: {0}")]
    InvalidGeometry(String),

    #[error("geometry mismatch: {left} vs {right}")]
    GeometryMismatch { left: String, right: String },

    #[error("invalid L^p exponent p = {p}; require p >= 1 (or infinity)")]
    InvalidExponent { p: f64 },

    #[error("window function is identically zero")]
    ZeroWindow,

    #[error("mask domain mismatch: expected {expected}, got {got}")]
    MaskDomainMismatch { expected: String, got: String },

    #[error("mask cell index {index:?} out of bounds for grid {n1}x{n2}")]
    MaskIndexOutOfBounds { index: Vec<usize>, n1: usize, n2: usize },

    #[error("mask measure m = {measure} outside the required open interval (0, 1)")]
    MeasureOutOfRange { measure: f64 },

    #[error("inputs not unit-normalized: total phase-space energy {energy} deviates from 1 by more than {tol}")]
    UnnormalizedInput { energy: f64, tol: f64 },

    #[error("operation requires {required} mode, got {got}")]
    WrongMode { required: String, got: String },

    #[error("no admissible ball radius: every candidate B_t has measure >= 1 on this grid")]
    NoAdmissibleRadius,

    #[error("operator norm rho = {rho} >= 1: region is not numerically strongly annihilating for this window")]
    NotAnnihilating { rho: f64 },

    #[error("window support extends outside the spatial ball of radius {radius}: offending cells {cells:?}")]
    SupportViolation { radius: f64, cells: Vec<(usize, usize)> },
}

pub type Result<T> = std::result::Result<T, Error>;
