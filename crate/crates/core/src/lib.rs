//! Quaternionic time-frequency analysis: the two-sided quaternion Fourier
//! transform (QFT), its Gabor-windowed version (GQFT), and a numerical lab
//! that certifies the associated identities (Plancherel, inversion) and
//! uncertainty inequalities (concentration, local uncertainty, weighted
//! moments, annihilating pairs) on discretized signals.
//!
//! Everything runs on one of two grid conventions: `PureDiscrete` grids give
//! machine-precision identities, `Quadrature` grids discretize Lebesgue
//! integrals for the inequality experiments. See [`geometry::GridGeometry`].

pub mod annihilation;
pub mod error;
pub mod geometry;
pub mod gqft;
pub mod mask;
pub mod qft;
pub mod quaternion;
pub mod report;
pub mod signal;
mod sum;
pub mod tol;
pub mod uncertainty;

pub use annihilation::{
    annihilation_constant, benedicks_probe, operator_norm, project_mask, project_range,
    OperatorNormEstimate, PowerIterConfig,
};
pub use error::{Error, Result};
pub use geometry::{GridGeometry, GridMode};
pub use gqft::{gabor_energy, gqft_forward, gqft_inverse, GaborField4D};
pub use mask::{MaskDomain, RegionMask};
pub use qft::{dqft, dqft_direct, hy_norm, idqft, q_modulus_spectrum, QSpectrum2D, RealSpectrum2D};
pub use quaternion::Quaternion;
pub use report::CheckReport;
pub use signal::{
    from_rgb_image, make_window, require_quadrature, to_rgb_image, QSignal2D, WindowKind,
};
pub use uncertainty::{
    check_concentration_lower_bound, check_hausdorff_young, check_local_uncertainty,
    check_weighted_bound, check_young_sup, concentration_epsilon, EpsilonConcentration,
};
