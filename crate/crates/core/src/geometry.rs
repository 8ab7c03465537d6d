//! Grid geometry and measure conventions for discretized signals.
//!
//! Two discretizations are supported:
//!
//! * `PureDiscrete` — indices `0..n-1` with counting measure and the unitary
//!   transform normalization; identities (Plancherel, inversion) hold to
//!   machine precision.
//! * `Quadrature` — Riemann-sum discretization of Lebesgue integrals on a
//!   centered box `[-L1/2, L1/2] x [-L2/2, L2/2]`; used for the inequality
//!   experiments where a real measure is needed.

use crate::error::{Error, Result};

/// Measure convention of a grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GridMode {
    PureDiscrete,
    /// Box side lengths `l1`, `l2`; spatial step `h_d = l_d / n_d`.
    Quadrature { l1: f64, l2: f64 },
}

impl GridMode {
    pub fn is_quadrature(&self) -> bool {
        matches!(self, GridMode::Quadrature { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            GridMode::PureDiscrete => "pure-discrete",
            GridMode::Quadrature { .. } => "quadrature",
        }
    }
}

/// An `n1 x n2` grid together with its measure convention.
///
/// In `Quadrature` mode spatial samples are cell-centered,
/// `x_d ∈ { -L_d/2 + h_d·(n + 1/2) }`, frequency samples form the centered
/// lattice `ω_d ∈ { (m - n_d/2) / L_d }`, and shift samples coincide with the
/// spatial samples.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridGeometry {
    pub n1: usize,
    pub n2: usize,
    pub mode: GridMode,
}

impl GridGeometry {
    pub fn pure_discrete(n1: usize, n2: usize) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::InvalidGeometry(format!(
                "grid sizes must be positive, got {n1}x{n2}"
            )));
        }
        Ok(Self {
            n1,
            n2,
            mode: GridMode::PureDiscrete,
        })
    }

    pub fn quadrature(n1: usize, n2: usize, l1: f64, l2: f64) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::InvalidGeometry(format!(
                "grid sizes must be positive, got {n1}x{n2}"
            )));
        }
        if !(l1 > 0.0 && l1.is_finite() && l2 > 0.0 && l2.is_finite()) {
            return Err(Error::InvalidGeometry(format!(
                "box side lengths must be positive finite reals, got L1 = {l1}, L2 = {l2}"
            )));
        }
        Ok(Self {
            n1,
            n2,
            mode: GridMode::Quadrature { l1, l2 },
        })
    }

    pub fn len(&self) -> usize {
        self.n1 * self.n2
    }

    pub fn is_empty(&self) -> bool {
        false // sizes are validated positive
    }

    /// Row-major flat index of cell `(i, j)`.
    #[inline]
    pub fn flat(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.n1 && j < self.n2);
        i * self.n2 + j
    }

    fn size(&self, axis: usize) -> usize {
        if axis == 0 {
            self.n1
        } else {
            self.n2
        }
    }

    fn side(&self, axis: usize) -> f64 {
        match self.mode {
            GridMode::PureDiscrete => self.size(axis) as f64,
            GridMode::Quadrature { l1, l2 } => {
                if axis == 0 {
                    l1
                } else {
                    l2
                }
            }
        }
    }

    /// Spatial step along `axis` (1 in pure-discrete mode).
    pub fn spatial_step(&self, axis: usize) -> f64 {
        match self.mode {
            GridMode::PureDiscrete => 1.0,
            GridMode::Quadrature { .. } => self.side(axis) / self.size(axis) as f64,
        }
    }

    /// Spatial sample coordinate along `axis` at index `n`.
    pub fn spatial_coord(&self, axis: usize, n: usize) -> f64 {
        match self.mode {
            GridMode::PureDiscrete => n as f64,
            GridMode::Quadrature { .. } => {
                let h = self.spatial_step(axis);
                -self.side(axis) / 2.0 + h * (n as f64 + 0.5)
            }
        }
    }

    /// Frequency sample coordinate along `axis` at index `m`.
    pub fn freq_coord(&self, axis: usize, m: usize) -> f64 {
        match self.mode {
            GridMode::PureDiscrete => m as f64,
            GridMode::Quadrature { .. } => {
                (m as f64 - self.size(axis) as f64 / 2.0) / self.side(axis)
            }
        }
    }

    /// Spatial coordinate relative to the grid center; this is the coordinate
    /// used by centered window constructors in both modes.
    pub fn centered_coord(&self, axis: usize, n: usize) -> f64 {
        match self.mode {
            GridMode::PureDiscrete => n as f64 - (self.size(axis) as f64 - 1.0) / 2.0,
            GridMode::Quadrature { .. } => self.spatial_coord(axis, n),
        }
    }

    /// Measure of one spatial cell.
    pub fn spatial_cell_measure(&self) -> f64 {
        match self.mode {
            GridMode::PureDiscrete => 1.0,
            GridMode::Quadrature { .. } => self.spatial_step(0) * self.spatial_step(1),
        }
    }

    /// Measure of one frequency cell.
    pub fn freq_cell_measure(&self) -> f64 {
        match self.mode {
            GridMode::PureDiscrete => 1.0,
            GridMode::Quadrature { l1, l2 } => 1.0 / (l1 * l2),
        }
    }

    /// Measure of one `(ω, b)` phase-space cell.
    pub fn phase_cell_measure(&self) -> f64 {
        self.freq_cell_measure() * self.spatial_cell_measure()
    }

    pub fn same_grid(&self, other: &GridGeometry) -> bool {
        self == other
    }

    pub fn describe(&self) -> String {
        match self.mode {
            GridMode::PureDiscrete => format!("{}x{} pure-discrete", self.n1, self.n2),
            GridMode::Quadrature { l1, l2 } => {
                format!("{}x{} quadrature L=({l1}, {l2})", self.n1, self.n2)
            }
        }
    }

    pub(crate) fn check_same(&self, other: &GridGeometry) -> Result<()> {
        if self.same_grid(other) {
            Ok(())
        } else {
            Err(Error::GeometryMismatch {
                left: self.describe(),
                right: other.describe(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_sizes_and_lengths() {
        assert!(GridGeometry::pure_discrete(0, 4).is_err());
        assert!(GridGeometry::quadrature(4, 4, 0.0, 1.0).is_err());
        assert!(GridGeometry::quadrature(4, 4, 4.0, -1.0).is_err());
        assert!(GridGeometry::quadrature(4, 4, f64::NAN, 1.0).is_err());
    }

    #[test]
    fn quadrature_samples_are_centered() {
        let g = GridGeometry::quadrature(8, 8, 4.0, 4.0).unwrap();
        assert_eq!(g.spatial_step(0), 0.5);
        assert_eq!(g.spatial_coord(0, 0), -1.75);
        assert_eq!(g.spatial_coord(0, 7), 1.75);
        // symmetric around zero
        for n in 0..8 {
            assert_eq!(g.spatial_coord(0, n), -g.spatial_coord(0, 7 - n));
        }
        assert_eq!(g.freq_coord(0, 4), 0.0);
        assert_eq!(g.freq_coord(0, 0), -1.0);
    }

    #[test]
    fn total_measures() {
        let g = GridGeometry::pure_discrete(4, 6).unwrap();
        assert_eq!(g.spatial_cell_measure() * g.len() as f64, 24.0);
        let g = GridGeometry::quadrature(8, 8, 4.0, 2.0).unwrap();
        assert!((g.spatial_cell_measure() * g.len() as f64 - 8.0).abs() < 1e-12);
        // total phase-space measure is n1·n2
        let total4 = g.phase_cell_measure() * (g.len() * g.len()) as f64;
        assert!((total4 - 64.0).abs() < 1e-12);
    }
}
