//! Measurable subsets of the frequency grid and of phase space.
//!
//! A mask stores one membership bit per cell; membership of the geometric
//! kinds (balls, rectangles, products) is decided from the cell's center
//! coordinates, so complement masks partition the grid exactly. Measures
//! follow the grid's cell-measure convention: a frequency cell weighs
//! `1/(L1·L2)` and a phase-space cell `(h1·h2)/(L1·L2)` in quadrature mode,
//! both 1 in pure-discrete mode.

use rand::seq::index::sample;
use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::GridGeometry;

/// Which grid a mask lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaskDomain {
    /// The 2D frequency grid, cells indexed `(m1, m2)`.
    Freq2D,
    /// The 4D phase-space grid, cells indexed `(m1, m2, b1, b2)`.
    Phase4D,
}

impl MaskDomain {
    pub fn name(&self) -> &'static str {
        match self {
            MaskDomain::Freq2D => "freq2d",
            MaskDomain::Phase4D => "phase4d",
        }
    }
}

/// A measurable subset Σ of a frequency or phase-space grid.
#[derive(Clone, Debug, PartialEq)]
pub struct RegionMask {
    domain: MaskDomain,
    geometry: GridGeometry,
    cells: Vec<bool>,
}

fn domain_len(domain: MaskDomain, geometry: &GridGeometry) -> usize {
    match domain {
        MaskDomain::Freq2D => geometry.len(),
        MaskDomain::Phase4D => geometry.len() * geometry.len(),
    }
}

impl RegionMask {
    pub fn empty(domain: MaskDomain, geometry: GridGeometry) -> Self {
        Self {
            domain,
            cells: vec![false; domain_len(domain, &geometry)],
            geometry,
        }
    }

    pub fn full(domain: MaskDomain, geometry: GridGeometry) -> Self {
        Self {
            domain,
            cells: vec![true; domain_len(domain, &geometry)],
            geometry,
        }
    }

    /// Membership from a predicate on cell-center coordinates. Frequency
    /// cells see `(ω1, ω2)`, phase-space cells `(ω1, ω2, b1, b2)` with the
    /// shift coordinates equal to the spatial samples.
    pub fn from_predicate(
        domain: MaskDomain,
        geometry: GridGeometry,
        pred: impl Fn(&[f64]) -> bool,
    ) -> Self {
        let mut mask = Self::empty(domain, geometry);
        match domain {
            MaskDomain::Freq2D => {
                for m1 in 0..geometry.n1 {
                    for m2 in 0..geometry.n2 {
                        let c = [geometry.freq_coord(0, m1), geometry.freq_coord(1, m2)];
                        mask.cells[geometry.flat(m1, m2)] = pred(&c);
                    }
                }
            }
            MaskDomain::Phase4D => {
                let n = geometry.len();
                for mf in 0..n {
                    let (m1, m2) = (mf / geometry.n2, mf % geometry.n2);
                    let w1 = geometry.freq_coord(0, m1);
                    let w2 = geometry.freq_coord(1, m2);
                    for bf in 0..n {
                        let (b1, b2) = (bf / geometry.n2, bf % geometry.n2);
                        let c = [
                            w1,
                            w2,
                            geometry.spatial_coord(0, b1),
                            geometry.spatial_coord(1, b2),
                        ];
                        mask.cells[mf * n + bf] = pred(&c);
                    }
                }
            }
        }
        mask
    }

    /// Ball of the given radius centered at the coordinate origin; a cell
    /// belongs iff its center's Euclidean norm is < radius.
    pub fn ball(domain: MaskDomain, geometry: GridGeometry, radius: f64) -> Self {
        Self::from_predicate(domain, geometry, |c| {
            c.iter().map(|v| v * v).sum::<f64>() < radius * radius
        })
    }

    /// Axis-aligned box: cell centers with `lo_d <= coord_d <= hi_d` for every
    /// axis. Two bounds pairs for `Freq2D`, four for `Phase4D`.
    pub fn rect(domain: MaskDomain, geometry: GridGeometry, bounds: &[(f64, f64)]) -> Result<Self> {
        let want = match domain {
            MaskDomain::Freq2D => 2,
            MaskDomain::Phase4D => 4,
        };
        if bounds.len() != want {
            return Err(Error::InvalidGeometry(format!(
                "rect mask on {} needs {want} bounds pairs, got {}",
                domain.name(),
                bounds.len()
            )));
        }
        let bounds = bounds.to_vec();
        Ok(Self::from_predicate(domain, geometry, move |c| {
            c.iter()
                .zip(&bounds)
                .all(|(v, (lo, hi))| *lo <= *v && *v <= *hi)
        }))
    }

    /// Product region `S × B_R`: frequency part in the 2D mask `S`, shift part
    /// in the spatial ball of radius `R`.
    pub fn product_s_ball(s: &RegionMask, radius: f64) -> Result<Self> {
        s.require_domain(MaskDomain::Freq2D)?;
        let geometry = s.geometry;
        let n = geometry.len();
        let mut mask = Self::empty(MaskDomain::Phase4D, geometry);
        for mf in 0..n {
            if !s.cells[mf] {
                continue;
            }
            for bf in 0..n {
                let (b1, b2) = (bf / geometry.n2, bf % geometry.n2);
                let x1 = geometry.spatial_coord(0, b1);
                let x2 = geometry.spatial_coord(1, b2);
                mask.cells[mf * n + bf] = x1 * x1 + x2 * x2 < radius * radius;
            }
        }
        Ok(mask)
    }

    /// Mask from explicit cell indices: `(m1, m2)` pairs for `Freq2D`,
    /// `(m1, m2, b1, b2)` quadruples for `Phase4D`.
    pub fn explicit(
        domain: MaskDomain,
        geometry: GridGeometry,
        cells: &[Vec<usize>],
    ) -> Result<Self> {
        let mut mask = Self::empty(domain, geometry);
        let arity = match domain {
            MaskDomain::Freq2D => 2,
            MaskDomain::Phase4D => 4,
        };
        for idx in cells {
            let ok = idx.len() == arity
                && idx
                    .iter()
                    .enumerate()
                    .all(|(a, &v)| v < if a % 2 == 0 { geometry.n1 } else { geometry.n2 });
            if !ok {
                return Err(Error::MaskIndexOutOfBounds {
                    index: idx.clone(),
                    n1: geometry.n1,
                    n2: geometry.n2,
                });
            }
            let flat = match domain {
                MaskDomain::Freq2D => geometry.flat(idx[0], idx[1]),
                MaskDomain::Phase4D => {
                    (geometry.flat(idx[0], idx[1])) * geometry.len() + geometry.flat(idx[2], idx[3])
                }
            };
            mask.cells[flat] = true;
        }
        Ok(mask)
    }

    /// Each cell included independently with the given probability.
    pub fn random(
        domain: MaskDomain,
        geometry: GridGeometry,
        density: f64,
        rng: &mut impl Rng,
    ) -> Self {
        let mut mask = Self::empty(domain, geometry);
        for c in mask.cells.iter_mut() {
            *c = rng.random::<f64>() < density;
        }
        mask
    }

    /// Exactly `count` member cells, sampled uniformly without replacement.
    pub fn random_with_count(
        domain: MaskDomain,
        geometry: GridGeometry,
        count: usize,
        rng: &mut impl Rng,
    ) -> Result<Self> {
        let len = domain_len(domain, &geometry);
        if count > len {
            return Err(Error::InvalidGeometry(format!(
                "cannot choose {count} member cells from {len}"
            )));
        }
        let mut mask = Self::empty(domain, geometry);
        for i in sample(rng, len, count) {
            mask.cells[i] = true;
        }
        Ok(mask)
    }

    pub fn domain(&self) -> MaskDomain {
        self.domain
    }

    pub fn geometry(&self) -> &GridGeometry {
        &self.geometry
    }

    pub fn require_domain(&self, expected: MaskDomain) -> Result<()> {
        if self.domain == expected {
            Ok(())
        } else {
            Err(Error::MaskDomainMismatch {
                expected: expected.name().into(),
                got: self.domain.name().into(),
            })
        }
    }

    #[inline]
    pub fn contains_flat(&self, flat: usize) -> bool {
        self.cells[flat]
    }

    pub fn count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    pub fn is_mask_empty(&self) -> bool {
        self.count() == 0
    }

    /// Per-cell measure for the mask's domain.
    pub fn cell_measure(&self) -> f64 {
        match self.domain {
            MaskDomain::Freq2D => self.geometry.freq_cell_measure(),
            MaskDomain::Phase4D => self.geometry.phase_cell_measure(),
        }
    }

    /// `m(Σ)` = member-cell count times the cell measure.
    pub fn measure(&self) -> f64 {
        self.count() as f64 * self.cell_measure()
    }

    pub fn complement(&self) -> Self {
        Self {
            domain: self.domain,
            geometry: self.geometry,
            cells: self.cells.iter().map(|c| !c).collect(),
        }
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self {
            domain: self.domain,
            geometry: self.geometry,
            cells: self
                .cells
                .iter()
                .zip(&other.cells)
                .map(|(&a, &b)| a || b)
                .collect(),
        })
    }

    pub fn is_subset_of(&self, other: &Self) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self
            .cells
            .iter()
            .zip(&other.cells)
            .all(|(&a, &b)| !a || b))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        self.require_domain(other.domain)?;
        self.geometry.check_same(&other.geometry)
    }
}
