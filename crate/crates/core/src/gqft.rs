//! Forward and inverse two-sided Gabor quaternion Fourier transform and
//! phase-space energy accounting.
//!
//! For each shift `b` the forward transform analyzes `f` against the
//! conjugated translate of the window,
//!
//! ```text
//! G[·, b] = dqft( f ⊙ conj(φ(· - b)) )
//! ```
//!
//! with the pointwise quaternion product taken in the written order
//! `f·conj(φ)`. Shifts are circular, so summing `|φ(n-b)|²` over all shifts
//! reproduces `‖φ‖₂²` at every cell and the discrete inversion below is an
//! exact algebraic identity.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::GridGeometry;
use crate::mask::{MaskDomain, RegionMask};
use crate::qft::{dqft, idqft, QSpectrum2D};
use crate::quaternion::Quaternion;
use crate::signal::QSignal2D;
use crate::sum::pairwise_sum;

/// Gabor phase-space field on an `n1 x n2` grid, indexed `(m1, m2, b1, b2)`
/// row-major. Stores `‖φ‖₂²` captured when the field was created so inversion
/// and projections never recompute it against a mutated window.
#[derive(Clone, Debug, PartialEq)]
pub struct GaborField4D {
    geometry: GridGeometry,
    window_norm_sq: f64,
    data: Vec<Quaternion>,
}

impl GaborField4D {
    pub fn zeros(geometry: GridGeometry, window_norm_sq: f64) -> Self {
        let len = geometry.len() * geometry.len();
        Self {
            geometry,
            window_norm_sq,
            data: vec![Quaternion::ZERO; len],
        }
    }

    pub fn from_raw(
        geometry: GridGeometry,
        window_norm_sq: f64,
        data: Vec<Quaternion>,
    ) -> Result<Self> {
        if data.len() != geometry.len() * geometry.len() {
            return Err(Error::InvalidGeometry(format!(
                "field length {} does not match {} phase-space cells",
                data.len(),
                geometry.len() * geometry.len()
            )));
        }
        Ok(Self {
            geometry,
            window_norm_sq,
            data,
        })
    }

    /// Uniform random components in `[-1, 1)`; used as power-iteration seeds.
    pub fn random(
        geometry: GridGeometry,
        window_norm_sq: f64,
        rng: &mut impl rand::Rng,
    ) -> Self {
        let len = geometry.len() * geometry.len();
        let data = (0..len)
            .map(|_| {
                Quaternion::new(
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                )
            })
            .collect();
        Self {
            geometry,
            window_norm_sq,
            data,
        }
    }

    pub fn geometry(&self) -> &GridGeometry {
        &self.geometry
    }

    pub fn window_norm_sq(&self) -> f64 {
        self.window_norm_sq
    }

    pub fn data(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn flat(&self, m1: usize, m2: usize, b1: usize, b2: usize) -> usize {
        let g = &self.geometry;
        ((m1 * g.n2 + m2) * g.n1 + b1) * g.n2 + b2
    }

    #[inline]
    pub fn get(&self, m1: usize, m2: usize, b1: usize, b2: usize) -> Quaternion {
        self.data[self.flat(m1, m2, b1, b2)]
    }

    /// The frequency slice `G[·, ·, b1, b2]` as a spectrum.
    pub fn spectrum_at_shift(&self, b1: usize, b2: usize) -> QSpectrum2D {
        QSpectrum2D::from_fn(self.geometry, |m1, m2| self.get(m1, m2, b1, b2))
    }

    fn set_spectrum_at_shift(&mut self, b1: usize, b2: usize, spec: &QSpectrum2D) {
        for m1 in 0..self.geometry.n1 {
            for m2 in 0..self.geometry.n2 {
                let idx = self.flat(m1, m2, b1, b2);
                self.data[idx] = spec.get(m1, m2);
            }
        }
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            geometry: self.geometry,
            window_norm_sq: self.window_norm_sq,
            data: self.data.iter().map(|q| q.scale(c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.geometry.check_same(&other.geometry)?;
        Ok(Self {
            geometry: self.geometry,
            window_norm_sq: self.window_norm_sq,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        })
    }

    /// Squared `L²` norm in the phase-space measure.
    pub fn norm_sqr(&self) -> f64 {
        let mu4 = self.geometry.phase_cell_measure();
        pairwise_sum(self.data.len(), &|i| self.data[i].norm_sqr()) * mu4
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Real inner product `Re Σ F·conj(G)·μ_cell4`; the Hilbert-space
    /// structure used by projections and power iteration.
    pub fn inner_re(&self, other: &Self) -> f64 {
        let mu4 = self.geometry.phase_cell_measure();
        pairwise_sum(self.data.len(), &|i| {
            let (p, q) = (self.data[i], other.data[i]);
            p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z
        }) * mu4
    }

    pub fn max_modulus(&self) -> f64 {
        self.data.iter().map(|q| q.norm()).fold(0.0, f64::max)
    }
}

fn check_window(window: &QSignal2D) -> Result<f64> {
    let n2 = window.l2_norm_sqr();
    if n2 == 0.0 {
        return Err(Error::ZeroWindow);
    }
    Ok(n2)
}

/// Forward GQFT: for every shift `b` transforms `f ⊙ conj(φ(·-b))`.
/// Rejects a zero window and mismatched geometries.
pub fn gqft_forward(f: &QSignal2D, window: &QSignal2D) -> Result<GaborField4D> {
    f.geometry().check_same(window.geometry())?;
    let window_norm_sq = check_window(window)?;
    let g = *f.geometry();

    let slices: Vec<QSpectrum2D> = (0..g.len())
        .into_par_iter()
        .map(|flat_b| {
            let (b1, b2) = (flat_b / g.n2, flat_b % g.n2);
            let shifted = window.circular_shift(b1 as isize, b2 as isize);
            let prod = f
                .mul_conj(&shifted)
                .expect("geometries validated above");
            dqft(&prod)
        })
        .collect();

    let mut field = GaborField4D::zeros(g, window_norm_sq);
    for (flat_b, spec) in slices.iter().enumerate() {
        field.set_spectrum_at_shift(flat_b / g.n2, flat_b % g.n2, spec);
    }
    Ok(field)
}

/// Inverse GQFT:
///
/// ```text
/// f = (1/‖φ‖₂²) Σ_b ( idqft(G[·,b]) ⊙ φ(·-b) ) · μ_b
/// ```
///
/// using the `‖φ‖₂²` stored in the field. Round-trips `gqft_forward` exactly
/// up to rounding because `Σ_b |φ(n-b)|²·μ_b = ‖φ‖₂²` at every cell.
pub fn gqft_inverse(field: &GaborField4D, window: &QSignal2D) -> Result<QSignal2D> {
    field.geometry().check_same(window.geometry())?;
    check_window(window)?;
    let g = *field.geometry();
    let mu_b = g.spatial_cell_measure();

    let contributions: Vec<QSignal2D> = (0..g.len())
        .into_par_iter()
        .map(|flat_b| {
            let (b1, b2) = (flat_b / g.n2, flat_b % g.n2);
            let sig = idqft(&field.spectrum_at_shift(b1, b2));
            let shifted = window.circular_shift(b1 as isize, b2 as isize);
            sig.mul_pointwise(&shifted)
                .expect("geometries validated above")
        })
        .collect();

    // fixed-order reduction over shifts
    let mut acc = QSignal2D::zeros(g);
    for c in &contributions {
        acc = acc.add(c).expect("geometries match");
    }
    Ok(acc.scaled(mu_b / field.window_norm_sq()))
}

/// Phase-space energy `Σ |G|²·μ_cell4` over all cells, or over a mask's
/// member cells when one is given.
pub fn gabor_energy(field: &GaborField4D, mask: Option<&RegionMask>) -> Result<f64> {
    let mu4 = field.geometry().phase_cell_measure();
    match mask {
        None => Ok(field.norm_sqr()),
        Some(m) => {
            m.require_domain(MaskDomain::Phase4D)?;
            field.geometry().check_same(m.geometry())?;
            let data = field.data();
            let sum = pairwise_sum(data.len(), &|i| {
                if m.contains_flat(i) {
                    data[i].norm_sqr()
                } else {
                    0.0
                }
            });
            Ok(sum * mu4)
        }
    }
}
