//! Quaternion-valued signals on 2D grids: norms, inner products, circular
//! shifts, window constructors and RGB ingestion.

use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::GridGeometry;
use crate::quaternion::Quaternion;
use crate::sum::{pairwise_sum, pairwise_sum4};

/// A discrete quaternion-valued signal together with its grid geometry.
///
/// Signals are immutable after construction; every operation returns a new
/// value.
#[derive(Clone, Debug, PartialEq)]
pub struct QSignal2D {
    geometry: GridGeometry,
    data: Vec<Quaternion>,
}

impl QSignal2D {
    pub fn zeros(geometry: GridGeometry) -> Self {
        Self {
            data: vec![Quaternion::ZERO; geometry.len()],
            geometry,
        }
    }

    pub fn from_fn(geometry: GridGeometry, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut data = Vec::with_capacity(geometry.len());
        for i in 0..geometry.n1 {
            for j in 0..geometry.n2 {
                data.push(f(i, j));
            }
        }
        Self { geometry, data }
    }

    pub fn from_data(geometry: GridGeometry, data: Vec<Quaternion>) -> Result<Self> {
        if data.len() != geometry.len() {
            return Err(Error::InvalidGeometry(format!(
                "data length {} does not match grid {}",
                data.len(),
                geometry.describe()
            )));
        }
        Ok(Self { geometry, data })
    }

    /// Uniform random components in `[-1, 1)`.
    pub fn random(geometry: GridGeometry, rng: &mut impl Rng) -> Self {
        Self::from_fn(geometry, |_, _| {
            Quaternion::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            )
        })
    }

    pub fn geometry(&self) -> &GridGeometry {
        &self.geometry
    }

    pub fn data(&self) -> &[Quaternion] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Quaternion {
        self.data[self.geometry.flat(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, q: Quaternion) {
        let idx = self.geometry.flat(i, j);
        self.data[idx] = q;
    }

    /// `L^p` norm with the grid's cell measure and the outer `1/p` power;
    /// `p = ∞` returns the max modulus. Rejects `p < 1`.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidExponent { p });
        }
        if p.is_infinite() {
            let mut max = 0.0f64;
            for q in &self.data {
                max = max.max(q.norm());
            }
            return Ok(max);
        }
        let mu = self.geometry.spatial_cell_measure();
        let sum = pairwise_sum(self.data.len(), &|i| self.data[i].norm().powf(p) * mu);
        Ok(sum.powf(1.0 / p))
    }

    /// `L²` norm (always defined).
    pub fn l2_norm(&self) -> f64 {
        self.l2_norm_sqr().sqrt()
    }

    pub fn l2_norm_sqr(&self) -> f64 {
        let mu = self.geometry.spatial_cell_measure();
        pairwise_sum(self.data.len(), &|i| self.data[i].norm_sqr() * mu)
    }

    /// Quaternionic inner product `Σ f[n]·conj(g[n])·μ_cell`.
    pub fn inner_product(&self, other: &QSignal2D) -> Result<Quaternion> {
        self.geometry.check_same(&other.geometry)?;
        let mu = self.geometry.spatial_cell_measure();
        let acc = pairwise_sum4(self.data.len(), &|i| {
            (self.data[i] * other.data[i].conj()).scale(mu).to_array()
        });
        Ok(Quaternion::from_array(acc))
    }

    /// Circularly shifted signal: `out[n] = f[(n - b) mod (n1, n2)]`.
    pub fn circular_shift(&self, b1: isize, b2: isize) -> QSignal2D {
        let n1 = self.geometry.n1 as isize;
        let n2 = self.geometry.n2 as isize;
        QSignal2D::from_fn(self.geometry, |i, j| {
            let si = (i as isize - b1).rem_euclid(n1) as usize;
            let sj = (j as isize - b2).rem_euclid(n2) as usize;
            self.get(si, sj)
        })
    }

    pub fn scaled(&self, c: f64) -> QSignal2D {
        self.map(|q| q.scale(c))
    }

    /// Pointwise left multiplication by a constant quaternion.
    pub fn left_mul(&self, q: Quaternion) -> QSignal2D {
        self.map(|v| q * v)
    }

    pub fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> QSignal2D {
        QSignal2D {
            geometry: self.geometry,
            data: self.data.iter().map(|&q| f(q)).collect(),
        }
    }

    pub fn add(&self, other: &QSignal2D) -> Result<QSignal2D> {
        self.geometry.check_same(&other.geometry)?;
        Ok(QSignal2D {
            geometry: self.geometry,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &QSignal2D) -> Result<QSignal2D> {
        self.geometry.check_same(&other.geometry)?;
        Ok(QSignal2D {
            geometry: self.geometry,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        })
    }

    /// Pointwise product `self[n]·conj(other[n])` in that order.
    pub fn mul_conj(&self, other: &QSignal2D) -> Result<QSignal2D> {
        self.geometry.check_same(&other.geometry)?;
        Ok(QSignal2D {
            geometry: self.geometry,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a * b.conj())
                .collect(),
        })
    }

    /// Pointwise product `self[n]·other[n]` in that order.
    pub fn mul_pointwise(&self, other: &QSignal2D) -> Result<QSignal2D> {
        self.geometry.check_same(&other.geometry)?;
        Ok(QSignal2D {
            geometry: self.geometry,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a * b)
                .collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|q| q.norm_sqr() == 0.0)
    }

    /// Rescaled to unit `L²` norm; rejects the zero signal.
    pub fn normalized_l2(&self) -> Result<QSignal2D> {
        let n = self.l2_norm();
        if n == 0.0 {
            return Err(Error::ZeroWindow);
        }
        Ok(self.scaled(1.0 / n))
    }

    /// Max-abs deviation between two signals over all components.
    pub fn max_abs_diff(&self, other: &QSignal2D) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| {
                let d = a - b;
                d.w.abs().max(d.x.abs()).max(d.y.abs()).max(d.z.abs())
            })
            .fold(0.0, f64::max)
    }

    /// Relative `L²` distance `‖self - other‖₂ / ‖other‖₂` (absolute when
    /// `other` is zero).
    pub fn rel_l2_error(&self, other: &QSignal2D) -> f64 {
        let diff = self
            .sub(other)
            .expect("rel_l2_error requires matching geometry")
            .l2_norm();
        let denom = other.l2_norm();
        if denom == 0.0 {
            diff
        } else {
            diff / denom
        }
    }

    /// Zeroes every cell whose centered spatial coordinate lies outside the
    /// ball of the given radius.
    pub fn truncated_to_spatial_ball(&self, radius: f64) -> QSignal2D {
        QSignal2D::from_fn(self.geometry, |i, j| {
            let x1 = self.geometry.centered_coord(0, i);
            let x2 = self.geometry.centered_coord(1, j);
            if x1 * x1 + x2 * x2 < radius * radius {
                self.get(i, j)
            } else {
                Quaternion::ZERO
            }
        })
    }

    /// Cells with nonzero value whose centered spatial coordinate lies outside
    /// the ball of the given radius.
    pub fn support_outside_ball(&self, radius: f64) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.geometry.n1 {
            for j in 0..self.geometry.n2 {
                if self.get(i, j).norm_sqr() > 0.0 {
                    let x1 = self.geometry.centered_coord(0, i);
                    let x2 = self.geometry.centered_coord(1, j);
                    if x1 * x1 + x2 * x2 >= radius * radius {
                        out.push((i, j));
                    }
                }
            }
        }
        out
    }
}

/// Window shapes for [`make_window`]. All are real-valued and centered at the
/// grid's center coordinate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WindowKind {
    /// `exp(-π(x1² + x2²)/σ²)` sampled at cell centers.
    Gaussian { sigma: f64 },
    /// Indicator of the centered rectangle `|x_d| <= half_d`.
    Box { half1: f64, half2: f64 },
    /// Single-cell spike at the given `(i, j)` index.
    Delta { at: (usize, usize) },
}

/// Builds a real-valued window on the given geometry; rejects an all-zero
/// result (degenerate box, underflowed Gaussian). With `normalize` the result
/// is scaled to unit `L²` norm.
pub fn make_window(geometry: GridGeometry, kind: WindowKind, normalize: bool) -> Result<QSignal2D> {
    let w = match kind {
        WindowKind::Gaussian { sigma } => {
            if !(sigma > 0.0 && sigma.is_finite()) {
                return Err(Error::InvalidGeometry(format!(
                    "gaussian window needs sigma > 0, got {sigma}"
                )));
            }
            QSignal2D::from_fn(geometry, |i, j| {
                let x1 = geometry.centered_coord(0, i);
                let x2 = geometry.centered_coord(1, j);
                let v = (-std::f64::consts::PI * (x1 * x1 + x2 * x2) / (sigma * sigma)).exp();
                Quaternion::from_real(v)
            })
        }
        WindowKind::Box { half1, half2 } => QSignal2D::from_fn(geometry, |i, j| {
            let x1 = geometry.centered_coord(0, i);
            let x2 = geometry.centered_coord(1, j);
            if x1.abs() <= half1 && x2.abs() <= half2 {
                Quaternion::ONE
            } else {
                Quaternion::ZERO
            }
        }),
        WindowKind::Delta { at } => {
            let (i0, j0) = at;
            if i0 >= geometry.n1 || j0 >= geometry.n2 {
                return Err(Error::InvalidGeometry(format!(
                    "delta position ({i0}, {j0}) out of bounds for grid {}x{}",
                    geometry.n1, geometry.n2
                )));
            }
            let mut s = QSignal2D::zeros(geometry);
            s.set(i0, j0, Quaternion::ONE);
            s
        }
    };
    if w.is_zero() {
        return Err(Error::ZeroWindow);
    }
    if normalize {
        w.normalized_l2()
    } else {
        Ok(w)
    }
}

/// Encodes an 8-bit RGB image as a pure quaternion signal,
/// `f = i·R/255 + j·G/255 + k·B/255`, on a pure-discrete grid.
pub fn from_rgb_image(n1: usize, n2: usize, pixels: &[u8]) -> Result<QSignal2D> {
    if pixels.len() != n1 * n2 * 3 {
        return Err(Error::InvalidGeometry(format!(
            "rgb buffer length {} does not match {n1}x{n2}x3",
            pixels.len()
        )));
    }
    let geometry = GridGeometry::pure_discrete(n1, n2)?;
    Ok(QSignal2D::from_fn(geometry, |i, j| {
        let p = (i * n2 + j) * 3;
        Quaternion::new(
            0.0,
            pixels[p] as f64 / 255.0,
            pixels[p + 1] as f64 / 255.0,
            pixels[p + 2] as f64 / 255.0,
        )
    }))
}

/// Inverse of [`from_rgb_image`]; exact for signals produced by it.
pub fn to_rgb_image(signal: &QSignal2D) -> Vec<u8> {
    let to_byte = |v: f64| (v * 255.0).round().clamp(0.0, 255.0) as u8;
    let mut out = Vec::with_capacity(signal.data().len() * 3);
    for q in signal.data() {
        out.push(to_byte(q.x));
        out.push(to_byte(q.y));
        out.push(to_byte(q.z));
    }
    out
}

/// Checks that a geometry is in quadrature mode.
pub fn require_quadrature(geometry: &GridGeometry) -> Result<()> {
    if geometry.mode.is_quadrature() {
        Ok(())
    } else {
        Err(Error::WrongMode {
            required: "quadrature".into(),
            got: geometry.mode.name().into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn disc(n: usize) -> GridGeometry {
        GridGeometry::pure_discrete(n, n).unwrap()
    }

    #[test]
    fn l2_norm_of_delta_and_constant() {
        let g = disc(4);
        let delta = make_window(g, WindowKind::Delta { at: (0, 0) }, false).unwrap();
        assert_eq!(delta.lp_norm(2.0).unwrap(), 1.0);
        let ones = QSignal2D::from_fn(g, |_, _| Quaternion::ONE);
        assert_eq!(ones.lp_norm(2.0).unwrap(), 4.0);
    }

    #[test]
    fn lp_norm_matches_naive_loop() {
        let g = GridGeometry::quadrature(8, 8, 4.0, 4.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = QSignal2D::random(g, &mut rng);
        // independent summation oracle: plain sequential loop
        let mu = g.spatial_cell_measure();
        let mut acc = 0.0;
        for q in f.data() {
            acc += q.norm().powi(3) * mu;
        }
        let oracle = acc.powf(1.0 / 3.0);
        let got = f.lp_norm(3.0).unwrap();
        assert!((got - oracle).abs() / oracle < 1e-12);
    }

    #[test]
    fn l2_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let f = QSignal2D::random(GridGeometry::quadrature(8, 8, 4.0, 4.0).unwrap(), &mut rng);
        let via_lp = f.lp_norm(2.0).unwrap().powi(2);
        let direct = f.l2_norm_sqr();
        assert!((via_lp - direct).abs() <= 1e-12 * direct);
    }

    #[test]
    fn lp_norm_rejects_bad_exponents() {
        let f = QSignal2D::zeros(disc(4));
        assert!(matches!(
            f.lp_norm(0.5),
            Err(Error::InvalidExponent { .. })
        ));
        assert!(f.lp_norm(f64::INFINITY).is_ok());
    }

    #[test]
    fn inner_product_with_self_is_real_norm_squared() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let f = QSignal2D::random(disc(8), &mut rng);
        let ip = f.inner_product(&f).unwrap();
        let n2 = f.l2_norm_sqr();
        assert!((ip.w - n2).abs() < 1e-12 * n2);
        assert!(ip.x.abs() < 1e-12 && ip.y.abs() < 1e-12 && ip.z.abs() < 1e-12);
    }

    #[test]
    fn inner_product_disjoint_supports_is_zero() {
        let g = disc(4);
        let mut f = QSignal2D::zeros(g);
        let mut h = QSignal2D::zeros(g);
        f.set(0, 0, Quaternion::new(1.0, 2.0, 3.0, 4.0));
        h.set(2, 2, Quaternion::new(4.0, 3.0, 2.0, 1.0));
        assert_eq!(f.inner_product(&h).unwrap(), Quaternion::ZERO);
    }

    #[test]
    fn left_multiplication_pulls_out_of_inner_product() {
        // ⟨i·f, f⟩ = i·‖f‖² for real-valued f
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let g = disc(8);
        let f = QSignal2D::from_fn(g, |_, _| Quaternion::from_real(rng.random_range(-1.0..1.0)));
        let ip = f.left_mul(Quaternion::I).inner_product(&f).unwrap();
        let expected = Quaternion::I.scale(f.l2_norm_sqr());
        assert!((ip - expected).norm() < 1e-12 * expected.norm());
    }

    #[test]
    fn inner_product_rejects_geometry_mismatch() {
        let f = QSignal2D::zeros(disc(4));
        let h = QSignal2D::zeros(disc(8));
        assert!(matches!(
            f.inner_product(&h),
            Err(Error::GeometryMismatch { .. })
        ));
    }

    #[test]
    fn circular_shift_identity_and_delta() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let f = QSignal2D::random(disc(8), &mut rng);
        assert_eq!(f.circular_shift(0, 0), f);

        let g = disc(8);
        let delta = make_window(g, WindowKind::Delta { at: (0, 0) }, false).unwrap();
        let shifted = delta.circular_shift(2, 3);
        assert_eq!(shifted.get(2, 3), Quaternion::ONE);
        assert_eq!(shifted.lp_norm(1.0).unwrap(), 1.0);
    }

    #[test]
    fn circular_shift_preserves_l2_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..100 {
            let f = QSignal2D::random(disc(8), &mut rng);
            let b1 = rng.random_range(-8i64..16) as isize;
            let b2 = rng.random_range(-8i64..16) as isize;
            let s = f.circular_shift(b1, b2);
            assert!((s.l2_norm() - f.l2_norm()).abs() < 1e-12 * f.l2_norm());
        }
    }

    #[test]
    fn scaling_property_of_lp_norms() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let f = QSignal2D::random(GridGeometry::quadrature(8, 8, 4.0, 4.0).unwrap(), &mut rng);
        for p in [1.0, 1.5, 2.0, 4.0, f64::INFINITY] {
            let c = 2.75;
            let lhs = f.scaled(c).lp_norm(p).unwrap();
            let rhs = c * f.lp_norm(p).unwrap();
            assert!((lhs - rhs).abs() < 1e-12 * rhs.max(1.0));
        }
    }

    #[test]
    fn hoelder_inequality_on_random_signals() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let g = GridGeometry::quadrature(8, 8, 4.0, 4.0).unwrap();
        for &(p, q) in &[(2.0, 2.0), (4.0, 4.0 / 3.0), (1.0, f64::INFINITY)] {
            for _ in 0..50 {
                let f = QSignal2D::random(g, &mut rng);
                let h = QSignal2D::random(g, &mut rng);
                let ip = f.inner_product(&h).unwrap().norm();
                let bound = f.lp_norm(p).unwrap() * h.lp_norm(q).unwrap();
                assert!(ip <= bound * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn window_constructors() {
        let g = disc(8);
        let delta = make_window(g, WindowKind::Delta { at: (0, 0) }, true).unwrap();
        assert!((delta.l2_norm() - 1.0).abs() < 1e-15);

        // box covering the whole grid equals the constant signal
        let b = make_window(
            g,
            WindowKind::Box {
                half1: 100.0,
                half2: 100.0,
            },
            false,
        )
        .unwrap();
        assert!(b.data().iter().all(|&q| q == Quaternion::ONE));

        // degenerate box has no cells
        let gq = GridGeometry::quadrature(8, 8, 4.0, 4.0).unwrap();
        assert!(matches!(
            make_window(
                gq,
                WindowKind::Box {
                    half1: 0.01,
                    half2: 0.01
                },
                false
            ),
            Err(Error::ZeroWindow)
        ));
    }

    #[test]
    fn gaussian_l2_matches_analytic_integral() {
        // ∫ exp(-2π|x|²) dx = 1/2 over the plane
        let g = GridGeometry::quadrature(32, 32, 8.0, 8.0).unwrap();
        let w = make_window(g, WindowKind::Gaussian { sigma: 1.0 }, false).unwrap();
        let n2 = w.l2_norm_sqr();
        assert!((n2 - 0.5).abs() / 0.5 < 0.01, "got {n2}");
    }

    #[test]
    fn rgb_round_trip_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(18);
        let (n1, n2) = (5, 7);
        let pixels: Vec<u8> = (0..n1 * n2 * 3).map(|_| rng.random()).collect();
        let f = from_rgb_image(n1, n2, &pixels).unwrap();
        assert_eq!(to_rgb_image(&f), pixels);

        let black = from_rgb_image(2, 2, &[0; 12]).unwrap();
        assert!(black.is_zero());

        let red: Vec<u8> = [255, 0, 0].repeat(4);
        let f = from_rgb_image(2, 2, &red).unwrap();
        assert!(f
            .data()
            .iter()
            .all(|&q| q == Quaternion::new(0.0, 1.0, 0.0, 0.0)));
    }
}
