//! The discrete two-sided quaternion Fourier transform.
//!
//! The transform sandwiches the signal between an i-plane exponential on the
//! left and a j-plane exponential on the right,
//!
//! ```text
//! F[m] = c · Σ_n e^{-i·θ1(n1,m1)} · f[n] · e^{-j·θ2(n2,m2)}
//! ```
//!
//! with `θ_d = 2π n_d m_d / N_d`, `c = 1/√(N1·N2)` in pure-discrete mode and
//! `θ_d = 2π x_d ω_d`, `c = h1·h2` in quadrature mode. Because the two
//! exponentials live in different planes the transform is only real-linear;
//! no reordering that assumes commutativity is applied anywhere.
//!
//! Three evaluation paths exist:
//!
//! * [`dqft_direct`] — the literal quadruple loop; the oracle every other
//!   path is tested against.
//! * an FFT path via the simplex split `f = a + b·j` and two complex 2D FFTs
//!   (pure-discrete grids with power-of-two sides);
//! * a separable row-column path with precomputed kernel tables (everything
//!   else).
//!
//! [`dqft`] dispatches to the fastest applicable path.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::geometry::{GridGeometry, GridMode};
use crate::quaternion::Quaternion;
use crate::signal::QSignal2D;
use crate::sum::pairwise_sum;

/// Spectrum of a 2D signal; same storage as [`QSignal2D`], indexed by the
/// frequency samples of its geometry.
pub type QSpectrum2D = QSignal2D;

/// A real-valued grid over frequency samples (e.g. the Q-modulus spectrum).
#[derive(Clone, Debug, PartialEq)]
pub struct RealSpectrum2D {
    pub geometry: GridGeometry,
    pub data: Vec<f64>,
}

#[derive(Clone, Copy, PartialEq)]
enum Direction {
    Forward,
    Inverse,
}

impl Direction {
    /// Sign of the exponent: forward kernels carry `e^{-θ}`, inverse `e^{+θ}`.
    fn sign(self) -> f64 {
        match self {
            Direction::Forward => -1.0,
            Direction::Inverse => 1.0,
        }
    }
}

fn scale_for(geometry: &GridGeometry, dir: Direction) -> f64 {
    match geometry.mode {
        GridMode::PureDiscrete => 1.0 / ((geometry.n1 * geometry.n2) as f64).sqrt(),
        GridMode::Quadrature { l1, l2 } => match dir {
            // Riemann sum over space, dual Riemann sum over frequency.
            Direction::Forward => geometry.spatial_step(0) * geometry.spatial_step(1),
            Direction::Inverse => 1.0 / (l1 * l2),
        },
    }
}

/// Angle `θ_d(n, m)` between spatial index `n` and frequency index `m`.
fn theta(geometry: &GridGeometry, axis: usize, n: usize, m: usize) -> f64 {
    match geometry.mode {
        GridMode::PureDiscrete => {
            let size = if axis == 0 { geometry.n1 } else { geometry.n2 };
            2.0 * std::f64::consts::PI * (n as f64) * (m as f64) / size as f64
        }
        GridMode::Quadrature { .. } => {
            2.0 * std::f64::consts::PI
                * geometry.spatial_coord(axis, n)
                * geometry.freq_coord(axis, m)
        }
    }
}

/// Literal quadruple-loop evaluation of the defining sum. This is the oracle
/// for every fast path; keep it free of shared kernel machinery.
pub fn dqft_direct(f: &QSignal2D) -> QSpectrum2D {
    let g = *f.geometry();
    let c = scale_for(&g, Direction::Forward);
    QSignal2D::from_fn(g, |m1, m2| {
        let mut acc = Quaternion::ZERO;
        for n1 in 0..g.n1 {
            let t1 = theta(&g, 0, n1, m1);
            let e1 = Complex64::new(t1.cos(), -t1.sin());
            for n2 in 0..g.n2 {
                let t2 = theta(&g, 1, n2, m2);
                let e2 = Complex64::new(t2.cos(), -t2.sin());
                let v = Quaternion::left_mul_i(e1, f.get(n1, n2));
                acc += Quaternion::right_mul_j(v, e2);
            }
        }
        acc.scale(c)
    })
}

/// Production transform: FFT path on power-of-two pure-discrete grids,
/// separable kernel path otherwise. Agrees with [`dqft_direct`] to ≤ 1e-10
/// max-abs on unit-norm inputs.
pub fn dqft(f: &QSignal2D) -> QSpectrum2D {
    transform(f, Direction::Forward)
}

/// Inverse transform: `idqft(dqft(f)) = f` up to rounding in both modes.
pub fn idqft(spectrum: &QSpectrum2D) -> QSignal2D {
    transform(spectrum, Direction::Inverse)
}

fn transform(f: &QSignal2D, dir: Direction) -> QSignal2D {
    let g = f.geometry();
    let fft_ok = g.mode == GridMode::PureDiscrete
        && g.n1.is_power_of_two()
        && g.n2.is_power_of_two();
    if fft_ok {
        transform_fft(f, dir)
    } else {
        transform_separable(f, dir)
    }
}

/// Row-column evaluation with precomputed kernel tables, O(N³) instead of the
/// direct path's O(N⁴).
fn transform_separable(f: &QSignal2D, dir: Direction) -> QSignal2D {
    let g = *f.geometry();
    let s = dir.sign();
    let scale = scale_for(&g, dir);

    // θ pairs a spatial index with a frequency index; the forward transform
    // sums over spatial indices, the inverse over frequency indices.
    let angle = |axis: usize, inp: usize, out: usize| match dir {
        Direction::Forward => theta(&g, axis, inp, out),
        Direction::Inverse => theta(&g, axis, out, inp),
    };
    // k1[out*n1_count + in] = e^{s·i·θ1}, k2[in*n2_count + out] likewise.
    let k1: Vec<Complex64> = (0..g.n1 * g.n1)
        .map(|idx| {
            let (m1, n1) = (idx / g.n1, idx % g.n1);
            let t = s * angle(0, n1, m1);
            Complex64::new(t.cos(), t.sin())
        })
        .collect();
    let k2: Vec<Complex64> = (0..g.n2 * g.n2)
        .map(|idx| {
            let (n2, m2) = (idx / g.n2, idx % g.n2);
            let t = s * angle(1, n2, m2);
            Complex64::new(t.cos(), t.sin())
        })
        .collect();

    // stage 1: contract over n1 with the left i-plane kernel
    let mut mid = vec![Quaternion::ZERO; g.n1 * g.n2];
    for m1 in 0..g.n1 {
        for n2 in 0..g.n2 {
            let mut acc = Quaternion::ZERO;
            for n1 in 0..g.n1 {
                acc += Quaternion::left_mul_i(k1[m1 * g.n1 + n1], f.get(n1, n2));
            }
            mid[m1 * g.n2 + n2] = acc;
        }
    }
    // stage 2: contract over n2 with the right j-plane kernel
    QSignal2D::from_fn(g, |m1, m2| {
        let mut acc = Quaternion::ZERO;
        for n2 in 0..g.n2 {
            acc += Quaternion::right_mul_j(mid[m1 * g.n2 + n2], k2[n2 * g.n2 + m2]);
        }
        acc.scale(scale)
    })
}

/// Forward 2D complex FFT, row-major `n1 x n2`, kernel `e^{-2πi(n1m1/N1 + n2m2/N2)}`.
fn fft2_forward(data: &mut [Complex64], n1: usize, n2: usize) {
    let mut planner = FftPlanner::new();
    let row_fft = planner.plan_fft_forward(n2);
    for row in data.chunks_exact_mut(n2) {
        row_fft.process(row);
    }
    let mut transposed = vec![Complex64::default(); n1 * n2];
    for i in 0..n1 {
        for j in 0..n2 {
            transposed[j * n1 + i] = data[i * n2 + j];
        }
    }
    let col_fft = planner.plan_fft_forward(n1);
    for col in transposed.chunks_exact_mut(n1) {
        col_fft.process(col);
    }
    for i in 0..n1 {
        for j in 0..n2 {
            data[i * n2 + j] = transposed[j * n1 + i];
        }
    }
}

/// FFT evaluation via the simplex split.
///
/// Writing `f = A + B·j` with `A`, `B` in the i-plane, the j-plane factor
/// resolves against the split as
///
/// ```text
/// (A + B·j)·e^{s·jθ2} = (A cosθ2 - s·B sinθ2) + (s·A sinθ2 + B cosθ2)·j
/// ```
///
/// and expanding cos/sin into i-plane exponentials gives
///
/// ```text
/// F_a = (E⁺(A) + E⁻(A))/2 + s·(i/2)·(E⁺(B) - E⁻(B))
/// F_b = (E⁺(B) + E⁻(B))/2 - s·(i/2)·(E⁺(A) - E⁻(A))
/// ```
///
/// with `E^σ(X) = Σ X·e^{s·iθ1}·e^{σ·iθ2}` and `s` the transform's exponent
/// sign. Every `E^σ` is the standard forward FFT of `A` or `B` read at
/// reflected indices, so two complex 2D FFTs suffice.
fn transform_fft(f: &QSignal2D, dir: Direction) -> QSignal2D {
    let g = *f.geometry();
    let (n1, n2) = (g.n1, g.n2);
    let scale = scale_for(&g, dir);
    let s = dir.sign();

    let mut a: Vec<Complex64> = Vec::with_capacity(n1 * n2);
    let mut b: Vec<Complex64> = Vec::with_capacity(n1 * n2);
    for q in f.data() {
        let (qa, qb) = q.split_simplex();
        a.push(qa);
        b.push(qb);
    }
    fft2_forward(&mut a, n1, n2);
    fft2_forward(&mut b, n1, n2);

    let neg = |m: usize, n: usize| (n - m) % n;
    let w = |grid: &[Complex64], i: usize, j: usize| grid[i * n2 + j];

    QSignal2D::from_fn(g, |m1, m2| {
        let (r1, r2) = (neg(m1, n1), neg(m2, n2));
        // E^σ(X)[m1,m2] = W_X at (m1 or -m1, m2 or -m2) depending on (s, σ).
        let (e_m_a, e_p_a, e_m_b, e_p_b) = if s < 0.0 {
            (
                w(&a, m1, m2), // E⁻(A)
                w(&a, m1, r2), // E⁺(A)
                w(&b, m1, m2), // E⁻(B)
                w(&b, m1, r2), // E⁺(B)
            )
        } else {
            (
                w(&a, r1, m2), // E⁻(A)
                w(&a, r1, r2), // E⁺(A)
                w(&b, r1, m2), // E⁻(B)
                w(&b, r1, r2), // E⁺(B)
            )
        };
        let half_i = Complex64::new(0.0, 0.5 * s);
        let fa = (e_p_a + e_m_a) * 0.5 + (e_p_b - e_m_b) * half_i;
        let fb = (e_p_b + e_m_b) * 0.5 - (e_p_a - e_m_a) * half_i;
        Quaternion::from_simplex(fa * scale, fb * scale)
    })
}

/// Q-modulus spectrum: at each frequency the sum of the moduli of the QFTs of
/// the four real components of `f`, `Σ_c |F_q{f_c}(ω)|`.
pub fn q_modulus_spectrum(f: &QSignal2D) -> RealSpectrum2D {
    let g = *f.geometry();
    let mut data = vec![0.0; g.len()];
    for c in 0..4 {
        let comp = f.map(|q| Quaternion::from_real(q.component(c)));
        let spec = dqft(&comp);
        for (acc, q) in data.iter_mut().zip(spec.data()) {
            *acc += q.norm();
        }
    }
    RealSpectrum2D { geometry: g, data }
}

/// `L^{p'}` norm of a real spectrum in the frequency-cell measure; `p' = ∞`
/// returns the max. Rejects `p' < 1`.
pub fn hy_norm(spectrum: &RealSpectrum2D, p_prime: f64) -> Result<f64> {
    if p_prime.is_nan() || p_prime < 1.0 {
        return Err(Error::InvalidExponent { p: p_prime });
    }
    if p_prime.is_infinite() {
        return Ok(spectrum.data.iter().fold(0.0f64, |m, &v| m.max(v)));
    }
    let mu = spectrum.geometry.freq_cell_measure();
    let sum = pairwise_sum(spectrum.data.len(), &|i| {
        spectrum.data[i].powf(p_prime) * mu
    });
    Ok(sum.powf(1.0 / p_prime))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::{make_window, WindowKind};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn disc(n: usize) -> GridGeometry {
        GridGeometry::pure_discrete(n, n).unwrap()
    }

    #[test]
    fn direct_delta_gives_flat_spectrum() {
        let g = disc(4);
        let delta = make_window(g, WindowKind::Delta { at: (0, 0) }, false).unwrap();
        let spec = dqft_direct(&delta);
        let expected = Quaternion::from_real(0.25);
        for &q in spec.data() {
            assert!((q - expected).norm() < 1e-14);
        }
    }

    #[test]
    fn direct_constant_gives_scaled_delta() {
        let g = disc(4);
        let ones = QSignal2D::from_fn(g, |_, _| Quaternion::ONE);
        let spec = dqft_direct(&ones);
        for m1 in 0..4 {
            for m2 in 0..4 {
                let expected = if m1 == 0 && m2 == 0 {
                    Quaternion::from_real(4.0)
                } else {
                    Quaternion::ZERO
                };
                assert!(
                    (spec.get(m1, m2) - expected).norm() < 1e-12,
                    "at ({m1},{m2})"
                );
            }
        }
    }

    #[test]
    fn direct_j_delta_gives_flat_j_spectrum() {
        let g = disc(4);
        let mut f = QSignal2D::zeros(g);
        f.set(0, 0, Quaternion::J);
        let spec = dqft_direct(&f);
        let expected = Quaternion::J.scale(0.25);
        for &q in spec.data() {
            assert!((q - expected).norm() < 1e-14);
        }
    }

    #[test]
    fn fft_path_matches_direct_on_random_signals() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in [4usize, 8] {
            for _ in 0..50 {
                let f = QSignal2D::random(disc(n), &mut rng).normalized_l2().unwrap();
                let exact = dqft_direct(&f);
                let fast = dqft(&f);
                assert!(fast.max_abs_diff(&exact) <= 1e-10);
            }
        }
    }

    #[test]
    fn separable_path_matches_direct_in_both_modes() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        // non-power-of-two pure-discrete grid exercises the separable fallback
        let g = GridGeometry::pure_discrete(6, 5).unwrap();
        for _ in 0..20 {
            let f = QSignal2D::random(g, &mut rng).normalized_l2().unwrap();
            assert!(dqft(&f).max_abs_diff(&dqft_direct(&f)) <= 1e-10);
        }
        let g = GridGeometry::quadrature(8, 8, 4.0, 4.0).unwrap();
        for _ in 0..20 {
            let f = QSignal2D::random(g, &mut rng).normalized_l2().unwrap();
            assert!(dqft(&f).max_abs_diff(&dqft_direct(&f)) <= 1e-10);
        }
    }

    #[test]
    fn real_linearity_over_scalars() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let g = disc(8);
        for _ in 0..20 {
            let f = QSignal2D::random(g, &mut rng);
            let h = QSignal2D::random(g, &mut rng);
            let (a, b) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            let combo = f.scaled(a).add(&h.scaled(b)).unwrap();
            let lhs = dqft(&combo);
            let rhs = dqft(&f).scaled(a).add(&dqft(&h).scaled(b)).unwrap();
            assert!(lhs.max_abs_diff(&rhs) <= 1e-11);
        }
    }

    #[test]
    fn unitarity_in_pure_discrete_mode() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..100 {
            let f = QSignal2D::random(disc(8), &mut rng);
            let spec = dqft(&f);
            let (a, b) = (spec.l2_norm(), f.l2_norm());
            assert!((a - b).abs() <= 1e-11 * b);
        }
    }

    #[test]
    fn inverse_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        for _ in 0..100 {
            let f = QSignal2D::random(disc(8), &mut rng);
            let back = idqft(&dqft(&f));
            assert!(back.rel_l2_error(&f) <= 1e-10);
        }
        // quadrature mode round trip (separable path)
        let g = GridGeometry::quadrature(8, 8, 4.0, 4.0).unwrap();
        for _ in 0..20 {
            let f = QSignal2D::random(g, &mut rng);
            let back = idqft(&dqft(&f));
            assert!(back.rel_l2_error(&f) <= 1e-10);
        }
        // and the inverse also undoes the literal direct transform
        let f = QSignal2D::random(disc(8), &mut rng);
        assert!(idqft(&dqft_direct(&f)).rel_l2_error(&f) <= 1e-10);
    }

    #[test]
    fn inverse_of_flat_spectrum_is_delta() {
        let g = disc(8);
        let flat = QSignal2D::from_fn(g, |_, _| Quaternion::from_real(1.0 / 8.0));
        let f = idqft(&flat);
        let mut expected = QSignal2D::zeros(g);
        expected.set(0, 0, Quaternion::ONE);
        assert!(f.max_abs_diff(&expected) < 1e-12);
        assert!(idqft(&QSignal2D::zeros(g)).is_zero());
    }

    #[test]
    fn q_modulus_reduces_to_modulus_for_real_signals() {
        let mut rng = ChaCha8Rng::seed_from_u64(26);
        let g = disc(8);
        let f = QSignal2D::from_fn(g, |_, _| Quaternion::from_real(rng.random_range(-1.0..1.0)));
        let qm = q_modulus_spectrum(&f);
        let spec = dqft(&f);
        for (v, q) in qm.data.iter().zip(spec.data()) {
            assert!((v - q.norm()).abs() < 1e-12);
        }
    }

    #[test]
    fn q_modulus_of_delta_is_component_sum() {
        let g = disc(4);
        let q0 = Quaternion::new(0.3, -0.7, 0.2, 0.9);
        let mut f = QSignal2D::zeros(g);
        f.set(0, 0, q0);
        let qm = q_modulus_spectrum(&f);
        let expected = (q0.w.abs() + q0.x.abs() + q0.y.abs() + q0.z.abs()) / 4.0;
        for &v in &qm.data {
            assert!((v - expected).abs() < 1e-13);
        }
    }

    #[test]
    fn q_modulus_dominates_plain_modulus() {
        let mut rng = ChaCha8Rng::seed_from_u64(27);
        for _ in 0..20 {
            let f = QSignal2D::random(disc(8), &mut rng);
            let qm = q_modulus_spectrum(&f);
            let spec = dqft(&f);
            for (v, q) in qm.data.iter().zip(spec.data()) {
                assert!(*v >= q.norm() - 1e-12);
            }
        }
    }

    #[test]
    fn hy_norm_endpoints() {
        let mut rng = ChaCha8Rng::seed_from_u64(28);
        let g = disc(8);
        let f = QSignal2D::from_fn(g, |_, _| Quaternion::from_real(rng.random_range(-1.0..1.0)));
        let qm = q_modulus_spectrum(&f);
        // p' = 2 on a real signal: Plancherel per component
        let h2 = hy_norm(&qm, 2.0).unwrap();
        assert!((h2 - f.l2_norm()).abs() <= 1e-11 * f.l2_norm());
        // p' = ∞: the max of the Q-modulus
        let hm = hy_norm(&qm, f64::INFINITY).unwrap();
        let max = qm.data.iter().cloned().fold(0.0f64, f64::max);
        assert_eq!(hm, max);
        // zero signal
        let z = q_modulus_spectrum(&QSignal2D::zeros(g));
        assert_eq!(hy_norm(&z, 2.0).unwrap(), 0.0);
        // bad exponent
        assert!(hy_norm(&qm, 0.5).is_err());
    }
}
