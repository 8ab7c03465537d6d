//! Projection operators on the phase-space field, operator-norm estimation
//! by power iteration, annihilation constants, and the Benedicks-type probe.
//!
//! Quaternion fields are treated as a real Hilbert space with inner product
//! `Re Σ F·conj(G)·μ_cell4`; the two-sided transform is only real-linear, so
//! adjointness and power iteration are defined there. `P_Σ` multiplies by the
//! region indicator; `P_φ` is the orthogonal projector onto the range of the
//! Gabor analysis map, realized as analysis after adjoint synthesis.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gqft::{gqft_forward, gqft_inverse, GaborField4D};
use crate::mask::{MaskDomain, RegionMask};
use crate::report::CheckReport;
use crate::signal::{require_quadrature, QSignal2D};
use crate::tol;

/// Multiplies the field by the region indicator `χ_Σ`; idempotent and
/// norm-nonincreasing.
pub fn project_mask(field: &GaborField4D, sigma: &RegionMask) -> Result<GaborField4D> {
    sigma.require_domain(MaskDomain::Phase4D)?;
    field.geometry().check_same(sigma.geometry())?;
    let data = field
        .data()
        .iter()
        .enumerate()
        .map(|(i, &q)| {
            if sigma.contains_flat(i) {
                q
            } else {
                crate::quaternion::Quaternion::ZERO
            }
        })
        .collect();
    GaborField4D::from_raw(*field.geometry(), field.window_norm_sq(), data)
}

/// Orthogonal projection onto `{ G_φ f : f }`: applies the adjoint synthesis
/// (the inversion formula) and re-analyzes with the forward transform. Fixes
/// fields of the form `gqft_forward(f, φ)` and is idempotent up to rounding.
pub fn project_range(field: &GaborField4D, window: &QSignal2D) -> Result<GaborField4D> {
    let synthesized = gqft_inverse(field, window)?;
    gqft_forward(&synthesized, window)
}

/// Power-iteration settings; `seed` drives the random start field.
#[derive(Clone, Copy, Debug)]
pub struct PowerIterConfig {
    pub max_iters: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for PowerIterConfig {
    fn default() -> Self {
        Self {
            max_iters: tol::POWER_ITER_MAX,
            tol: tol::POWER_ITER_TOL,
            seed: 7,
        }
    }
}

impl PowerIterConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}

/// Estimate of `ρ = ‖P_Σ P_φ‖` with convergence diagnostics.
#[derive(Clone, Copy, Debug)]
pub struct OperatorNormEstimate {
    /// Square root of the dominant eigenvalue of `P_φ P_Σ P_φ`, clamped to
    /// `[0, 1 + 1e-6]`.
    pub rho: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Estimates `ρ = ‖P_Σ P_φ‖` as the square root of the dominant eigenvalue of
/// `T = P_φ P_Σ P_φ` by power iteration, starting from a seeded random field
/// passed once through `P_φ`. Iterates until the Rayleigh quotient changes by
/// less than `cfg.tol` or the iteration budget runs out (the last estimate is
/// then returned flagged as unconverged).
pub fn operator_norm(
    window: &QSignal2D,
    sigma: &RegionMask,
    cfg: &PowerIterConfig,
) -> Result<OperatorNormEstimate> {
    let window_norm_sq = window.l2_norm_sqr();
    if window_norm_sq == 0.0 {
        return Err(Error::ZeroWindow);
    }
    sigma.require_domain(MaskDomain::Phase4D)?;
    window.geometry().check_same(sigma.geometry())?;

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let start = GaborField4D::random(*window.geometry(), window_norm_sq, &mut rng);
    let mut f = project_range(&start, window)?;
    let n0 = f.norm();
    if n0 == 0.0 {
        return Ok(OperatorNormEstimate {
            rho: 0.0,
            iterations: 0,
            converged: true,
        });
    }
    f = f.scaled(1.0 / n0);

    // On the invariant subspace range(P_φ) the operator T acts as P_φ∘P_Σ,
    // so one range projection per step suffices.
    let mut lambda = 0.0;
    let mut lambda_prev = f64::INFINITY;
    let mut iterations = 0;
    let mut converged = false;
    while iterations < cfg.max_iters {
        iterations += 1;
        let masked = project_mask(&f, sigma)?;
        let y = project_range(&masked, window)?;
        lambda = y.inner_re(&f);
        let yn = y.norm();
        if yn == 0.0 {
            lambda = 0.0;
            converged = true;
            break;
        }
        if (lambda - lambda_prev).abs() < cfg.tol {
            converged = true;
            break;
        }
        lambda_prev = lambda;
        f = y.scaled(1.0 / yn);
    }
    let rho = lambda.max(0.0).sqrt().min(1.0 + tol::RHO_TOL);
    Ok(OperatorNormEstimate {
        rho,
        iterations,
        converged,
    })
}

/// The annihilation constant `C(Σ) = 1/√(1 - ρ²)` bounding
/// `‖f‖₂·‖φ‖₂ <= C(Σ)·(energy of G_φ f on Σ^c)^{1/2}`. Errors when the
/// estimated `ρ` reaches 1, i.e. Σ is not numerically strongly annihilating
/// for this window.
pub fn annihilation_constant(
    window: &QSignal2D,
    sigma: &RegionMask,
    cfg: &PowerIterConfig,
) -> Result<f64> {
    let est = operator_norm(window, sigma, cfg)?;
    if est.rho >= 1.0 {
        return Err(Error::NotAnnihilating { rho: est.rho });
    }
    Ok(1.0 / (1.0 - est.rho * est.rho).sqrt())
}

/// Least-squares slope of `ln‖F_k‖` against `k` over the given iteration
/// window; returns the per-step geometric rate `e^{slope}`, or 0 when a norm
/// in the window vanishes.
fn fit_decay_rate(norms: &[f64], from: usize, to: usize) -> f64 {
    let pts: Vec<(f64, f64)> = (from..=to)
        .filter(|&k| k < norms.len())
        .map(|k| (k as f64, norms[k]))
        .collect();
    if pts.iter().any(|&(_, n)| n <= 0.0) {
        return 0.0;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1.ln()).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1.ln()).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    slope.exp()
}

const DECAY_ITERS: usize = 50;
const FIT_FROM: usize = 10;

/// Numerical probe of the Benedicks-type statement for `Σ = S × B_R` and a
/// window supported in the spatial ball `B_r`.
///
/// For each seed this estimates `ρ = ‖P_Σ P_φ‖` and runs the alternating
/// projections `F_{k+1} = P_Σ P_φ F_k` from a random start, recording the
/// fitted geometric decay rate. The probe passes iff every seed gives
/// `ρ < 1` and `‖F_50‖/‖F_0‖ <= ρ^50·(1 + 1e-6)`.
pub fn benedicks_probe(
    window: &QSignal2D,
    support_radius: f64,
    s_mask: &RegionMask,
    shift_radius: f64,
    trials: usize,
    base_seed: u64,
) -> Result<CheckReport> {
    require_quadrature(window.geometry())?;
    let offending = window.support_outside_ball(support_radius);
    if !offending.is_empty() {
        return Err(Error::SupportViolation {
            radius: support_radius,
            cells: offending,
        });
    }
    if window.is_zero() {
        return Err(Error::ZeroWindow);
    }
    s_mask.require_domain(MaskDomain::Freq2D)?;
    window.geometry().check_same(s_mask.geometry())?;
    let sigma = RegionMask::product_s_ball(s_mask, shift_radius)?;

    let window_norm_sq = window.l2_norm_sqr();
    let mut rhos = Vec::with_capacity(trials);
    let mut ratios = Vec::with_capacity(trials);
    let mut rates = Vec::with_capacity(trials);
    let mut iters = Vec::with_capacity(trials);
    let mut all_pass = true;
    let mut worst_rate: f64 = 0.0;
    let mut rho_max: f64 = 0.0;

    for k in 0..trials {
        let seed = base_seed.wrapping_add(k as u64);
        let est = operator_norm(window, &sigma, &PowerIterConfig::with_seed(seed))?;

        // alternating projections from a fresh random field
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
        let mut f = GaborField4D::random(*window.geometry(), window_norm_sq, &mut rng);
        let mut norms = Vec::with_capacity(DECAY_ITERS + 1);
        norms.push(f.norm());
        for _ in 0..DECAY_ITERS {
            f = project_mask(&project_range(&f, window)?, &sigma)?;
            norms.push(f.norm());
        }
        let ratio = norms[DECAY_ITERS] / norms[0];
        let bound = est.rho.powi(DECAY_ITERS as i32) * (1.0 + tol::DECAY_SLACK);
        let pass = est.rho < 1.0 && ratio <= bound;
        all_pass &= pass;

        worst_rate = worst_rate.max(ratio.powf(1.0 / DECAY_ITERS as f64));
        rho_max = rho_max.max(est.rho);
        rhos.push(est.rho);
        ratios.push(ratio);
        rates.push(fit_decay_rate(&norms, FIT_FROM, DECAY_ITERS));
        iters.push(est.iterations as u64);
    }

    let mut report = CheckReport {
        name: "benedicks-probe".into(),
        lhs: worst_rate,
        rhs: rho_max,
        ratio: worst_rate / rho_max,
        pass: all_pass,
        params: Default::default(),
    };
    report.set("rho", rhos);
    report.set("delta", 1.0 - rho_max);
    report.set("ratio_50", ratios);
    report.set("decay_rate_fit", rates);
    report.set("power_iterations", iters);
    report.set("trials", trials as u64);
    report.set("base_seed", base_seed);
    report.set("support_radius", support_radius);
    report.set("shift_radius", shift_radius);
    report.set("s_measure", s_mask.measure());
    report.set("sigma_measure", sigma.measure());
    report.set("tol", tol::DECAY_SLACK);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::GridGeometry;
    use crate::gqft::gabor_energy;
    use crate::quaternion::Quaternion;
    use crate::signal::{make_window, WindowKind};
    use rand::Rng;
    use rand_chacha::ChaCha8Rng;

    fn disc(n: usize) -> GridGeometry {
        GridGeometry::pure_discrete(n, n).unwrap()
    }

    fn quad(n: usize, l: f64) -> GridGeometry {
        GridGeometry::quadrature(n, n, l, l).unwrap()
    }

    #[test]
    fn mask_projection_is_idempotent_and_pythagorean() {
        let g = disc(4);
        let mut rng = ChaCha8Rng::seed_from_u64(81);
        let f = QSignal2D::random(g, &mut rng);
        let w = QSignal2D::random(g, &mut rng);
        let field = gqft_forward(&f, &w).unwrap();
        let sigma = RegionMask::random(MaskDomain::Phase4D, g, 0.3, &mut rng);

        let proj = project_mask(&field, &sigma).unwrap();
        assert_eq!(project_mask(&proj, &sigma).unwrap(), proj);

        let comp = project_mask(&field, &sigma.complement()).unwrap();
        let total = field.norm_sqr();
        assert!((proj.norm_sqr() + comp.norm_sqr() - total).abs() <= 1e-12 * total);

        // P_Σ P_{Σ^c} = 0 exactly
        let both = project_mask(&comp, &sigma).unwrap();
        assert!(both.data().iter().all(|q| q.norm_sqr() == 0.0));

        // full mask is the identity, empty mask annihilates
        assert_eq!(
            project_mask(&field, &RegionMask::full(MaskDomain::Phase4D, g)).unwrap(),
            field
        );
        assert!(
            project_mask(&field, &RegionMask::empty(MaskDomain::Phase4D, g))
                .unwrap()
                .data()
                .iter()
                .all(|q| q.norm_sqr() == 0.0)
        );
    }

    #[test]
    fn range_projection_fixes_analyzed_fields() {
        let g = disc(8);
        let mut rng = ChaCha8Rng::seed_from_u64(82);
        for _ in 0..10 {
            let f = QSignal2D::random(g, &mut rng);
            let w = QSignal2D::random(g, &mut rng);
            let field = gqft_forward(&f, &w).unwrap();
            let proj = project_range(&field, &w).unwrap();
            let diff = proj.sub(&field).unwrap().norm();
            assert!(diff <= 1e-9 * field.norm());
        }
    }

    #[test]
    fn range_projection_is_idempotent_and_self_adjoint() {
        let g = disc(4);
        let mut rng = ChaCha8Rng::seed_from_u64(83);
        let w = QSignal2D::random(g, &mut rng);
        let nsq = w.l2_norm_sqr();
        for _ in 0..10 {
            let field = GaborField4D::random(g, nsq, &mut rng);
            let p1 = project_range(&field, &w).unwrap();
            let p2 = project_range(&p1, &w).unwrap();
            assert!(p2.sub(&p1).unwrap().norm() <= 1e-9 * p1.norm().max(1.0));

            // self-adjointness in the real inner product
            let other = GaborField4D::random(g, nsq, &mut rng);
            let lhs = p1.inner_re(&other);
            let rhs = field.inner_re(&project_range(&other, &w).unwrap());
            assert!((lhs - rhs).abs() <= 1e-9 * lhs.abs().max(1.0));

            // zero maps to zero
            let zero = GaborField4D::zeros(g, nsq);
            assert!(project_range(&zero, &w).unwrap().norm() == 0.0);
        }
    }

    #[test]
    fn operator_norm_full_and_empty_masks() {
        let g = disc(4);
        let mut rng = ChaCha8Rng::seed_from_u64(84);
        let w = QSignal2D::random(g, &mut rng);
        let full = RegionMask::full(MaskDomain::Phase4D, g);
        let est = operator_norm(&w, &full, &PowerIterConfig::default()).unwrap();
        assert!((est.rho - 1.0).abs() <= 1e-6, "rho = {}", est.rho);
        assert!(est.converged);

        let empty = RegionMask::empty(MaskDomain::Phase4D, g);
        let est = operator_norm(&w, &empty, &PowerIterConfig::default()).unwrap();
        assert!(est.rho <= 1e-8);

        let zero = QSignal2D::zeros(g);
        assert!(matches!(
            operator_norm(&zero, &full, &PowerIterConfig::default()),
            Err(Error::ZeroWindow)
        ));
    }

    #[test]
    fn operator_norm_monotone_under_mask_inclusion() {
        let g = disc(4);
        let mut rng = ChaCha8Rng::seed_from_u64(85);
        let w = QSignal2D::random(g, &mut rng);
        let small = RegionMask::random_with_count(MaskDomain::Phase4D, g, 20, &mut rng).unwrap();
        let mid = small
            .union(&RegionMask::random_with_count(MaskDomain::Phase4D, g, 60, &mut rng).unwrap())
            .unwrap();
        let big = mid
            .union(&RegionMask::random_with_count(MaskDomain::Phase4D, g, 120, &mut rng).unwrap())
            .unwrap();
        assert!(small.is_subset_of(&mid).unwrap() && mid.is_subset_of(&big).unwrap());
        let cfg = PowerIterConfig::default();
        let r1 = operator_norm(&w, &small, &cfg).unwrap().rho;
        let r2 = operator_norm(&w, &mid, &cfg).unwrap().rho;
        let r3 = operator_norm(&w, &big, &cfg).unwrap().rho;
        assert!(r1 <= r2 + 1e-6 && r2 <= r3 + 1e-6, "{r1} {r2} {r3}");
        for r in [r1, r2, r3] {
            assert!((0.0..=1.0 + 1e-6).contains(&r));
        }
    }

    #[test]
    fn annihilation_constant_empty_mask_is_plancherel() {
        let g = disc(4);
        let mut rng = ChaCha8Rng::seed_from_u64(86);
        let w = QSignal2D::random(g, &mut rng);
        let empty = RegionMask::empty(MaskDomain::Phase4D, g);
        let c = annihilation_constant(&w, &empty, &PowerIterConfig::default()).unwrap();
        assert!((c - 1.0).abs() <= 1e-9);
        // with C = 1 the bound is the Plancherel equality
        let f = QSignal2D::random(g, &mut rng);
        let field = gqft_forward(&f, &w).unwrap();
        let escaped = gabor_energy(&field, Some(&empty.complement())).unwrap();
        let lhs = f.l2_norm() * w.l2_norm();
        assert!((lhs - c * escaped.sqrt()).abs() <= 1e-10 * lhs);
    }

    #[test]
    fn annihilation_bound_holds_for_random_signals() {
        let g = disc(4);
        let mut rng = ChaCha8Rng::seed_from_u64(87);
        let w = QSignal2D::random(g, &mut rng);
        let sigma = RegionMask::random_with_count(MaskDomain::Phase4D, g, 12, &mut rng).unwrap();
        let cfg = PowerIterConfig::default();
        let est = operator_norm(&w, &sigma, &cfg).unwrap();
        assert!(est.rho < 1.0);
        let c = annihilation_constant(&w, &sigma, &cfg).unwrap();
        for _ in 0..100 {
            let f = QSignal2D::random(g, &mut rng);
            let field = gqft_forward(&f, &w).unwrap();
            let escaped = gabor_energy(&field, Some(&sigma.complement())).unwrap();
            let lhs = f.l2_norm() * w.l2_norm();
            let rhs = c * escaped.sqrt();
            assert!(lhs <= rhs * (1.0 + 1e-9), "lhs={lhs} rhs={rhs}");
        }
    }

    #[test]
    fn annihilation_constant_full_mask_is_degenerate() {
        // the full phase space never annihilates: rho reaches 1 up to float
        // rounding, so the constant either errors out or blows up
        let g = disc(4);
        let mut rng = ChaCha8Rng::seed_from_u64(90);
        let w = QSignal2D::random(g, &mut rng);
        let full = RegionMask::full(MaskDomain::Phase4D, g);
        match annihilation_constant(&w, &full, &PowerIterConfig::default()) {
            Err(Error::NotAnnihilating { rho }) => assert!(rho >= 1.0),
            Ok(c) => assert!(c > 1e6, "expected a degenerate constant, got {c}"),
            Err(other) => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn annihilation_constant_grows_along_nested_chain() {
        let g = disc(4);
        let mut rng = ChaCha8Rng::seed_from_u64(88);
        let w = QSignal2D::random(g, &mut rng);
        let cfg = PowerIterConfig::default();
        let mut mask = RegionMask::random_with_count(MaskDomain::Phase4D, g, 10, &mut rng).unwrap();
        let mut prev_c = 0.0;
        for _ in 0..4 {
            let c = annihilation_constant(&w, &mask, &cfg).unwrap();
            assert!(c >= prev_c - 1e-6);
            prev_c = c;
            mask = mask
                .union(
                    &RegionMask::random_with_count(MaskDomain::Phase4D, g, 40, &mut rng).unwrap(),
                )
                .unwrap();
        }
    }

    #[test]
    fn benedicks_probe_delta_window_and_strip() {
        let g = quad(8, 4.0);
        // delta sits at the cell nearest the origin; support radius one cell
        let w = make_window(g, WindowKind::Delta { at: (4, 4) }, true).unwrap();
        let r = 0.5;
        assert!(w.support_outside_ball(r).is_empty());
        // half-plane strip in frequency
        let s = RegionMask::rect(MaskDomain::Freq2D, g, &[(0.0, 10.0), (-10.0, 10.0)]).unwrap();
        let report = benedicks_probe(&w, r, &s, 1.0, 3, 7).unwrap();
        assert!(report.pass, "{report:?}");
        assert!(report.rhs < 1.0);
    }

    #[test]
    fn benedicks_probe_empty_s_collapses_immediately() {
        let g = quad(8, 4.0);
        let w = make_window(g, WindowKind::Delta { at: (4, 4) }, true).unwrap();
        let s = RegionMask::empty(MaskDomain::Freq2D, g);
        let report = benedicks_probe(&w, 0.5, &s, 1.0, 2, 7).unwrap();
        assert!(report.pass);
        assert_eq!(report.rhs, 0.0);
        // F_1 = P_Σ(...) with empty Σ is the zero field, so the ratio is 0
        let ratios = report.params["ratio_50"].as_array().unwrap();
        assert!(ratios.iter().all(|v| v.as_f64().unwrap() == 0.0));
    }

    #[test]
    fn benedicks_probe_rejects_support_violation() {
        let g = quad(8, 4.0);
        let w = make_window(g, WindowKind::Gaussian { sigma: 1.0 }, true).unwrap();
        // full gaussian is supported everywhere; radius L/8 must fail
        let s = RegionMask::rect(MaskDomain::Freq2D, g, &[(-0.4, 0.4), (-0.4, 0.4)]).unwrap();
        match benedicks_probe(&w, 0.5, &s, 1.0, 1, 7) {
            Err(Error::SupportViolation { cells, .. }) => assert!(!cells.is_empty()),
            other => panic!("expected support violation, got {other:?}"),
        }
    }

    #[test]
    fn benedicks_probe_truncated_gaussian() {
        let g = quad(8, 4.0);
        let w = make_window(g, WindowKind::Gaussian { sigma: 0.5 }, false)
            .unwrap()
            .truncated_to_spatial_ball(0.5)
            .normalized_l2()
            .unwrap();
        assert!(w.support_outside_ball(0.5).is_empty());
        let s = RegionMask::rect(
            MaskDomain::Freq2D,
            g,
            &[(-0.354, 0.354), (-0.354, 0.354)],
        )
        .unwrap();
        let report = benedicks_probe(&w, 0.5, &s, 1.0, 2, 11).unwrap();
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn quaternion_window_projections_still_work() {
        let g = disc(4);
        let mut rng = ChaCha8Rng::seed_from_u64(89);
        // fully quaternionic window
        let w = QSignal2D::from_fn(g, |_, _| {
            Quaternion::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            )
        });
        let f = QSignal2D::random(g, &mut rng);
        let field = gqft_forward(&f, &w).unwrap();
        let proj = project_range(&field, &w).unwrap();
        assert!(proj.sub(&field).unwrap().norm() <= 1e-9 * field.norm());
    }
}
