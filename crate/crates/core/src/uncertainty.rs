//! Numerical checkers for the concentration, local-uncertainty,
//! weighted-moment, Hölder sup and Hausdorff–Young statements.
//!
//! Every checker computes both sides of its inequality in the same discrete
//! measure and returns a [`CheckReport`]; the only slack applied absorbs
//! float rounding. Checkers are pure given their inputs; randomized sweeps
//! live with the callers, which record seeds into the reports.

use crate::error::{Error, Result};
use crate::gqft::{gabor_energy, gqft_forward, GaborField4D};
use crate::mask::{MaskDomain, RegionMask};
use crate::qft::{hy_norm, q_modulus_spectrum};
use crate::report::CheckReport;
use crate::signal::{require_quadrature, QSignal2D};
use crate::sum::pairwise_sum;
use crate::tol;

/// Result of measuring how much phase-space energy escapes a region.
#[derive(Clone, Copy, Debug)]
pub struct EpsilonConcentration {
    /// `ε = 1 - energy(G, Σ)`, clamped to `[0, 1]`.
    pub epsilon: f64,
    /// Whether clamping changed the raw value.
    pub clamped: bool,
    pub masked_energy: f64,
    pub total_energy: f64,
}

/// Concentration defect `ε` of a unit-energy field on Σ. Rejects fields whose
/// total energy deviates from 1 by more than [`tol::UNIT_ENERGY`].
pub fn concentration_epsilon(
    field: &GaborField4D,
    sigma: &RegionMask,
) -> Result<EpsilonConcentration> {
    let total = gabor_energy(field, None)?;
    if (total - 1.0).abs() > tol::UNIT_ENERGY {
        return Err(Error::UnnormalizedInput {
            energy: total,
            tol: tol::UNIT_ENERGY,
        });
    }
    let masked = gabor_energy(field, Some(sigma))?;
    let raw = 1.0 - masked;
    let epsilon = raw.clamp(0.0, 1.0);
    Ok(EpsilonConcentration {
        epsilon,
        clamped: raw != epsilon,
        masked_energy: masked,
        total_energy: total,
    })
}

/// Concentration lower bound: if the field of a unit pair `(f, φ)` holds at
/// least `1 - ε` of its energy on Σ then `1 - ε <= m(Σ)`.
pub fn check_concentration_lower_bound(
    f: &QSignal2D,
    window: &QSignal2D,
    sigma: &RegionMask,
) -> Result<CheckReport> {
    require_quadrature(f.geometry())?;
    sigma.require_domain(MaskDomain::Phase4D)?;
    let field = gqft_forward(f, window)?;
    let eps = concentration_epsilon(&field, sigma)?;
    let lhs = 1.0 - eps.epsilon;
    let rhs = sigma.measure();
    Ok(
        CheckReport::inequality_additive(
            "concentration-lower-bound",
            lhs,
            rhs,
            tol::CONCENTRATION_SLACK,
        )
        .with("epsilon", eps.epsilon)
        .with("clamped", eps.clamped)
        .with("sigma_measure", rhs)
        .with("mode", f.geometry().mode.name()),
    )
}

/// Local uncertainty: for `0 < m(Σ) < 1`,
/// `‖f‖₂·‖φ‖₂ <= (1 - m(Σ))^{-1/2}·(energy on Σ^c)^{1/2}`.
pub fn check_local_uncertainty(
    f: &QSignal2D,
    window: &QSignal2D,
    sigma: &RegionMask,
) -> Result<CheckReport> {
    require_quadrature(f.geometry())?;
    sigma.require_domain(MaskDomain::Phase4D)?;
    let m = sigma.measure();
    if !(m > 0.0 && m < 1.0) {
        return Err(Error::MeasureOutOfRange { measure: m });
    }
    let lhs = f.l2_norm() * window.l2_norm();
    // a zero window annihilates both sides; the transform would reject it
    if window.is_zero() {
        return Ok(CheckReport::inequality(
            "local-uncertainty",
            0.0,
            0.0,
            tol::INEQ_SLACK,
        )
        .with("sigma_measure", m)
        .with("degenerate", "zero window"));
    }
    let field = gqft_forward(f, window)?;
    let escaped = gabor_energy(&field, Some(&sigma.complement()))?;
    let rhs = escaped.sqrt() / (1.0 - m).sqrt();
    Ok(
        CheckReport::inequality("local-uncertainty", lhs, rhs, tol::INEQ_SLACK)
            .with("sigma_measure", m)
            .with("complement_energy", escaped),
    )
}

/// Weighted-moment bound,
/// `‖f‖₂·‖φ‖₂ <= C_s·( Σ |(ω,b)|^{2s}·|G|²·μ )^{1/2}`
/// with `C_s = 1/(t^s·√(1 - m(B_t)))` for an admissible ball radius `t`
/// (`m(B_t) < 1`). With `t = None` the radius minimizing `C_s` is chosen by a
/// 32-point grid search.
pub fn check_weighted_bound(
    f: &QSignal2D,
    window: &QSignal2D,
    s: f64,
    t: Option<f64>,
) -> Result<CheckReport> {
    require_quadrature(f.geometry())?;
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::InvalidExponent { p: s });
    }
    let g = *f.geometry();
    let n = g.len();

    // cell-center norms |(ω, b)| over the 4D grid, row-major (m1, m2, b1, b2)
    let mut cell_norms = vec![0.0f64; n * n];
    for mf in 0..n {
        let (m1, m2) = (mf / g.n2, mf % g.n2);
        let w1 = g.freq_coord(0, m1);
        let w2 = g.freq_coord(1, m2);
        for bf in 0..n {
            let (b1, b2) = (bf / g.n2, bf % g.n2);
            let x1 = g.spatial_coord(0, b1);
            let x2 = g.spatial_coord(1, b2);
            cell_norms[mf * n + bf] = (w1 * w1 + w2 * w2 + x1 * x1 + x2 * x2).sqrt();
        }
    }
    let mu4 = g.phase_cell_measure();
    let ball_measure = |t: f64| {
        cell_norms.iter().filter(|&&v| v < t).count() as f64 * mu4
    };

    let chosen_t = match t {
        Some(t) => {
            if t.is_nan() || t <= 0.0 || ball_measure(t) >= 1.0 {
                return Err(Error::NoAdmissibleRadius);
            }
            t
        }
        None => {
            let t_max = cell_norms.iter().cloned().fold(0.0f64, f64::max);
            let mut best: Option<(f64, f64)> = None; // (C_s, t)
            for k in 1..=32 {
                let cand = t_max * k as f64 / 32.0;
                let m = ball_measure(cand);
                if m < 1.0 {
                    let c = 1.0 / (cand.powf(s) * (1.0 - m).sqrt());
                    if best.is_none_or(|(bc, _)| c < bc) {
                        best = Some((c, cand));
                    }
                }
            }
            best.ok_or(Error::NoAdmissibleRadius)?.1
        }
    };
    let m_ball = ball_measure(chosen_t);
    let c_s = 1.0 / (chosen_t.powf(s) * (1.0 - m_ball).sqrt());

    let field = gqft_forward(f, window)?;
    let data = field.data();
    let moment_sq = pairwise_sum(data.len(), &|i| {
        cell_norms[i].powf(2.0 * s) * data[i].norm_sqr()
    }) * mu4;
    let m_s = moment_sq.sqrt();

    let lhs = f.l2_norm() * window.l2_norm();
    let rhs = c_s * m_s;
    Ok(
        CheckReport::inequality("weighted-bound", lhs, rhs, tol::INEQ_SLACK)
            .with("s", s)
            .with("t", chosen_t)
            .with("c_s", c_s)
            .with("m_s", m_s)
            .with("ball_measure", m_ball)
            .with("t_auto", t.is_none()),
    )
}

/// Hölder sup bound: `max |G| <= ‖f‖_q·‖φ‖_p` with `1/p + 1/q = 1`.
pub fn check_young_sup(f: &QSignal2D, window: &QSignal2D, p: f64) -> Result<CheckReport> {
    require_quadrature(f.geometry())?;
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::InvalidExponent { p });
    }
    let q = p / (p - 1.0);
    let field = gqft_forward(f, window)?;
    let lhs = field.max_modulus();
    let rhs = f.lp_norm(q)? * window.lp_norm(p)?;
    Ok(
        CheckReport::inequality("young-sup", lhs, rhs, tol::INEQ_SLACK)
            .with("p", p)
            .with("q", q),
    )
}

/// Hausdorff–Young with the Q-modulus norm:
/// `hy_norm(|F_q f|_q, p') <= ‖f‖_p` for `p ∈ [1, 2]`.
///
/// Asserted only when `f` has a single nonzero real component; for
/// multi-component signals the component-sum modulus can exceed `‖f‖_p` by a
/// factor up to 2, so the ratio is reported without a verdict.
pub fn check_hausdorff_young(f: &QSignal2D, p: f64) -> Result<CheckReport> {
    if !(1.0..=2.0).contains(&p) {
        return Err(Error::InvalidExponent { p });
    }
    let p_prime = if p == 1.0 { f64::INFINITY } else { p / (p - 1.0) };
    let qmod = q_modulus_spectrum(f);
    let lhs = hy_norm(&qmod, p_prime)?;
    let rhs = f.lp_norm(p)?;
    let components = (0..4)
        .filter(|&c| f.data().iter().any(|q| q.component(c) != 0.0))
        .count();
    let report = if components <= 1 {
        CheckReport::inequality("hausdorff-young", lhs, rhs, tol::INEQ_SLACK)
    } else {
        CheckReport::report_only("hausdorff-young", lhs, rhs)
    };
    // non-finite p' serializes as null
    Ok(report
        .with("p", p)
        .with("p_prime", p_prime)
        .with("nonzero_components", components)
        .with("mode", f.geometry().mode.name()))
}
