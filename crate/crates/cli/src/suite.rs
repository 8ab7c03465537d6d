//! Named verification suites.
//!
//! Each suite sweeps randomized trials through the core checkers and folds
//! the outcome into aggregated [`CheckReport`]s carrying the worst trial and
//! everything needed to reproduce the run (seed, sizes, mode, trial count).
//! Trials are seeded per index so results are independent of thread count.

use rayon::prelude::*;

use qgabor_core::{
    benedicks_probe, check_concentration_lower_bound, check_hausdorff_young,
    check_local_uncertainty, check_weighted_bound, check_young_sup, dqft, dqft_direct,
    gabor_energy, gqft_forward, gqft_inverse, make_window, operator_norm, tol,
    annihilation_constant, CheckReport, GridGeometry, MaskDomain, PowerIterConfig, QSignal2D,
    Quaternion, RegionMask, WindowKind,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::maskspec::MaskSpec;
use crate::CliError;

/// The verification suites exposed by `verify --suite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteName {
    Plancherel,
    Inversion,
    QftOracle,
    Young,
    HausdorffYoung,
    Concentration,
    LocalUncertainty,
    Weighted,
    Annihilation,
    Benedicks,
}

impl SuiteName {
    pub const ALL: [SuiteName; 10] = [
        SuiteName::Plancherel,
        SuiteName::Inversion,
        SuiteName::QftOracle,
        SuiteName::Young,
        SuiteName::HausdorffYoung,
        SuiteName::Concentration,
        SuiteName::LocalUncertainty,
        SuiteName::Weighted,
        SuiteName::Annihilation,
        SuiteName::Benedicks,
    ];

    pub fn parse(s: &str) -> Result<Self, CliError> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.name() == s)
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown suite {s:?}; expected one of: {}",
                    SuiteName::ALL.map(|n| n.name()).join(", ")
                ))
            })
    }

    pub fn name(&self) -> &'static str {
        match self {
            SuiteName::Plancherel => "plancherel",
            SuiteName::Inversion => "inversion",
            SuiteName::QftOracle => "qft-oracle",
            SuiteName::Young => "young",
            SuiteName::HausdorffYoung => "hausdorff-young",
            SuiteName::Concentration => "concentration",
            SuiteName::LocalUncertainty => "local-uncertainty",
            SuiteName::Weighted => "weighted",
            SuiteName::Annihilation => "annihilation",
            SuiteName::Benedicks => "benedicks",
        }
    }

    /// Whether the suite runs on a quadrature grid when no mode is forced.
    fn wants_quadrature(&self) -> bool {
        matches!(
            self,
            SuiteName::Young
                | SuiteName::Concentration
                | SuiteName::LocalUncertainty
                | SuiteName::Weighted
                | SuiteName::Benedicks
        )
    }

    fn default_trials(&self) -> usize {
        match self {
            SuiteName::Concentration | SuiteName::LocalUncertainty => 1000,
            SuiteName::QftOracle => 200,
            SuiteName::Weighted => 50,
            SuiteName::Benedicks => 10,
            _ => 100,
        }
    }
}

/// Grid mode as selected on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeChoice {
    Discrete,
    Quadrature,
}

/// Configuration of one `verify` run.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suites: Vec<SuiteName>,
    pub n1: usize,
    pub n2: usize,
    pub mode: Option<ModeChoice>,
    pub l1: f64,
    pub l2: f64,
    pub trials: Option<usize>,
    pub seed: u64,
    pub mask: Option<MaskSpec>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            suites: Vec::new(),
            n1: 8,
            n2: 8,
            mode: None,
            l1: 4.0,
            l2: 4.0,
            trials: None,
            seed: 7,
            mask: None,
        }
    }
}

impl SuiteConfig {
    fn geometry_for(&self, suite: SuiteName) -> Result<GridGeometry, CliError> {
        let quadrature = match self.mode {
            Some(ModeChoice::Discrete) => false,
            Some(ModeChoice::Quadrature) => true,
            None => suite.wants_quadrature(),
        };
        let g = if quadrature {
            GridGeometry::quadrature(self.n1, self.n2, self.l1, self.l2)
        } else {
            GridGeometry::pure_discrete(self.n1, self.n2)
        };
        g.map_err(CliError::from)
    }
}

/// Executes every requested suite; deterministic given the seed.
pub fn run_verify_suite(cfg: &SuiteConfig) -> Result<Vec<CheckReport>, CliError> {
    let mut reports = Vec::new();
    for &suite in &cfg.suites {
        let trials = cfg.trials.unwrap_or_else(|| suite.default_trials());
        let g = cfg.geometry_for(suite)?;
        let fixed_mask = match &cfg.mask {
            Some(spec) => Some(spec.build(g, MaskDomain::Phase4D)?),
            None => None,
        };
        let mut batch = match suite {
            SuiteName::Plancherel => suite_plancherel(g, trials, cfg.seed),
            SuiteName::Inversion => suite_inversion(g, trials, cfg.seed),
            SuiteName::QftOracle => suite_qft_oracle(trials, cfg.seed),
            SuiteName::Young => suite_young(g, trials, cfg.seed)?,
            SuiteName::HausdorffYoung => suite_hausdorff_young(g, trials, cfg.seed)?,
            SuiteName::Concentration => {
                suite_concentration(g, trials, cfg.seed, fixed_mask.as_ref())?
            }
            SuiteName::LocalUncertainty => {
                suite_local_uncertainty(g, trials, cfg.seed, fixed_mask.as_ref())?
            }
            SuiteName::Weighted => suite_weighted(g, trials, cfg.seed)?,
            SuiteName::Annihilation => suite_annihilation(trials, cfg.seed)?,
            SuiteName::Benedicks => vec![suite_benedicks(g, trials, cfg.seed)?],
        };
        for r in &mut batch {
            r.set("suite", suite.name());
            if let Some(spec) = &cfg.mask {
                r.set("mask", serde_json::to_value(spec).unwrap());
            }
        }
        reports.extend(batch);
    }
    Ok(reports)
}

pub fn all_asserted_pass(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.pass || !r.asserted())
}

fn trial_rng(seed: u64, t: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add((t as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)))
}

/// Folds per-trial reports into one, keeping the worst trial's sides.
fn aggregate(name: &str, per_trial: Vec<CheckReport>, seed: u64) -> CheckReport {
    let trials = per_trial.len();
    if trials == 0 {
        let mut out = CheckReport::inequality(name, 0.0, 0.0, 0.0);
        out.set("trials", 0u64);
        out.set("violations", 0u64);
        out.set("seed", seed);
        return out;
    }
    let violations = per_trial.iter().filter(|r| !r.pass).count();
    let worst = per_trial
        .iter()
        .enumerate()
        .max_by(|(_, a), (_, b)| {
            let ka = if a.ratio.is_finite() { a.ratio } else { f64::MIN };
            let kb = if b.ratio.is_finite() { b.ratio } else { f64::MIN };
            ka.total_cmp(&kb)
        })
        .map(|(i, _)| i)
        .unwrap_or(0);
    let w = &per_trial[worst];
    let mut out = CheckReport {
        name: name.to_string(),
        lhs: w.lhs,
        rhs: w.rhs,
        ratio: w.ratio,
        pass: violations == 0,
        params: w.params.clone(),
    };
    out.set("trials", trials as u64);
    out.set("violations", violations as u64);
    out.set("worst_trial", worst as u64);
    out.set("seed", seed);
    out
}

fn random_pair(g: GridGeometry, rng: &mut ChaCha8Rng) -> (QSignal2D, QSignal2D) {
    (QSignal2D::random(g, rng), QSignal2D::random(g, rng))
}

fn geometry_params(r: &mut CheckReport, g: &GridGeometry) {
    r.set("n1", g.n1 as u64);
    r.set("n2", g.n2 as u64);
    r.set("mode", g.mode.name());
    if let qgabor_core::GridMode::Quadrature { l1, l2 } = g.mode {
        r.set("l1", l1);
        r.set("l2", l2);
    }
}

/// Plancherel identity: worst relative deviation of total phase-space energy
/// from `‖f‖₂²·‖φ‖₂²` across random pairs.
pub fn suite_plancherel(g: GridGeometry, trials: usize, seed: u64) -> Vec<CheckReport> {
    let devs: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let (f, w) = random_pair(g, &mut rng);
            let field = gqft_forward(&f, &w).expect("random window is nonzero");
            let energy = gabor_energy(&field, None).unwrap();
            let expected = f.l2_norm_sqr() * w.l2_norm_sqr();
            (energy - expected).abs() / expected
        })
        .collect();
    let worst = devs.iter().cloned().fold(0.0, f64::max);
    let mut r = CheckReport::inequality("plancherel", worst, tol::REL_IDENTITY, 0.0);
    r.set("trials", trials as u64);
    r.set("seed", seed);
    geometry_params(&mut r, &g);
    vec![r]
}

/// Inversion: worst relative L² reconstruction error across random pairs.
pub fn suite_inversion(g: GridGeometry, trials: usize, seed: u64) -> Vec<CheckReport> {
    let devs: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let (f, w) = random_pair(g, &mut rng);
            let field = gqft_forward(&f, &w).expect("random window is nonzero");
            let back = gqft_inverse(&field, &w).unwrap();
            back.rel_l2_error(&f)
        })
        .collect();
    let worst = devs.iter().cloned().fold(0.0, f64::max);
    let mut r = CheckReport::inequality("inversion", worst, tol::REL_IDENTITY, 0.0);
    r.set("trials", trials as u64);
    r.set("seed", seed);
    geometry_params(&mut r, &g);
    vec![r]
}

/// Transform oracle equivalence and unitarity over the canonical size sweep
/// N ∈ {4, 8, 16} (pure-discrete).
pub fn suite_qft_oracle(trials: usize, seed: u64) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for n in [4usize, 8, 16] {
        let g = GridGeometry::pure_discrete(n, n).unwrap();
        let (dev, uni): (Vec<f64>, Vec<f64>) = (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = trial_rng(seed ^ (n as u64) << 32, t);
                let f = QSignal2D::random(g, &mut rng).normalized_l2().unwrap();
                let fast = dqft(&f);
                let dev = fast.max_abs_diff(&dqft_direct(&f));
                let uni = (fast.l2_norm() - f.l2_norm()).abs() / f.l2_norm();
                (dev, uni)
            })
            .unzip();
        let mut r = CheckReport::inequality(
            "qft-oracle-max-abs",
            dev.iter().cloned().fold(0.0, f64::max),
            tol::ORACLE_MAX_ABS,
            0.0,
        );
        r.set("n", n as u64);
        r.set("trials", trials as u64);
        r.set("seed", seed);
        out.push(r);
        let mut r = CheckReport::inequality(
            "qft-unitarity",
            uni.iter().cloned().fold(0.0, f64::max),
            tol::UNITARITY,
            0.0,
        );
        r.set("n", n as u64);
        r.set("trials", trials as u64);
        r.set("seed", seed);
        out.push(r);
    }
    out
}

/// Hölder sup lemma at (p, q) ∈ {(2,2), (4/3,4), (4,4/3)}.
pub fn suite_young(g: GridGeometry, trials: usize, seed: u64) -> Result<Vec<CheckReport>, CliError> {
    let mut out = Vec::new();
    for (tag, p) in [("p2", 2.0f64), ("p4/3", 4.0 / 3.0), ("p4", 4.0)] {
        let per: Result<Vec<CheckReport>, CliError> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = trial_rng(seed ^ p.to_bits(), t);
                let (f, w) = random_pair(g, &mut rng);
                check_young_sup(&f, &w, p).map_err(CliError::from)
            })
            .collect();
        let mut r = aggregate(&format!("young-sup-{tag}"), per?, seed);
        geometry_params(&mut r, &g);
        out.push(r);
    }
    Ok(out)
}

/// Hausdorff–Young at p ∈ {1, 4/3, 2}: asserted on single-component signals,
/// report-only (observed ratio) on full quaternion signals.
pub fn suite_hausdorff_young(
    g: GridGeometry,
    trials: usize,
    seed: u64,
) -> Result<Vec<CheckReport>, CliError> {
    let units = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K];
    let mut out = Vec::new();
    for (tag, p) in [("p1", 1.0f64), ("p4/3", 4.0 / 3.0), ("p2", 2.0)] {
        let per: Result<Vec<CheckReport>, CliError> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = trial_rng(seed ^ p.to_bits(), t);
                let real = QSignal2D::from_fn(g, |_, _| {
                    Quaternion::from_real(rng.random_range(-1.0..1.0))
                });
                let f = real.left_mul(units[t % 4]);
                check_hausdorff_young(&f, p).map_err(CliError::from)
            })
            .collect();
        let mut r = aggregate(&format!("hausdorff-young-{tag}"), per?, seed);
        geometry_params(&mut r, &g);
        out.push(r);

        // multi-component signals: ratio observed, not asserted
        let ratios: Result<Vec<f64>, CliError> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = trial_rng(seed ^ p.to_bits() ^ 0xabcd, t);
                let f = QSignal2D::random(g, &mut rng);
                Ok(check_hausdorff_young(&f, p)?.ratio)
            })
            .collect();
        let observed = ratios?.into_iter().fold(0.0, f64::max);
        let mut r = CheckReport::report_only(
            &format!("hausdorff-young-multi-{tag}"),
            observed,
            2.0 + tol::INEQ_SLACK,
        );
        r.set("trials", trials as u64);
        r.set("seed", seed);
        r.set("p", p);
        geometry_params(&mut r, &g);
        out.push(r);
    }
    Ok(out)
}

/// ε-concentration lower bound over random unit pairs and random regions.
pub fn suite_concentration(
    g: GridGeometry,
    trials: usize,
    seed: u64,
    fixed_mask: Option<&RegionMask>,
) -> Result<Vec<CheckReport>, CliError> {
    let per: Result<Vec<CheckReport>, CliError> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let f = QSignal2D::random(g, &mut rng).normalized_l2().unwrap();
            let w = QSignal2D::random(g, &mut rng).normalized_l2().unwrap();
            let sigma = match fixed_mask {
                Some(m) => m.clone(),
                None => {
                    let density = rng.random::<f64>();
                    RegionMask::random(MaskDomain::Phase4D, g, density, &mut rng)
                }
            };
            check_concentration_lower_bound(&f, &w, &sigma).map_err(CliError::from)
        })
        .collect();
    let mut r = aggregate("concentration", per?, seed);
    geometry_params(&mut r, &g);
    Ok(vec![r])
}

/// Local uncertainty over random masks with `0 < m(Σ) < 1`, plus the
/// degenerate Σ → ∅ equality (Plancherel).
pub fn suite_local_uncertainty(
    g: GridGeometry,
    trials: usize,
    seed: u64,
    fixed_mask: Option<&RegionMask>,
) -> Result<Vec<CheckReport>, CliError> {
    if let Some(m) = fixed_mask {
        // surfaces the precondition error before burning trials
        let measure = m.measure();
        if !(measure > 0.0 && measure < 1.0) {
            return Err(qgabor_core::Error::MeasureOutOfRange { measure }.into());
        }
    }
    let max_cells = g.len() * g.len();
    let admissible = ((1.0 / g.phase_cell_measure()).ceil() as usize).min(max_cells) - 1;
    let per: Result<Vec<CheckReport>, CliError> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let (f, w) = random_pair(g, &mut rng);
            let sigma = match fixed_mask {
                Some(m) => m.clone(),
                None => {
                    let k = rng.random_range(1..=admissible.max(1));
                    RegionMask::random_with_count(MaskDomain::Phase4D, g, k, &mut rng).unwrap()
                }
            };
            check_local_uncertainty(&f, &w, &sigma).map_err(CliError::from)
        })
        .collect();
    let mut r = aggregate("local-uncertainty", per?, seed);
    geometry_params(&mut r, &g);

    // Σ → ∅ limit: the right side degenerates to the total energy and the
    // inequality becomes the Plancherel equality
    let mut rng = trial_rng(seed, trials + 1);
    let (f, w) = random_pair(g, &mut rng);
    let field = gqft_forward(&f, &w)?;
    let lhs = f.l2_norm() * w.l2_norm();
    let rhs = gabor_energy(&field, None)?.sqrt();
    let mut d = CheckReport::inequality(
        "local-uncertainty-degenerate",
        (lhs - rhs).abs(),
        1e-10 * lhs,
        0.0,
    );
    d.set("seed", seed);
    geometry_params(&mut d, &g);
    Ok(vec![r, d])
}

/// Weighted-moment bound at s ∈ {0.5, 1, 2} over random pairs, plus the
/// Gaussian pair on the canonical 16×16, L = 8 grid.
pub fn suite_weighted(
    g: GridGeometry,
    trials: usize,
    seed: u64,
) -> Result<Vec<CheckReport>, CliError> {
    let mut out = Vec::new();
    for (tag, s) in [("s0.5", 0.5f64), ("s1", 1.0), ("s2", 2.0)] {
        let per: Result<Vec<CheckReport>, CliError> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = trial_rng(seed ^ s.to_bits(), t);
                let (f, w) = random_pair(g, &mut rng);
                check_weighted_bound(&f, &w, s, None).map_err(CliError::from)
            })
            .collect();
        let mut r = aggregate(&format!("weighted-{tag}"), per?, seed);
        geometry_params(&mut r, &g);
        out.push(r);
    }

    let g16 = GridGeometry::quadrature(16, 16, 8.0, 8.0)?;
    let gauss = make_window(g16, WindowKind::Gaussian { sigma: 1.0 }, true)?;
    let mut r = check_weighted_bound(&gauss, &gauss, 1.0, None)?;
    r.name = "weighted-gaussian-pair".into();
    r.set("seed", seed);
    geometry_params(&mut r, &g16);
    out.push(r);
    Ok(out)
}

/// Annihilation lemma on the canonical 4×4 pure-discrete grid: operator-norm
/// extremes and the quantitative bound over random signals.
pub fn suite_annihilation(trials: usize, seed: u64) -> Result<Vec<CheckReport>, CliError> {
    let g = GridGeometry::pure_discrete(4, 4)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = QSignal2D::random(g, &mut rng);
    let cfg = PowerIterConfig::with_seed(seed);
    let mut out = Vec::new();

    let full = operator_norm(&w, &RegionMask::full(MaskDomain::Phase4D, g), &cfg)?;
    let mut r = CheckReport::inequality(
        "annihilation-rho-full",
        (full.rho - 1.0).abs(),
        tol::RHO_TOL,
        0.0,
    );
    r.set("rho", full.rho);
    r.set("iterations", full.iterations as u64);
    r.set("seed", seed);
    out.push(r);

    let empty = operator_norm(&w, &RegionMask::empty(MaskDomain::Phase4D, g), &cfg)?;
    let mut r = CheckReport::inequality("annihilation-rho-empty", empty.rho, 1e-8, 0.0);
    r.set("seed", seed);
    out.push(r);

    let sigma = RegionMask::random_with_count(MaskDomain::Phase4D, g, 12, &mut rng).unwrap();
    let est = operator_norm(&w, &sigma, &cfg)?;
    let c = annihilation_constant(&w, &sigma, &cfg)?;
    let comp = sigma.complement();
    let per: Vec<CheckReport> = (0..trials)
        .map(|t| {
            let mut rng = trial_rng(seed ^ 0x5151, t);
            let f = QSignal2D::random(g, &mut rng);
            let field = gqft_forward(&f, &w).unwrap();
            let escaped = gabor_energy(&field, Some(&comp)).unwrap();
            CheckReport::inequality(
                "annihilation-bound",
                f.l2_norm() * w.l2_norm(),
                c * escaped.sqrt(),
                tol::INEQ_SLACK,
            )
        })
        .collect();
    let mut r = aggregate("annihilation-bound", per, seed);
    r.set("rho", est.rho);
    r.set("c_sigma", c);
    r.set("sigma_cells", sigma.count() as u64);
    geometry_params(&mut r, &g);
    out.push(r);
    Ok(out)
}

/// Benedicks probe in its canonical configuration: window = Gaussian
/// truncated to the spatial ball of radius L1/8, S = centered frequency
/// square of measure ~1/2, R = L1/4.
pub fn suite_benedicks(
    g: GridGeometry,
    trials: usize,
    seed: u64,
) -> Result<CheckReport, CliError> {
    let l1 = match g.mode {
        qgabor_core::GridMode::Quadrature { l1, .. } => l1,
        _ => {
            return Err(CliError::Usage(
                "the benedicks suite needs a quadrature grid".into(),
            ))
        }
    };
    let support_radius = l1 / 8.0;
    let window = make_window(g, WindowKind::Gaussian { sigma: support_radius }, false)?
        .truncated_to_spatial_ball(support_radius)
        .normalized_l2()?;
    // centered square with area 1/2 in the frequency plane
    let half = (0.5f64).sqrt() / 2.0;
    let s = RegionMask::rect(MaskDomain::Freq2D, g, &[(-half, half), (-half, half)])?;
    let mut r = benedicks_probe(&window, support_radius, &s, l1 / 4.0, trials, seed)?;
    geometry_params(&mut r, &g);
    Ok(r)
}
