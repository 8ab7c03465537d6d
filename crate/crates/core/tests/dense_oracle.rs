//! Dense-matrix oracle for the operator norm ‖P_Σ P_φ‖.
//!
//! The operator T = P_φ P_Σ P_φ is assembled column by column as an explicit
//! matrix on the 4·(n1·n2)² -dimensional real component space and handed to a
//! dense symmetric eigensolver; the power-iteration estimate must match the
//! square root of the dominant eigenvalue.

use nalgebra::{DMatrix, SymmetricEigen};
use qgabor_core::{
    operator_norm, project_mask, project_range, GaborField4D, GridGeometry, MaskDomain,
    PowerIterConfig, QSignal2D, Quaternion, RegionMask,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn assemble_t_matrix(window: &QSignal2D, sigma: &RegionMask) -> DMatrix<f64> {
    let g = *window.geometry();
    let cells = g.len() * g.len();
    let dim = 4 * cells;
    let wsq = window.l2_norm_sqr();
    let mut m = DMatrix::<f64>::zeros(dim, dim);
    for col in 0..dim {
        let mut data = vec![Quaternion::ZERO; cells];
        let mut basis = [0.0; 4];
        basis[col % 4] = 1.0;
        data[col / 4] = Quaternion::from_array(basis);
        let e = GaborField4D::from_raw(g, wsq, data).unwrap();
        let te = project_range(
            &project_mask(&project_range(&e, window).unwrap(), sigma).unwrap(),
            window,
        )
        .unwrap();
        for (i, q) in te.data().iter().enumerate() {
            for c in 0..4 {
                m[(4 * i + c, col)] = q.component(c);
            }
        }
    }
    m
}

fn dense_rho(window: &QSignal2D, sigma: &RegionMask) -> f64 {
    let m = assemble_t_matrix(window, sigma);
    // T is self-adjoint in the (uniformly weighted) real inner product, so
    // its component matrix must come out symmetric.
    let asym = (&m - m.transpose()).abs().max();
    assert!(asym <= 1e-9, "assembled matrix not symmetric: {asym:.3e}");
    let sym = (&m + m.transpose()).scale(0.5);
    let eig = SymmetricEigen::new(sym);
    let lambda_max = eig.eigenvalues.iter().cloned().fold(f64::MIN, f64::max);
    lambda_max.max(0.0).sqrt()
}

fn power_cfg() -> PowerIterConfig {
    PowerIterConfig {
        max_iters: 5000,
        tol: 1e-13,
        seed: 7,
    }
}

#[test]
fn matches_power_iteration_at_n2() {
    let g = GridGeometry::pure_discrete(2, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(201);
    let w = QSignal2D::random(g, &mut rng);
    for count in [1usize, 4, 8] {
        let sigma = RegionMask::random_with_count(MaskDomain::Phase4D, g, count, &mut rng).unwrap();
        let oracle = dense_rho(&w, &sigma);
        let est = operator_norm(&w, &sigma, &power_cfg()).unwrap();
        assert!(
            (est.rho - oracle).abs() <= 1e-6,
            "count={count}: power={} dense={oracle}",
            est.rho
        );
    }
}

#[test]
fn matches_power_iteration_at_n3_separable_path() {
    let g = GridGeometry::pure_discrete(3, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let w = QSignal2D::random(g, &mut rng);
    let sigma = RegionMask::random_with_count(MaskDomain::Phase4D, g, 15, &mut rng).unwrap();
    let oracle = dense_rho(&w, &sigma);
    let est = operator_norm(&w, &sigma, &power_cfg()).unwrap();
    assert!(
        (est.rho - oracle).abs() <= 1e-6,
        "power={} dense={oracle}",
        est.rho
    );
}

#[test]
fn extreme_masks_at_n2() {
    let g = GridGeometry::pure_discrete(2, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(203);
    let w = QSignal2D::random(g, &mut rng);
    let full = RegionMask::full(MaskDomain::Phase4D, g);
    assert!((dense_rho(&w, &full) - 1.0).abs() <= 1e-9);
    let empty = RegionMask::empty(MaskDomain::Phase4D, g);
    assert!(dense_rho(&w, &empty) <= 1e-12);
}
