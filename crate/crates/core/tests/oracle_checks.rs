//! Quadrature-facing checks against an independent adaptive-Simpson oracle.

mod support;

use framerecon::*;
use rand_core::{RngCore, SeedableRng};
use support::{adaptive_simpson, adaptive_simpson_complex, rel_err, C64};

fn uniform(rng: &mut rand_chacha::ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
}

#[test]
fn exp_inner_product_matches_the_defining_integral() {
    // <e^{-i pi lambda x}, e^{-i pi mu x}> = (1/2) int e^{-i pi (lambda-mu) x} dx
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    for _ in 0..100 {
        let lambda = 600.0 * uniform(&mut rng) - 300.0;
        let delta = 600.0 * uniform(&mut rng) - 300.0;
        let mu = lambda - delta.clamp(-300.0, 300.0);
        let oracle = adaptive_simpson_complex(
            &|x| {
                let theta = -std::f64::consts::PI * (lambda - mu) * x;
                C64::new(theta.cos(), theta.sin())
            },
            -1.0,
            1.0,
            1e-13,
            256,
        ) * 0.5;
        let got = exp_inner_product(lambda, mu);
        assert!(
            (got - oracle).norm() < 1e-10,
            "lambda={lambda} mu={mu}: {got} vs oracle {oracle}"
        );
    }
}

#[test]
fn quarter_separation_value_is_frozen() {
    // Oracle-computed once and frozen; equals 2 sqrt(2) / pi analytically.
    let oracle = adaptive_simpson(
        &|x| (std::f64::consts::PI * 0.25 * x).cos(),
        -1.0,
        1.0,
        1e-13,
        8,
    ) * 0.5;
    assert!((oracle - 0.9003163162).abs() < 1e-9);
    assert!((exp_inner_product(0.25, 0.0).re - 0.9003163162).abs() < 1e-9);
}

#[test]
fn composite_rule_matches_the_oracle_on_the_gaussian() {
    let q = build_quadrature(8, 16).unwrap();
    let got = q.integrate(|x| (-x * x).exp());
    let oracle = adaptive_simpson(&|x| (-x * x).exp(), -1.0, 1.0, 1e-13, 8);
    assert!((got - oracle).abs() < 1e-12, "{got} vs {oracle}");
    assert!((got - 1.4936482656).abs() < 1e-10);
}

#[test]
fn harmonic_coefficients_match_classical_fourier_coefficients() {
    let basis = make_frame(FrameKind::IntegerFourier, 16, 0.0, 0).unwrap();
    let q = default_quadrature(16);
    for name in ["gaussian", "cospoly", "bump6"] {
        let f = test_function(name).unwrap();
        let coef = frame_coefficients(&f, &basis, basis.index_set(), &q).unwrap();
        for j in basis.index_set().iter() {
            let oracle = adaptive_simpson_complex(
                &|x| {
                    let theta = std::f64::consts::PI * j as f64 * x;
                    C64::new(theta.cos(), theta.sin()) * f.eval(x)
                },
                -1.0,
                1.0,
                1e-13,
                64,
            ) * 0.5;
            assert!(
                (coef.value(j) - oracle).norm() < 1e-10,
                "{name}, j={j}: {} vs {oracle}",
                coef.value(j)
            );
        }
    }
}

#[test]
fn gaussian_zero_mode_is_half_the_gaussian_integral() {
    let f = test_function("gaussian").unwrap();
    let basis = make_frame(FrameKind::IntegerFourier, 2, 0.0, 0).unwrap();
    let q = default_quadrature(2);
    let coef = frame_coefficients(&f, &basis, basis.index_set(), &q).unwrap();
    assert!(rel_err(coef.value(0).re, 0.7468241328) < 1e-9);
}

#[test]
fn doubling_quadrature_resolution_is_a_no_op_at_benchmark_scales() {
    // Self-convergence at the largest benchmark size: n = 256, m = 360.
    let f = test_function("gaussian").unwrap();
    let frame = make_frame(FrameKind::JitteredFourier, 360, 0.25, 7).unwrap();
    let idx = frame.index_set();
    let q1 = build_quadrature(360, 24).unwrap();
    let q2 = build_quadrature(720, 24).unwrap();
    let c1 = frame_coefficients(&f, &frame, idx, &q1).unwrap();
    let c2 = frame_coefficients(&f, &frame, idx, &q2).unwrap();
    let max_change = c1
        .values()
        .iter()
        .zip(c2.values().iter())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0f64, f64::max);
    assert!(max_change < 1e-11, "max coefficient change {max_change}");
}

#[test]
fn error_metric_agrees_with_parseval_for_partial_sums() {
    // Dual route: quadrature of |f - S_n f|^2 vs norm minus captured energy.
    let f = test_function("gaussian").unwrap();
    let basis = make_frame(FrameKind::IntegerFourier, 16, 0.0, 0).unwrap();
    let q = build_quadrature(64, 24).unwrap();
    let coef = frame_coefficients(&f, &basis, basis.index_set(), &q).unwrap();
    let grid = uniform_grid(256);
    let (l2, _, _) = error_metrics(&f, &coef, &basis, &q, &grid).unwrap();
    let f_norm_sq = 0.5 * q.integrate(|x| f.eval(x).powi(2));
    let captured: f64 = coef.values().iter().map(|z| z.norm_sqr()).sum();
    // The subtraction cancels two O(1) quantities down to ~1e-6, so the
    // Parseval route carries a few ulps of amplified rounding.
    let parseval = (f_norm_sq - captured).max(0.0).sqrt();
    assert!(
        (l2 - parseval).abs() < 1e-10,
        "quadrature {l2} vs parseval {parseval}"
    );
}
