use std::f64::consts::PI;
use wcs_core::geometry::MetricChart;
use wcs_core::wcsform::Normalization;
use wcs_core::ypq::*;
use wcs_core::WcsError;

fn closed_f(params: &YpqParams, theta: f64, y: f64) -> f64 {
    0.6 * (-64.0 / 3.0) * (1.0 - params.a).powi(2) * y * theta.sin() / (1.0 - y).powi(5)
}

#[test]
fn parameter_errors() {
    assert!(matches!(solve_params(3, 3), Err(WcsError::BadOrdering { .. })));
    assert!(matches!(solve_params(4, 2), Err(WcsError::NotCoprime { .. })));
    assert!(matches!(solve_params(2, 1), Err(WcsError::NotPerfectSquare(13))));
}

#[test]
fn cubic_roots() {
    for (p, q) in [(7, 3), (1, 0)] {
        let Ok(pr) = solve_params(p, q) else { continue };
        for r in pr.residuals() {
            assert!(r.abs() < 1e-13);
        }
        assert!(pr.y1 < 0.0 && 0.0 < pr.y2 && pr.y2 < 1.0 && pr.y2 < pr.y3);
    }
    let s = YpqParams::synthetic(0.999, 0.15).unwrap();
    assert!(s.is_synthetic());
    assert!(s.residuals().iter().all(|r| r.abs() < 1e-12));
}

#[test]
fn theta_theta_component() {
    let pr = solve_params(7, 3).unwrap();
    let y = 0.1;
    let g = metric_at(&pr, 0.8, y).unwrap();
    assert!(((g[1][1] - (1.0 - y) / 6.0) / g[1][1]).abs() < 1e-15);
    assert!(matches!(metric_at(&pr, 0.8, pr.y2), Err(WcsError::OutsideDomain { .. })));
    assert!(metric_at(&pr, 0.0, y).is_err());
}

#[test]
fn integrand_matches_closed_form() {
    let pr = solve_params(7, 3).unwrap();
    let norm = Normalization::default();
    for (theta, y) in [(0.3, -0.2), (1.5, 0.0), (2.9, 0.33), (1.0, 0.1)] {
        let f = integrand_f(&pr, theta, y, &norm).unwrap();
        let want = closed_f(&pr, theta, y);
        assert!((f - want).abs() <= 1e-10 * want.abs().max(1.0), "{theta} {y}: {f} vs {want}");
        let full = integrand_f_full(&pr, theta, y, &norm).unwrap();
        assert!((full - f).abs() <= 1e-10 * f.abs().max(1.0));
    }
}

#[test]
fn cyclic_coordinates_do_not_matter() {
    let pr = solve_params(7, 3).unwrap();
    let chart = YpqChart::new(pr);
    let base = integrand_raw(&chart, 1.1, 0.2, &IntegrandOptions::default()).unwrap();
    for angles in [[0.0, 0.0, 0.0], [5.0, -1.0, 3.0]] {
        let v = integrand_raw(&chart, 1.1, 0.2, &IntegrandOptions { angles, ..Default::default() }).unwrap();
        assert!((v - base).abs() <= 1e-12 * base.abs());
    }
}

#[test]
fn parity_in_theta() {
    let pr = solve_params(7, 3).unwrap();
    let rep = parity_report(&pr, 6, &Normalization::default()).unwrap();
    assert!(rep.symmetric, "{rep:?}");
}

#[test]
fn value_of_the_seven_three_integral() {
    let pr = solve_params(7, 3).unwrap();
    let rep = integrate(&pr, &QuadratureSpec::default(), &Normalization::default()).unwrap();
    let exact = -5184.0 * PI.powi(3) / 1225.0;
    assert!(rep.converged && rep.warnings.is_empty());
    assert!(((rep.value - exact) / exact).abs() < 1e-9, "{}", rep.value);
    assert!(rep.error_estimate >= 0.0);
    assert_eq!(rep.diagnostics["rational_over_pi3"], serde_json::json!([-5184, 1225]));
}

#[test]
fn affine_reparameterization_is_invisible() {
    let pr = solve_params(7, 3).unwrap();
    let quad = QuadratureSpec::default();
    let norm = Normalization::default();
    let base = integrate(&pr, &quad, &norm).unwrap().value;
    let shifted = YpqChart::with_affine_y(pr, 0.05, 2.5);
    assert!((shifted.s_of_y(pr.y1) - (pr.y1 - 0.05) / 2.5).abs() < 1e-16);
    let v = integrate_with(&shifted, &quad, &norm, &IntegrandOptions::default()).unwrap().value;
    assert!(((v - base) / base).abs() < 1e-9);
}

#[test]
fn tightening_tolerance_stays_within_estimate() {
    let pr = YpqParams::synthetic(0.99, 0.15).unwrap();
    let norm = Normalization::default();
    let coarse = integrate(&pr, &QuadratureSpec::adaptive(1e-6), &norm).unwrap();
    let fine = integrate(&pr, &QuadratureSpec::adaptive(5e-7), &norm).unwrap();
    assert!(coarse.converged && fine.converged);
    assert!((coarse.value - fine.value).abs() <= coarse.error_estimate.max(1e-6 * coarse.value.abs()));
}

#[test]
fn unconverged_quadrature_warns() {
    let pr = YpqParams::synthetic(0.9999, 0.15).unwrap();
    let spec = QuadratureSpec { max_refinements: 1, rel_tol: 1e-12, ..QuadratureSpec::adaptive(1e-12) };
    let rep = integrate(&pr, &spec, &Normalization::default()).unwrap();
    assert!(!rep.converged && !rep.warnings.is_empty());
}

#[test]
fn quadrature_spec_validation() {
    let bad = QuadratureSpec { rel_tol: 0.0, ..Default::default() };
    assert!(bad.validate().is_err());
    let bad = QuadratureSpec { orders: [0, 4], ..Default::default() };
    assert!(bad.validate().is_err());
}

#[test]
fn einstein_on_the_seven_three_metric() {
    let pr = solve_params(7, 3).unwrap();
    let rep = einstein_residual(&pr, 200, 17).unwrap();
    assert_eq!(rep.samples, 200);
    assert!((rep.lambda - 4.0).abs() < 1e-9 && rep.residual < 1e-8);
    let chart = YpqChart::new(pr);
    assert_eq!(chart.dim(), 5);
    assert_eq!(COORDS[4], "alpha");
}
