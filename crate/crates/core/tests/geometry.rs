use proptest::prelude::*;
use std::f64::consts::PI;
use wcs_core::geometry::*;
use wcs_core::sasaki::{random_k3_operator, CurvatureOperator, KahlerPointData};
use wcs_core::tensor::{constant_curvature, Jet2};
use wcs_core::ypq::{einstein_residual, einstein_residual_chart, solve_params, YpqChart};
use wcs_core::WcsError;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

#[test]
fn flat_charts_have_no_curvature() {
    let t4 = FlatTorus::new(4);
    let x = [0.2, 0.4, 0.6, 0.8];
    assert!(christoffel(&t4, &x).unwrap().iter().flatten().flatten().all(|v| *v == 0.0));
    let pg = riemann_at(&t4, &x).unwrap();
    assert_eq!(pg.riemann.max_abs(), 0.0);
    assert!(ricci(&pg).iter().flatten().all(|v| *v == 0.0));
}

#[test]
fn round_sphere() {
    let th = PI / 3.0;
    let gam = christoffel(&RoundS2, &[th, 1.0]).unwrap();
    assert!(close(gam[0][1][1], -th.sin() * th.cos(), 1e-15));
    assert!(close(gam[1][0][1], th.cos() / th.sin(), 1e-15));
    let pg = riemann_at(&RoundS2, &[th, 1.0]).unwrap();
    assert!(close(pg.riemann.get(0, 1, 0, 1), -th.sin().powi(2), 1e-14));
    // Gaussian curvature −R(e1,e2,e1,e2) in the orthonormal frame
    assert!(close(-pg.frame_curvature().get(0, 1, 0, 1), 1.0, 1e-14));
    let ric = ricci(&pg);
    for i in 0..2 {
        for j in 0..2 {
            assert!((ric[i][j] - pg.g[i][j]).abs() < 1e-14);
        }
    }
}

#[test]
fn fubini_study_frame_scalars_and_pontrjagin_density() {
    let chart = Cp2FubiniStudy::default();
    for x in [[0.3, -0.2, 0.5, 0.1], [1.2, 0.4, -0.7, 2.0], [0.0, 0.0, 0.0, 0.0]] {
        let kd = KahlerPointData::from_chart(&chart, &x).unwrap();
        for (got, want) in kd.rfive.iter().zip([-2.0, -1.0, -1.0, -4.0, -4.0]) {
            assert!(close(*got, want, 1e-12), "{:?}", kd.rfive);
        }
        assert!(close(kd.p1, 6.0 / (PI * PI), 1e-12));
        assert!(kd.consistency_defect() < 1e-12);
    }
}

#[test]
fn y73_christoffels_match_finite_differences() {
    let params = solve_params(7, 3).unwrap();
    let chart = YpqChart::new(params);
    let x = [0.4, 1.3, 0.05, 2.0, 0.3];
    let gam = christoffel(&chart, &x).unwrap();
    let g = |y: &[f64]| {
        let v: Vec<Jet2> = y.iter().map(|&t| Jet2::constant(t)).collect();
        chart.metric(&v).iter().map(|r| r.iter().map(|j| j.v).collect::<Vec<_>>()).collect::<Vec<_>>()
    };
    let h = 1e-6;
    let mut dg = vec![vec![vec![0.0; 5]; 5]; 5];
    for l in 0..5 {
        let (mut xp, mut xm) = (x, x);
        xp[l] += h;
        xm[l] -= h;
        let (gp, gm) = (g(&xp), g(&xm));
        for a in 0..5 {
            for b in 0..5 {
                dg[l][a][b] = (gp[a][b] - gm[a][b]) / (2.0 * h);
            }
        }
    }
    let pg = riemann_at(&chart, &x).unwrap();
    let scale = gam.iter().flatten().flatten().fold(0.0_f64, |m, v| m.max(v.abs()));
    for i in 0..5 {
        for j in 0..5 {
            for k in 0..5 {
                let mut s = 0.0;
                for l in 0..5 {
                    s += pg.g_inv[i][l] * (dg[j][l][k] + dg[k][l][j] - dg[l][j][k]);
                }
                assert!((gam[i][j][k] - 0.5 * s).abs() < 1e-6 * scale);
                assert_eq!(gam[i][j][k], gam[i][k][j]);
            }
        }
    }
}

#[test]
fn einstein_constants() {
    let params = solve_params(7, 3).unwrap();
    let rep = einstein_residual(&params, 40, 5).unwrap();
    assert!((rep.lambda - 4.0).abs() < 1e-8 && rep.residual < 1e-8, "{rep:?}");
    let s5 = einstein_residual_chart(&RoundS5, 40, 5, 0.05).unwrap();
    assert!((s5.lambda - 4.0).abs() < 1e-10 && s5.residual < 1e-10, "{s5:?}");
    let t5 = einstein_residual_chart(&FlatTorus::new(5), 10, 5, 0.05).unwrap();
    assert_eq!((t5.lambda, t5.residual), (0.0, 0.0));
}

#[test]
fn ricci_of_space_form_in_frame() {
    let r = constant_curvature(5, 1.7);
    for j in 0..5 {
        for k in 0..5 {
            let s: f64 = (0..5).map(|i| r.get(i, j, k, i)).sum();
            assert_eq!(s, if j == k { 1.7 * 4.0 } else { 0.0 });
        }
    }
}

#[test]
fn singular_metric_is_reported() {
    let params = solve_params(7, 3).unwrap();
    let chart = YpqChart::new(params);
    let err = riemann_at(&chart, &[0.1, 1.0, params.y2 + 0.2, 0.1, 0.1]).unwrap_err();
    assert!(matches!(err, WcsError::SingularMetric { .. } | WcsError::Evaluation { .. }));
}

#[test]
fn pontrjagin_density_cases() {
    let zero = wcs_core::tensor::AlgCurvature::zeros(4, wcs_core::tensor::FrameKind::Orthonormal);
    let id: Vec<Vec<f64>> = (0..4).map(|i| (0..4).map(|k| if i == k { 1.0 } else { 0.0 }).collect()).collect();
    assert_eq!(p1_density(&zero, &id).unwrap(), 0.0);
    // no anti-self-dual part: density is nonnegative
    for seed in 0..20 {
        let mut op = random_k3_operator(seed, false);
        op.lambda_minus = [0.0; 3];
        assert!(p1_density(&op.curvature(), &id).unwrap() >= 0.0);
    }
    let op = CurvatureOperator::diagonal([1.0, 0.5, -1.5], [0.0; 3]);
    assert!(p1_density(&op.curvature(), &id).unwrap() > 0.0);
}

fn random_rotation(seed: u64) -> Vec<Vec<f64>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let m = nalgebra::Matrix4::from_fn(|_, _| rng.gen_range(-1.0..1.0));
    let mut q = m.qr().q();
    if q.determinant() < 0.0 {
        q.column_mut(0).neg_mut();
    }
    (0..4).map(|i| (0..4).map(|j| q[(i, j)]).collect()).collect()
}

#[test]
fn pontrjagin_density_is_rotation_invariant() {
    let r = wcs_core::tensor::random_alg_curvature(4, 9).unwrap();
    let id: Vec<Vec<f64>> = (0..4).map(|i| (0..4).map(|k| if i == k { 1.0 } else { 0.0 }).collect()).collect();
    let base = p1_density(&r, &id).unwrap();
    for seed in 0..10 {
        let rot = random_rotation(seed);
        assert!((p1_density(&r, &rot).unwrap() - base).abs() < 1e-10);
    }
}

fn covariant_derivative_of_metric(chart: &dyn MetricChart, x: &[f64]) -> f64 {
    let n = chart.dim();
    let pg = riemann_at(chart, x).unwrap();
    let h = 1e-6;
    let mut worst: f64 = 0.0;
    for l in 0..n {
        let (mut xp, mut xm) = (x.to_vec(), x.to_vec());
        xp[l] += h;
        xm[l] -= h;
        let (gp, gm) = (riemann_at(chart, &xp).unwrap().g, riemann_at(chart, &xm).unwrap().g);
        for a in 0..n {
            for b in 0..n {
                let mut d = (gp[a][b] - gm[a][b]) / (2.0 * h);
                for c in 0..n {
                    d -= pg.gamma[c][l][a] * pg.g[c][b] + pg.gamma[c][l][b] * pg.g[a][c];
                }
                worst = worst.max(d.abs());
            }
        }
    }
    worst
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// Riemann symmetries, frame orthonormality and metric compatibility on every chart.
    #[test]
    fn chart_curvature_is_algebraic(idx in 0usize..CHART_NAMES.len(), u in proptest::collection::vec(0.05f64..0.95, 5)) {
        let chart = chart_by_name(CHART_NAMES[idx], &ChartParams { a: 2.0, b: 3.0, ..Default::default() }).unwrap();
        let n = chart.dim();
        let x = chart.domain().from_unit(&u[..n]);
        let pg = riemann_at(chart.as_ref(), &x).unwrap();
        let scale = pg.riemann.max_abs().max(1e-300);
        prop_assert!(pg.riemann.symmetry_defects().max() <= 1e-9 * scale.max(1.0));
        for i in 0..n {
            for j in 0..n {
                let gi: f64 = (0..n).map(|k| pg.g[i][k] * pg.g_inv[k][j]).sum();
                let delta = if i == j { 1.0 } else { 0.0 };
                prop_assert!((gi - delta).abs() < 1e-11 * pg.g[i][i].abs().max(1.0));
                let mut fg = 0.0;
                for a in 0..n {
                    for b in 0..n {
                        fg += pg.frame[i][a] * pg.g[a][b] * pg.frame[j][b];
                    }
                }
                prop_assert!((fg - delta).abs() < 1e-10);
            }
        }
        prop_assert!(covariant_derivative_of_metric(chart.as_ref(), &x) < 1e-6);
    }
}
