use super::chart::YpqChart;
use super::params::YpqParams;
use super::quad::{integrate_2d, QuadratureResult, QuadratureSpec};
use crate::geometry::{riemann_at, MetricChart};
use crate::report::{rational_approx, WcsReport};
use crate::wcsform::{reduced_sum, wcs_full, Normalization, WcsPointInput};
use crate::Result;
use serde::Serialize;
use serde_json::json;
use std::f64::consts::PI;
use std::time::Instant;

/// Which coordinate field is the loop velocity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LoopVelocity {
    Alpha,
    Psi,
    Phi,
}

impl LoopVelocity {
    fn index(self) -> usize {
        match self {
            LoopVelocity::Phi => 0,
            LoopVelocity::Psi => 3,
            LoopVelocity::Alpha => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrandOptions {
    pub velocity: LoopVelocity,
    /// γ̇ = multiple · ∂_velocity (the n-fold iterate of the loop).
    pub multiple: f64,
    /// Values of the cyclic coordinates (φ, ψ, α) at which to evaluate.
    pub angles: [f64; 3],
}

impl Default for IntegrandOptions {
    fn default() -> Self {
        IntegrandOptions { velocity: LoopVelocity::Alpha, multiple: 1.0, angles: [1.0, 2.0, 0.5] }
    }
}

fn point_input(chart: &YpqChart, theta: f64, s: f64, opts: &IntegrandOptions) -> Result<WcsPointInput> {
    let x = [opts.angles[0], theta, s, opts.angles[1], opts.angles[2]];
    let pg = riemann_at(chart, &x)?;
    let r = pg.frame_curvature();
    let args: Vec<Vec<f64>> = (0..5).map(|a| pg.coordinate_vector_in_frame(&pg.frame, a)).collect();
    let gd = args[opts.velocity.index()].iter().map(|v| opts.multiple * v).collect();
    WcsPointInput::new(r, gd, args, 3)
}

/// Permutation sum with no constant, on the coordinate fields
/// `(∂φ, ∂θ, ∂_s, ∂ψ, ∂α)`: the coefficient of `dφ∧dθ∧ds∧dψ∧dα`.
pub fn integrand_raw(chart: &YpqChart, theta: f64, s: f64, opts: &IntegrandOptions) -> Result<f64> {
    Ok(reduced_sum(&point_input(chart, theta, s, opts)?))
}

/// `C3` times the permutation sum, with `γ̇ = ∂α`.
pub fn integrand_f(params: &YpqParams, theta: f64, y: f64, norm: &Normalization) -> Result<f64> {
    let chart = YpqChart::new(*params);
    Ok(norm.c3 * integrand_raw(&chart, theta, y, &IntegrandOptions::default())?)
}

/// The same value through the full (unreduced) form.
pub fn integrand_f_full(params: &YpqParams, theta: f64, y: f64, norm: &Normalization) -> Result<f64> {
    let chart = YpqChart::new(*params);
    wcs_full(&point_input(&chart, theta, y, &IntegrandOptions::default())?, norm)
}

/// `(2π)(2π)(2πℓ) ∬ f dθ dy`.
pub fn integrate(params: &YpqParams, quad: &QuadratureSpec, norm: &Normalization) -> Result<WcsReport> {
    integrate_with(&YpqChart::new(*params), quad, norm, &IntegrandOptions::default())
}

/// General form: any affine y-chart, loop velocity or iterate.
pub fn integrate_with(
    chart: &YpqChart,
    quad: &QuadratureSpec,
    norm: &Normalization,
    opts: &IntegrandOptions,
) -> Result<WcsReport> {
    let start = Instant::now();
    let dom = chart.domain();
    let c3 = norm.c3;
    let f = |theta: f64, s: f64| integrand_raw(chart, theta, s, opts).map(|v| c3 * v);
    let q: QuadratureResult = integrate_2d(&f, (0.0, PI), (dom.lower[2], dom.upper[2]), quad)?;
    let params = chart.params;
    let angular = 8.0 * PI * PI * PI * params.ell;
    let value = angular * q.value;
    let mut warnings = Vec::new();
    if !q.converged {
        warnings.push(format!(
            "quadrature did not reach rel_tol {:e} within {} refinements (estimate {:e})",
            quad.rel_tol, quad.max_refinements, q.error_estimate
        ));
    }
    let over_pi3 = value / PI.powi(3);
    let over_pi4 = value / PI.powi(4);
    let rel = (q.error_estimate / q.value.abs()).max(1e-14);
    let frac = |x: f64| rational_approx(x, 1_000_000, 10.0 * rel).map(|(n, d)| json!([n, d]));
    Ok(WcsReport {
        value,
        error_estimate: angular * q.error_estimate,
        constant_c3: c3,
        sign_convention: crate::SIGN_CONVENTION.to_string(),
        params_echo: json!({
            "p": params.p, "q": params.q, "n": params.n, "a": params.a, "ell": params.ell,
            "y1": params.y1, "y2": params.y2, "synthetic": params.is_synthetic(),
            "loop_velocity": opts.velocity, "multiple": opts.multiple,
            "y_shift": chart.y_shift, "y_scale": chart.y_scale,
            "quadrature": quad,
        }),
        node_count: q.node_count,
        refinements: q.refinements,
        converged: q.converged,
        wall_time_ms: start.elapsed().as_millis() as u64,
        warnings,
        diagnostics: json!({
            "surface_integral": q.value,
            "angular_factor": angular,
            "value_over_pi3": over_pi3,
            "value_over_pi4": over_pi4,
            "rational_over_pi3": frac(over_pi3),
            "rational_over_pi4": frac(over_pi4),
        }),
    })
}

/// How far `f(θ, y)` is from `f(π − θ, y)` on a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParityReport {
    pub max_abs_diff: f64,
    pub max_abs: f64,
    pub symmetric: bool,
}

pub fn parity_report(params: &YpqParams, grid: usize, norm: &Normalization) -> Result<ParityReport> {
    let (mut d, mut m) = (0.0_f64, 0.0_f64);
    for i in 0..grid {
        let theta = PI * (i as f64 + 0.5) / (2 * grid) as f64;
        for j in 0..grid {
            let y = params.y1 + (params.y2 - params.y1) * (j as f64 + 0.5) / grid as f64;
            let (a, b) = (integrand_f(params, theta, y, norm)?, integrand_f(params, PI - theta, y, norm)?);
            d = d.max((a - b).abs());
            m = m.max(a.abs());
        }
    }
    Ok(ParityReport { max_abs_diff: d, max_abs: m, symmetric: d <= 1e-12 * m.max(1e-300) })
}
