use super::params::YpqParams;
use crate::geometry::{Domain, MetricChart};
use crate::tensor::Jet2;
use crate::{Result, WcsError};
use std::f64::consts::PI;

/// Coordinate order of the chart.
pub const COORDS: [&str; 5] = ["phi", "theta", "y", "psi", "alpha"];

/// ```text
/// g = (1−y)/6 (dθ² + sin²θ dφ²) + dy²/(w q) + q/9 (dψ − cosθ dφ)²
///     + w [dα + f (dψ − cosθ dφ)]²
/// w = 2(a − y²)/(1 − y),  q = (a − 3y² + 2y³)/(a − y²),  f = (a − 2y + y²)/(6(a − y²))
/// ```
///
/// The third coordinate is `s` with `y = y_shift + y_scale·s`; the default
/// map is the identity.
#[derive(Debug, Clone, Copy)]
pub struct YpqChart {
    pub params: YpqParams,
    pub y_shift: f64,
    pub y_scale: f64,
}

impl YpqChart {
    pub fn new(params: YpqParams) -> Self {
        YpqChart { params, y_shift: 0.0, y_scale: 1.0 }
    }

    pub fn with_affine_y(params: YpqParams, y_shift: f64, y_scale: f64) -> Self {
        YpqChart { params, y_shift, y_scale }
    }

    pub fn s_of_y(&self, y: f64) -> f64 {
        (y - self.y_shift) / self.y_scale
    }
}

impl MetricChart for YpqChart {
    fn name(&self) -> &str {
        "ypq"
    }
    fn dim(&self) -> usize {
        5
    }
    fn domain(&self) -> Domain {
        let (s1, s2) = (self.s_of_y(self.params.y1), self.s_of_y(self.params.y2));
        Domain {
            lower: vec![0.0, 0.0, s1.min(s2), 0.0, 0.0],
            upper: vec![2.0 * PI, PI, s1.max(s2), 2.0 * PI, 2.0 * PI * self.params.ell],
        }
    }
    fn metric(&self, x: &[Jet2]) -> Vec<Vec<Jet2>> {
        let a = self.params.a;
        let theta = x[1];
        let y = x[2] * self.y_scale + self.y_shift;
        let (st, ct) = (theta.sin(), theta.cos());
        let ay = a - y * y;
        let w = 2.0 * ay / (1.0 - y);
        let q = (a - 3.0 * y * y + 2.0 * y * y * y) / ay;
        let f = (a - 2.0 * y + y * y) / (ay * 6.0);
        let base = (1.0 - y) / 6.0;
        let zero = Jet2::constant(0.0);
        let mut g = vec![vec![zero; 5]; 5];
        let (phi, th, yy, psi, al) = (0, 1, 2, 3, 4);
        let fiber = q / 9.0 + w * f * f;
        g[phi][phi] = base * st * st + fiber * ct * ct;
        g[phi][psi] = -(fiber * ct);
        g[phi][al] = -(w * f * ct);
        g[th][th] = base;
        g[yy][yy] = (w * q).recip() * (self.y_scale * self.y_scale);
        g[psi][psi] = fiber;
        g[psi][al] = w * f;
        g[al][al] = w;
        for (i, j) in [(phi, psi), (phi, al), (psi, al)] {
            g[j][i] = g[i][j];
        }
        g
    }
}

/// The metric at `(θ, y)` with values only, rejecting the degenerate
/// boundary of the open domain.
pub fn metric_at(params: &YpqParams, theta: f64, y: f64) -> Result<Vec<Vec<f64>>> {
    if !(theta > 0.0 && theta < PI && y > params.y1 && y < params.y2) {
        return Err(WcsError::OutsideDomain { location: vec![theta, y] });
    }
    let chart = YpqChart::new(*params);
    let x: Vec<Jet2> = [0.0, theta, y, 0.0, 0.0].iter().map(|&v| Jet2::constant(v)).collect();
    let g = chart.metric(&x);
    Ok(g.iter().map(|row| row.iter().map(|j| j.v).collect()).collect())
}
