use super::chart::{Domain, MetricChart};
use crate::tensor::Jet2;
use crate::{Result, WcsError};
use std::f64::consts::PI;

fn diag(entries: Vec<Jet2>) -> Vec<Vec<Jet2>> {
    let n = entries.len();
    let mut g = vec![vec![Jet2::constant(0.0); n]; n];
    for (i, e) in entries.into_iter().enumerate() {
        g[i][i] = e;
    }
    g
}

/// `J ∂0 = ∂1, J ∂1 = -∂0, J ∂2 = ∂3, J ∂3 = -∂2`.
fn pairwise_j() -> Vec<Vec<f64>> {
    let mut j = vec![vec![0.0; 4]; 4];
    j[1][0] = 1.0;
    j[0][1] = -1.0;
    j[3][2] = 1.0;
    j[2][3] = -1.0;
    j
}

/// Flat unit torus `(0,1)^n`.
#[derive(Debug, Clone)]
pub struct FlatTorus {
    dim: usize,
    name: String,
}

impl FlatTorus {
    pub fn new(dim: usize) -> Self {
        FlatTorus { dim, name: format!("flat-t{dim}") }
    }
}

impl MetricChart for FlatTorus {
    fn name(&self) -> &str {
        &self.name
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn domain(&self) -> Domain {
        Domain { lower: vec![0.0; self.dim], upper: vec![1.0; self.dim] }
    }
    fn metric(&self, _x: &[Jet2]) -> Vec<Vec<Jet2>> {
        diag(vec![Jet2::constant(1.0); self.dim])
    }
    fn complex_structure(&self, _x: &[f64]) -> Option<Vec<Vec<f64>>> {
        (self.dim == 4).then(pairwise_j)
    }
}

/// Unit sphere in coordinates `(θ, φ)`.
#[derive(Debug, Clone, Copy)]
pub struct RoundS2;

impl MetricChart for RoundS2 {
    fn name(&self) -> &str {
        "round-s2"
    }
    fn dim(&self) -> usize {
        2
    }
    fn domain(&self) -> Domain {
        Domain { lower: vec![0.0, 0.0], upper: vec![PI, 2.0 * PI] }
    }
    fn metric(&self, x: &[Jet2]) -> Vec<Vec<Jet2>> {
        diag(vec![Jet2::constant(1.0), x[0].sin().powi(2)])
    }
}

/// Unit 5-sphere in hyperspherical coordinates `(χ1, χ2, χ3, χ4, φ)`.
#[derive(Debug, Clone, Copy)]
pub struct RoundS5;

impl MetricChart for RoundS5 {
    fn name(&self) -> &str {
        "round-s5"
    }
    fn dim(&self) -> usize {
        5
    }
    fn domain(&self) -> Domain {
        Domain { lower: vec![0.0; 5], upper: vec![PI, PI, PI, PI, 2.0 * PI] }
    }
    fn metric(&self, x: &[Jet2]) -> Vec<Vec<Jet2>> {
        let mut entries = Vec::with_capacity(5);
        let mut f = Jet2::constant(1.0);
        for xi in x.iter().take(5) {
            entries.push(f);
            f = f * xi.sin().powi(2);
        }
        diag(entries)
    }
}

/// Fubini-Study metric on the affine chart `z_k = x_k + i y_k` of CP^2,
/// coordinates `(x1, y1, x2, y2)`, holomorphic sectional curvature 4.
#[derive(Debug, Clone, Copy)]
pub struct Cp2FubiniStudy {
    pub half_width: f64,
}

impl Default for Cp2FubiniStudy {
    fn default() -> Self {
        Cp2FubiniStudy { half_width: 3.0 }
    }
}

impl MetricChart for Cp2FubiniStudy {
    fn name(&self) -> &str {
        "cp2-fs"
    }
    fn dim(&self) -> usize {
        4
    }
    fn domain(&self) -> Domain {
        Domain { lower: vec![-self.half_width; 4], upper: vec![self.half_width; 4] }
    }
    fn metric(&self, x: &[Jet2]) -> Vec<Vec<Jet2>> {
        let (re, im) = ([x[0], x[2]], [x[1], x[3]]);
        let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
        let s = 1.0 + r2;
        let s2 = s * s;
        let zero = Jet2::constant(0.0);
        // h_{i jbar} = [δ_ij (1+|z|^2) - conj(z_i) z_j] / (1+|z|^2)^2
        let mut g = vec![vec![zero; 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                let delta = if i == j { s } else { zero };
                let h_re = (delta - (re[i] * re[j] + im[i] * im[j])) / s2;
                let h_im = (-(re[i] * im[j] - im[i] * re[j])) / s2;
                let (xi, yi, xj, yj) = (2 * i, 2 * i + 1, 2 * j, 2 * j + 1);
                // g(u, v) = Re h(u, conj v) on real tangent vectors
                g[xi][xj] = h_re;
                g[yi][yj] = h_re;
                g[xi][yj] = h_im;
                g[yi][xj] = -h_im;
            }
        }
        g
    }
    fn complex_structure(&self, _x: &[f64]) -> Option<Vec<Vec<f64>>> {
        Some(pairwise_j())
    }
}

/// Product of round spheres of radii `sqrt(a)` and `sqrt(b)`,
/// coordinates `(θ1, φ1, θ2, φ2)`.
#[derive(Debug, Clone, Copy)]
pub struct S2xS2 {
    pub a: f64,
    pub b: f64,
}

impl S2xS2 {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0) {
            return Err(WcsError::Invalid(format!("s2xs2 needs a, b > 0, got ({a}, {b})")));
        }
        Ok(S2xS2 { a, b })
    }

    pub fn volume(&self) -> f64 {
        16.0 * PI * PI * self.a * self.b
    }
}

impl MetricChart for S2xS2 {
    fn name(&self) -> &str {
        "s2xs2"
    }
    fn dim(&self) -> usize {
        4
    }
    fn domain(&self) -> Domain {
        Domain { lower: vec![0.0; 4], upper: vec![PI, 2.0 * PI, PI, 2.0 * PI] }
    }
    fn metric(&self, x: &[Jet2]) -> Vec<Vec<Jet2>> {
        diag(vec![
            Jet2::constant(self.a),
            x[0].sin().powi(2) * self.a,
            Jet2::constant(self.b),
            x[2].sin().powi(2) * self.b,
        ])
    }
    fn complex_structure(&self, x: &[f64]) -> Option<Vec<Vec<f64>>> {
        let (s1, s2) = (x[0].sin(), x[2].sin());
        let mut j = vec![vec![0.0; 4]; 4];
        j[1][0] = 1.0 / s1;
        j[0][1] = -s1;
        j[3][2] = 1.0 / s2;
        j[2][3] = -s2;
        Some(j)
    }
}
