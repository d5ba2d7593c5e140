use super::chart::MetricChart;
use crate::tensor::{permutations, AlgCurvature, FrameKind, Jet2};
use crate::{Result, WcsError};
use nalgebra::DMatrix;
use std::f64::consts::PI;

/// Levi-Civita data and curvature of a chart at one point.
#[derive(Debug, Clone)]
pub struct PointGeometry {
    pub x: Vec<f64>,
    pub g: Vec<Vec<f64>>,
    pub g_inv: Vec<Vec<f64>>,
    /// `gamma[i][j][k] = Γ^i_{jk}`
    pub gamma: Vec<Vec<Vec<f64>>>,
    /// Coordinate components `R(∂j, ∂k, ∂b, ∂a)`.
    pub riemann: AlgCurvature,
    /// Rows are g-orthonormal vectors in coordinates (Gram-Schmidt of ∂0, ∂1, ...).
    pub frame: Vec<Vec<f64>>,
}

struct MetricJets {
    g: Vec<Vec<f64>>,
    /// `dg[l][a][b] = ∂_l g_ab`
    dg: Vec<Vec<Vec<f64>>>,
    /// `ddg[l][m][a][b] = ∂_l ∂_m g_ab`
    ddg: Vec<Vec<Vec<Vec<f64>>>>,
}

fn metric_jets(chart: &dyn MetricChart, x: &[f64]) -> Result<MetricJets> {
    let n = chart.dim();
    if x.len() != n {
        return Err(WcsError::DimensionMismatch { expected: n, got: x.len() });
    }
    let vars: Vec<Jet2> = x.iter().enumerate().map(|(i, &v)| Jet2::var(v, i)).collect();
    let m = chart.metric(&vars);
    if m.iter().flatten().any(|j| !j.is_finite()) {
        return Err(WcsError::Evaluation {
            location: x.to_vec(),
            message: format!("metric of chart '{}' is not finite", chart.name()),
        });
    }
    let g = (0..n).map(|a| (0..n).map(|b| m[a][b].v).collect()).collect();
    let dg = (0..n)
        .map(|l| (0..n).map(|a| (0..n).map(|b| m[a][b].g[l]).collect()).collect())
        .collect();
    let ddg = (0..n)
        .map(|l| {
            (0..n)
                .map(|k| (0..n).map(|a| (0..n).map(|b| m[a][b].h[l][k]).collect()).collect())
                .collect()
        })
        .collect();
    Ok(MetricJets { g, dg, ddg })
}

fn invert_spd(g: &[Vec<f64>], x: &[f64]) -> Result<Vec<Vec<f64>>> {
    let n = g.len();
    let m = DMatrix::from_fn(n, n, |i, j| g[i][j]);
    let chol = m.cholesky().ok_or_else(|| WcsError::SingularMetric { location: x.to_vec() })?;
    let inv = chol.inverse();
    Ok((0..n).map(|i| (0..n).map(|j| inv[(i, j)]).collect()).collect())
}

fn gamma_from(g_inv: &[Vec<f64>], dg: &[Vec<Vec<f64>>]) -> Vec<Vec<Vec<f64>>> {
    let n = g_inv.len();
    let mut gamma = vec![vec![vec![0.0; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in j..n {
                let mut s = 0.0;
                for l in 0..n {
                    s += g_inv[i][l] * (dg[j][l][k] + dg[k][l][j] - dg[l][j][k]);
                }
                gamma[i][j][k] = 0.5 * s;
                gamma[i][k][j] = 0.5 * s;
            }
        }
    }
    gamma
}

/// `Γ^i_{jk} = ½ g^{il}(∂_j g_lk + ∂_k g_lj − ∂_l g_jk)`.
pub fn christoffel(chart: &dyn MetricChart, x: &[f64]) -> Result<Vec<Vec<Vec<f64>>>> {
    let mj = metric_jets(chart, x)?;
    let g_inv = invert_spd(&mj.g, x)?;
    Ok(gamma_from(&g_inv, &mj.dg))
}

/// Modified Gram-Schmidt of `vectors` (rows, in coordinates) in the metric `g`.
pub fn gram_schmidt(vectors: &[Vec<f64>], g: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = g.len();
    let ip = |u: &[f64], v: &[f64]| {
        let mut s = 0.0;
        for a in 0..n {
            for b in 0..n {
                s += u[a] * g[a][b] * v[b];
            }
        }
        s
    };
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut w = v.clone();
        for e in &out {
            let c = ip(&w, e);
            for a in 0..n {
                w[a] -= c * e[a];
            }
        }
        let norm = ip(&w, &w).sqrt();
        out.push(w.iter().map(|x| x / norm).collect());
    }
    out
}

/// Christoffels, Riemann tensor and orthonormal frame at `x`.
pub fn riemann_at(chart: &dyn MetricChart, x: &[f64]) -> Result<PointGeometry> {
    let n = chart.dim();
    let mj = metric_jets(chart, x)?;
    let g_inv = invert_spd(&mj.g, x)?;
    let gamma = gamma_from(&g_inv, &mj.dg);

    // ∂_m g^{il} = −g^{ia} ∂_m g_ab g^{bl}
    let mut dginv = vec![vec![vec![0.0; n]; n]; n];
    for m in 0..n {
        for i in 0..n {
            for l in 0..n {
                let mut s = 0.0;
                for a in 0..n {
                    for b in 0..n {
                        s += g_inv[i][a] * mj.dg[m][a][b] * g_inv[b][l];
                    }
                }
                dginv[m][i][l] = -s;
            }
        }
    }
    // dgamma[m][i][j][k] = ∂_m Γ^i_{jk}
    let mut dgamma = vec![vec![vec![vec![0.0; n]; n]; n]; n];
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                for k in j..n {
                    let mut s = 0.0;
                    for l in 0..n {
                        let first = mj.dg[j][l][k] + mj.dg[k][l][j] - mj.dg[l][j][k];
                        let second = mj.ddg[m][j][l][k] + mj.ddg[m][k][l][j] - mj.ddg[m][l][j][k];
                        s += dginv[m][i][l] * first + g_inv[i][l] * second;
                    }
                    dgamma[m][i][j][k] = 0.5 * s;
                    dgamma[m][i][k][j] = 0.5 * s;
                }
            }
        }
    }
    // R^a_{jkb} = ∂_j Γ^a_{kb} − ∂_k Γ^a_{jb} + Γ^a_{jc} Γ^c_{kb} − Γ^a_{kc} Γ^c_{jb}
    let mut rup = vec![0.0; n * n * n * n];
    let at = |a: usize, j: usize, k: usize, b: usize| ((a * n + j) * n + k) * n + b;
    for a in 0..n {
        for j in 0..n {
            for k in 0..n {
                for b in 0..n {
                    let mut s = dgamma[j][a][k][b] - dgamma[k][a][j][b];
                    for c in 0..n {
                        s += gamma[a][j][c] * gamma[c][k][b] - gamma[a][k][c] * gamma[c][j][b];
                    }
                    rup[at(a, j, k, b)] = s;
                }
            }
        }
    }
    let riemann = AlgCurvature::from_fn(n, FrameKind::CoordinateWithMetric, |j, k, b, a| {
        let mut s = 0.0;
        for c in 0..n {
            s += rup[at(c, j, k, b)] * mj.g[c][a];
        }
        s
    });
    let basis: Vec<Vec<f64>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    let frame = gram_schmidt(&basis, &mj.g);
    Ok(PointGeometry { x: x.to_vec(), g: mj.g, g_inv, gamma, riemann, frame })
}

impl PointGeometry {
    pub fn dim(&self) -> usize {
        self.g.len()
    }

    /// Curvature components in the rows of `frame` (orthonormal).
    pub fn in_frame(&self, frame: &[Vec<f64>]) -> AlgCurvature {
        self.riemann.transform(frame, FrameKind::Orthonormal)
    }

    /// Curvature in the Gram-Schmidt frame.
    pub fn frame_curvature(&self) -> AlgCurvature {
        self.in_frame(&self.frame)
    }

    /// Components of the coordinate vector `∂_a` along the frame rows.
    pub fn coordinate_vector_in_frame(&self, frame: &[Vec<f64>], a: usize) -> Vec<f64> {
        let n = self.dim();
        frame.iter().map(|e| (0..n).map(|b| self.g[a][b] * e[b]).sum()).collect()
    }
}

/// `Ric_jk = g^{ia} R_{ijka}`; positive on round spheres.
pub fn ricci(pg: &PointGeometry) -> Vec<Vec<f64>> {
    let n = pg.dim();
    let mut ric = vec![vec![0.0; n]; n];
    for j in 0..n {
        for k in 0..n {
            let mut s = 0.0;
            for i in 0..n {
                for a in 0..n {
                    s += pg.g_inv[i][a] * pg.riemann.get(i, j, k, a);
                }
            }
            ric[j][k] = s;
        }
    }
    ric
}

/// `J` in an adapted frame `(e2, Je2, e3, Je3)`.
pub fn standard_j() -> [[f64; 4]; 4] {
    let mut j = [[0.0; 4]; 4];
    j[1][0] = 1.0;
    j[0][1] = -1.0;
    j[3][2] = 1.0;
    j[2][3] = -1.0;
    j
}

/// Orthonormal frame `(e2, Je2, e3, Je3)` from Gram-Schmidt on
/// `(∂0, J∂0, ∂2, J∂2)`.
pub fn kahler_frame(chart: &dyn MetricChart, pg: &PointGeometry) -> Result<Vec<Vec<f64>>> {
    if chart.dim() != 4 {
        return Err(WcsError::DimensionMismatch { expected: 4, got: chart.dim() });
    }
    let j = chart
        .complex_structure(&pg.x)
        .ok_or_else(|| WcsError::Invalid(format!("chart '{}' has no complex structure", chart.name())))?;
    let col = |b: usize| (0..4).map(|a| j[a][b]).collect::<Vec<f64>>();
    let unit = |b: usize| (0..4).map(|a| if a == b { 1.0 } else { 0.0 }).collect::<Vec<f64>>();
    Ok(gram_schmidt(&[unit(0), col(0), unit(2), col(2)], &pg.g))
}

/// `p1(Ω)(X1..X4) = −tr(Ω∧Ω)(X1..X4) / 8π²` for an orthonormal-frame
/// tensor, with `tr(Ω∧Ω)(X1..X4) = ¼ Σ_σ sgn σ tr(Ω(Xσ1,Xσ2) Ω(Xσ3,Xσ4))`
/// and `Ω(X,Y)^a_b = R(X,Y,e_b,e_a)`.
pub fn p1_density(r: &AlgCurvature, args: &[Vec<f64>]) -> Result<f64> {
    if r.dim() != 4 || args.len() != 4 {
        return Err(WcsError::DimensionMismatch { expected: 4, got: r.dim().min(args.len()) });
    }
    // omega[i][j][a][b] = R(X_i, X_j, e_b, e_a)
    let mut omega = vec![vec![[[0.0; 4]; 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for a in 0..4 {
                for b in 0..4 {
                    let mut s = 0.0;
                    for c in 0..4 {
                        for d in 0..4 {
                            s += args[i][c] * args[j][d] * r.get(c, d, b, a);
                        }
                    }
                    omega[i][j][a][b] = s;
                }
            }
        }
    }
    let mut total = 0.0;
    for p in permutations(4) {
        let (u, v) = (&omega[p.image[0]][p.image[1]], &omega[p.image[2]][p.image[3]]);
        let mut tr = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                tr += u[a][b] * v[b][a];
            }
        }
        total += p.sign * tr;
    }
    Ok(-(total / 4.0) / (8.0 * PI * PI))
}
