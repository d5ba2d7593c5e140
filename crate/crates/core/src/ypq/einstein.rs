use super::chart::YpqChart;
use super::params::YpqParams;
use crate::geometry::{riemann_at, ricci, MetricChart};
use crate::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EinsteinReport {
    /// Median of `Ric_ii / g_ii` over all samples.
    pub lambda: f64,
    /// Max over samples of `max |Ric − Λ g|`.
    pub residual: f64,
    pub samples: usize,
    pub worst_point: Vec<f64>,
}

/// Random points strictly inside the domain, away from its faces by
/// `margin` times each side length.
pub fn einstein_residual_chart(chart: &dyn MetricChart, samples: usize, seed: u64, margin: f64) -> Result<EinsteinReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dom = chart.domain();
    let n = chart.dim();
    let mut rics = Vec::with_capacity(samples);
    for _ in 0..samples.max(1) {
        let u: Vec<f64> = (0..n).map(|_| rng.gen_range(margin..1.0 - margin)).collect();
        let x = dom.from_unit(&u);
        let pg = riemann_at(chart, &x)?;
        rics.push((x, ricci(&pg), pg.g));
    }
    let mut ratios: Vec<f64> =
        rics.iter().flat_map(|(_, r, g)| (0..n).map(move |i| r[i][i] / g[i][i])).collect();
    ratios.sort_by(f64::total_cmp);
    let lambda = ratios[ratios.len() / 2];
    let (mut residual, mut worst_point) = (0.0_f64, Vec::new());
    for (x, r, g) in &rics {
        for i in 0..n {
            for j in 0..n {
                let d = (r[i][j] - lambda * g[i][j]).abs();
                if d > residual || worst_point.is_empty() {
                    residual = residual.max(d);
                    worst_point = x.clone();
                }
            }
        }
    }
    Ok(EinsteinReport { lambda, residual, samples: rics.len(), worst_point })
}

pub fn einstein_residual(params: &YpqParams, samples: usize, seed: u64) -> Result<EinsteinReport> {
    einstein_residual_chart(&YpqChart::new(*params), samples, seed, 0.01)
}
