use super::charts::{Cp2FubiniStudy, FlatTorus, RoundS2, RoundS5, S2xS2};
use crate::tensor::Jet2;
use crate::ypq::{solve_params, YpqChart};
use crate::{Result, WcsError};

/// Open coordinate box.
#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl Domain {
    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.lower.len()
            && x.iter().zip(&self.lower).zip(&self.upper).all(|((v, lo), hi)| lo < v && v < hi)
    }

    /// Maps `u` in the unit cube affinely onto the box.
    pub fn from_unit(&self, u: &[f64]) -> Vec<f64> {
        u.iter()
            .zip(&self.lower)
            .zip(&self.upper)
            .map(|((t, lo), hi)| lo + t * (hi - lo))
            .collect()
    }
}

/// A coordinate chart with a metric evaluable on 2-jets.
pub trait MetricChart: Send + Sync {
    fn name(&self) -> &str;
    fn dim(&self) -> usize;
    fn domain(&self) -> Domain;
    /// Full symmetric matrix `g_ab(x)`.
    fn metric(&self, x: &[Jet2]) -> Vec<Vec<Jet2>>;
    /// `J[a][b]` = component `a` of `J ∂_b`, for Kähler charts.
    fn complex_structure(&self, _x: &[f64]) -> Option<Vec<Vec<f64>>> {
        None
    }
}

/// Shape parameters for charts that take them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartParams {
    pub a: f64,
    pub b: f64,
    pub p: i64,
    pub q: i64,
}

impl Default for ChartParams {
    fn default() -> Self {
        ChartParams { a: 1.0, b: 1.0, p: 7, q: 3 }
    }
}

pub const CHART_NAMES: &[&str] =
    &["flat-t4", "cp2-fs", "s2xs2", "ypq", "round-s2", "round-s5", "flat-t5"];

pub fn chart_by_name(name: &str, params: &ChartParams) -> Result<Box<dyn MetricChart>> {
    Ok(match name {
        "flat-t4" => Box::new(FlatTorus::new(4)),
        "flat-t5" => Box::new(FlatTorus::new(5)),
        "cp2-fs" => Box::new(Cp2FubiniStudy::default()),
        "s2xs2" => Box::new(S2xS2::new(params.a, params.b)?),
        "round-s2" => Box::new(RoundS2),
        "round-s5" => Box::new(RoundS5),
        "ypq" => Box::new(YpqChart::new(solve_params(params.p, params.q)?)),
        other => return Err(WcsError::UnknownChart(other.to_string())),
    })
}
