//! Metric charts and the Levi-Civita curvature pipeline.

mod chart;
mod charts;
mod point;

pub use chart::{chart_by_name, ChartParams, Domain, MetricChart, CHART_NAMES};
pub use charts::{Cp2FubiniStudy, FlatTorus, RoundS2, RoundS5, S2xS2};
pub use point::{
    christoffel, gram_schmidt, kahler_frame, p1_density, ricci, riemann_at, standard_j,
    PointGeometry,
};
