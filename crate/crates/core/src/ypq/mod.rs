//! The Y^{p,q} Sasaki-Einstein metrics and their WCS integral under the
//! α-rotation loop.

mod chart;
mod einstein;
mod integrate;
mod params;
mod quad;

pub use chart::{metric_at, YpqChart, COORDS};
pub use einstein::{einstein_residual, einstein_residual_chart, EinsteinReport};
pub use integrate::{
    integrand_f, integrand_f_full, integrand_raw, integrate, integrate_with, parity_report, IntegrandOptions,
    LoopVelocity, ParityReport,
};
pub use params::{solve_params, YpqParams};
pub use quad::{QuadRule, QuadratureResult, QuadratureSpec};
