//! Report type shared by the library and the command-line front end.

use serde::{Deserialize, Serialize};

/// A computed integral with provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WcsReport {
    pub value: f64,
    pub error_estimate: f64,
    pub constant_c3: f64,
    pub sign_convention: String,
    pub params_echo: serde_json::Value,
    pub node_count: usize,
    pub refinements: usize,
    pub converged: bool,
    pub wall_time_ms: u64,
    pub warnings: Vec<String>,
    pub diagnostics: serde_json::Value,
}

/// First continued-fraction convergent `n/d` of `x` with `d <= max_den`
/// and `|x − n/d| <= rel_tol |x|`.
pub fn rational_approx(x: f64, max_den: i64, rel_tol: f64) -> Option<(i64, i64)> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0_i64, 1_i64);
    let (mut k0, mut k1) = (1_i64, 0_i64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let ai = a as i64;
        let h2 = ai.checked_mul(h1)?.checked_add(h0)?;
        let k2 = ai.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            return None;
        }
        if (x - h2 as f64 / k2 as f64).abs() <= rel_tol * x.abs() {
            return Some((h2, k2));
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a;
        if frac == 0.0 {
            return None;
        }
        r = 1.0 / frac;
    }
    None
}
