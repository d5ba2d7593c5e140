use crate::{Result, WcsError};
use serde::Serialize;
use std::f64::consts::PI;

/// Global data of a compact Kähler surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfaceSummary {
    /// Max of |R(e_i, e_j, e_k, e_l)| over frames and points.
    pub r_inf: f64,
    pub vol: f64,
    pub sigma: i64,
}

impl SurfaceSummary {
    pub fn new(r_inf: f64, vol: f64, sigma: i64) -> Result<Self> {
        if !(vol > 0.0) || !(r_inf >= 0.0) {
            return Err(WcsError::Invalid(format!("need vol > 0 and r_inf >= 0, got vol = {vol}, r_inf = {r_inf}")));
        }
        Ok(SurfaceSummary { r_inf, vol, sigma })
    }

    /// `(6/7)p² + 3π²σ / (7 vol p²)`
    pub fn threshold_rhs(&self, p: i64) -> f64 {
        let p2 = (p * p) as f64;
        6.0 / 7.0 * p2 + 3.0 * PI * PI * self.sigma as f64 / (7.0 * self.vol * p2)
    }
}

/// `p²(96π²σ − 224p² |R|∞ vol + 192p⁴ vol) > 0`
pub fn positivity_certificate(s: &SurfaceSummary, p: i64) -> bool {
    let p2 = (p * p) as f64;
    p2 * (96.0 * PI * PI * s.sigma as f64 - 224.0 * p2 * s.r_inf * s.vol + 192.0 * p2 * p2 * s.vol) > 0.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Verdict {
    pub p: i64,
    pub rhs: f64,
    pub holds: bool,
    pub certificate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub p0: i64,
    /// Beyond this p the right-hand side is increasing in p.
    pub monotone_from: i64,
    pub verdicts: Vec<Verdict>,
}

/// Smallest `p0 ≥ 1` such that `|R|∞ < (6/7)p² + 3π²σ/(7 vol p²)` for all
/// `|p| ≥ p0`. The right side is `u + c/u` in `u = p²`, increasing once
/// `p⁴ ≥ 7c'/6` with `c' = 3π²σ/(7 vol)`, so the scan stops at the first
/// success past that point.
pub fn rotation_threshold(s: &SurfaceSummary) -> ThresholdReport {
    let c = 3.0 * PI * PI * s.sigma as f64 / (7.0 * s.vol);
    let turn = if c > 0.0 { (7.0 * c / 6.0).powf(0.25).ceil() as i64 } else { 1 };
    let monotone_from = turn.max(1);
    let mut verdicts = Vec::new();
    let mut last_fail = 0;
    let mut p = 1;
    loop {
        let rhs = s.threshold_rhs(p);
        let holds = s.r_inf < rhs;
        verdicts.push(Verdict { p, rhs, holds, certificate: positivity_certificate(s, p) });
        if !holds {
            last_fail = p;
        } else if p >= monotone_from {
            break;
        }
        p += 1;
    }
    ThresholdReport { p0: last_fail + 1, monotone_from, verdicts }
}

/// Order of the torsion group `Z_gcd` of the fourth cohomology.
pub fn h4_order(chern_coeffs: &[u64]) -> Result<u64> {
    if chern_coeffs.is_empty() {
        return Err(WcsError::Invalid("h4 needs at least one coefficient".into()));
    }
    if chern_coeffs.contains(&0) {
        return Err(WcsError::Invalid("h4 coefficients must be positive".into()));
    }
    Ok(chern_coeffs.iter().fold(0, |g, &c| num_integer::gcd(g, c)))
}
