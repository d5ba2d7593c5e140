use crate::{Result, WcsError};
use serde::Serialize;

/// Parameters of one Y^{p,q} metric.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct YpqParams {
    pub p: i64,
    pub q: i64,
    pub n: i64,
    pub a: f64,
    /// α ranges over (0, 2πℓ).
    pub ell: f64,
    pub y1: f64,
    pub y2: f64,
    pub y3: f64,
}

fn cubic(a: f64, y: f64) -> f64 {
    a - 3.0 * y * y + 2.0 * y * y * y
}

/// Bisection on a sign change, then Newton polishing kept inside the bracket.
fn root_in(a: f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = cubic(a, lo);
    debug_assert!(flo * cubic(a, hi) < 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (cubic(a, mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    let mut y = 0.5 * (lo + hi);
    for _ in 0..4 {
        let d = 6.0 * y * (y - 1.0);
        if d == 0.0 {
            break;
        }
        let next = y - cubic(a, y) / d;
        if next.is_finite() && (next - y).abs() < 1e-12 {
            y = next;
        }
    }
    y
}

impl YpqParams {
    /// Roots of `a − 3y² + 2y³` and a supplied period factor, for `a ∈ (0,1)`
    /// not coming from integers `(p, q)`; `p = q = n = 0` mark it synthetic.
    pub fn synthetic(a: f64, ell: f64) -> Result<Self> {
        if !(a > 0.0 && a < 1.0) {
            return Err(WcsError::Invalid(format!("a must lie in (0, 1), got {a}")));
        }
        if !(ell > 0.0) {
            return Err(WcsError::Invalid(format!("ell must be positive, got {ell}")));
        }
        // local max a > 0 at y = 0, local min a − 1 < 0 at y = 1
        let y1 = root_in(a, -1.0, 0.0);
        let y2 = root_in(a, 0.0, 1.0);
        let y3 = root_in(a, 1.0, 2.0);
        Ok(YpqParams { p: 0, q: 0, n: 0, a, ell, y1, y2, y3 })
    }

    pub fn is_synthetic(&self) -> bool {
        self.p == 0
    }

    pub fn residuals(&self) -> [f64; 3] {
        [cubic(self.a, self.y1), cubic(self.a, self.y2), cubic(self.a, self.y3)]
    }

    pub fn w(&self, y: f64) -> f64 {
        2.0 * (self.a - y * y) / (1.0 - y)
    }

    pub fn q_of(&self, y: f64) -> f64 {
        (self.a - 3.0 * y * y + 2.0 * y * y * y) / (self.a - y * y)
    }
}

fn isqrt(v: i64) -> Option<i64> {
    if v < 0 {
        return None;
    }
    let mut r = (v as f64).sqrt() as i64;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    (r * r == v).then_some(r)
}

/// Validated parameters from `(p, q)`:
///
/// ```text
/// a = 1/2 − (p² − 3q²) n / (4p³),   ℓ = q / (3q² − 2p² + pn),   n² = 4p² − 3q²
/// ```
pub fn solve_params(p: i64, q: i64) -> Result<YpqParams> {
    if !(0 < q && q < p) {
        return Err(WcsError::BadOrdering { p, q });
    }
    if num_integer::gcd(p, q) != 1 {
        return Err(WcsError::NotCoprime { p, q });
    }
    let disc = 4 * p * p - 3 * q * q;
    let n = isqrt(disc).ok_or(WcsError::NotPerfectSquare(disc))?;
    let (pf, qf, nf) = (p as f64, q as f64, n as f64);
    let a = 0.5 - (pf * pf - 3.0 * qf * qf) * nf / (4.0 * pf * pf * pf);
    let ell = qf / (3.0 * qf * qf - 2.0 * pf * pf + pf * nf);
    let mut out = YpqParams::synthetic(a, ell)?;
    out.p = p;
    out.q = q;
    out.n = n;
    Ok(out)
}
