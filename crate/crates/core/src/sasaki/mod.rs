//! Circle bundles over Kähler surfaces and their WCS integrand.
//!
//! Frames on the surface are J-adapted and ordered `(e2, Je2, e3, Je3)`;
//! on the total space index 0 is the unit vertical field ξ and indices
//! 1..=4 are horizontal lifts.

mod bterms;
mod k3;
mod threshold;

pub use bterms::{b2_groups, bterms, bterms_reference, perm1_group, BTerms};
pub use k3::{k3_bracket, k3_bracket_unchecked, random_k3_operator, CurvatureOperator, Orientation};
pub use threshold::{h4_order, positivity_certificate, rotation_threshold, SurfaceSummary, ThresholdReport, Verdict};

use crate::geometry::{kahler_frame, p1_density, riemann_at, standard_j, MetricChart};
use crate::tensor::{AlgCurvature, FrameKind};
use crate::wcsform::{wcs_reduced, Normalization, WcsPointInput};
use crate::{Result, WcsError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;

/// Unit 2-forms `Σ_{a<b} φ_ab² = 1` spanning Λ²₊ and Λ²₋ for the
/// orientation `e2 ∧ Je2 ∧ e3 ∧ Je3`; the first self-dual form is the
/// Kähler form.
pub(crate) fn two_form_bases() -> ([[[f64; 4]; 4]; 3], [[[f64; 4]; 4]; 3]) {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let form = |terms: &[(usize, usize, f64)]| {
        let mut f = [[0.0; 4]; 4];
        for &(a, b, c) in terms {
            f[a][b] += c * s;
            f[b][a] -= c * s;
        }
        f
    };
    let plus = [
        form(&[(0, 1, 1.0), (2, 3, 1.0)]),
        form(&[(0, 2, 1.0), (1, 3, -1.0)]),
        form(&[(0, 3, 1.0), (1, 2, 1.0)]),
    ];
    let minus = [
        form(&[(0, 1, 1.0), (2, 3, -1.0)]),
        form(&[(0, 2, 1.0), (1, 3, 1.0)]),
        form(&[(0, 3, 1.0), (1, 2, -1.0)]),
    ];
    (plus, minus)
}

/// `R = −Σ_ij m_ij φ_i ⊗ φ_j` for unit 2-forms `φ_i`.
pub(crate) fn curvature_from_forms(forms: &[[[f64; 4]; 4]], m: &[Vec<f64>]) -> AlgCurvature {
    AlgCurvature::from_fn(4, FrameKind::Orthonormal, |a, b, c, d| {
        let mut s = 0.0;
        for (i, fi) in forms.iter().enumerate() {
            for (j, fj) in forms.iter().enumerate() {
                s -= m[i][j] * fi[a][b] * fj[c][d];
            }
        }
        s
    })
}

/// Random curvature of Kähler type: an operator on
/// `u(2) = <ω> ⊕ Λ²₋` whose ω-ω entry equals the trace of the Λ²₋ block,
/// which is what the first Bianchi identity requires.
pub fn random_kahler_curvature(seed: u64) -> AlgCurvature {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in i..3 {
            let v: f64 = rng.gen_range(-1.0..1.0);
            b[i][j] = v;
            b[j][i] = v;
        }
    }
    let c: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let (plus, minus) = two_form_bases();
    let forms = [plus[0], minus[0], minus[1], minus[2]];
    let mut m = vec![vec![0.0; 4]; 4];
    m[0][0] = b[0][0] + b[1][1] + b[2][2];
    for i in 0..3 {
        m[0][i + 1] = c[i];
        m[i + 1][0] = c[i];
        for j in 0..3 {
            m[i + 1][j + 1] = b[i][j];
        }
    }
    curvature_from_forms(&forms, &m)
}

/// Fubini-Study curvature in an adapted frame, holomorphic sectional
/// curvature 4: `R(X,JX,X,JX) = −4` for unit X.
pub fn cp2_fubini_study_curvature() -> AlgCurvature {
    let (plus, minus) = two_form_bases();
    let forms = [plus[0], minus[0], minus[1], minus[2]];
    let m = vec![
        vec![6.0, 0.0, 0.0, 0.0],
        vec![0.0, 2.0, 0.0, 0.0],
        vec![0.0, 0.0, 2.0, 0.0],
        vec![0.0, 0.0, 0.0, 2.0],
    ];
    curvature_from_forms(&forms, &m)
}

fn check_j(j: &[[f64; 4]; 4]) -> Result<()> {
    let mut defect: f64 = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            let mut jj = 0.0;
            let mut jtj = 0.0;
            for c in 0..4 {
                jj += j[a][c] * j[c][b];
                jtj += j[c][a] * j[c][b];
            }
            let id = if a == b { 1.0 } else { 0.0 };
            defect = defect.max((jj + id).abs()).max((jtj - id).abs());
        }
    }
    if defect > 1e-12 {
        return Err(WcsError::IncompatibleComplexStructure(defect));
    }
    Ok(())
}

/// Curvature of the total space of the circle bundle of degree `p` in the
/// frame `(ξ, e1^L, .., e4^L)`:
///
/// * horizontal: `R(X,Y,Z,W) + p²[−ω(Y,Z)ω(X,W) + ω(X,Z)ω(Y,W) + 2ω(X,Y)ω(Z,W)]`
///   with `ω(X,Y) = <JX,Y>`,
/// * `R(X,Y,Z,ξ) = 0`,
/// * `R(ξ,X,Y,ξ) = p² <X,Y>`.
///
/// `j[a][b]` is component `a` of `J e_b`.
pub fn lift_curvature(r4: &AlgCurvature, j: &[[f64; 4]; 4], p: i64) -> Result<AlgCurvature> {
    if r4.dim() != 4 {
        return Err(WcsError::DimensionMismatch { expected: 4, got: r4.dim() });
    }
    check_j(j)?;
    let p2 = (p * p) as f64;
    let om = |a: usize, b: usize| j[b][a];
    let mut out = AlgCurvature::zeros(5, FrameKind::Orthonormal);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let v = r4.get(a, b, c, d)
                        + p2 * (-om(b, c) * om(a, d) + om(a, c) * om(b, d) + 2.0 * om(a, b) * om(c, d));
                    out.set(a + 1, b + 1, c + 1, d + 1, v);
                }
            }
        }
    }
    for a in 1..5 {
        out.set(0, a, a, 0, p2);
        out.set(a, 0, 0, a, p2);
        out.set(0, a, 0, a, -p2);
        out.set(a, 0, a, 0, -p2);
    }
    Ok(out)
}

/// Curvature data of a Kähler surface at one point, adapted frame.
#[derive(Debug, Clone)]
pub struct KahlerPointData {
    /// `R(e2,Je2,e3,Je3), R(e2,e3,e2,e3), R(e2,Je3,e2,Je3), R(e2,Je2,e2,Je2), R(e3,Je3,e3,Je3)`
    pub rfive: [f64; 5],
    /// `p1(Ω)(e2, Je2, e3, Je3)`
    pub p1: f64,
    pub rfull: AlgCurvature,
}

impl KahlerPointData {
    /// `r` must be in an adapted frame `(e2, Je2, e3, Je3)`.
    pub fn from_curvature(r: AlgCurvature) -> Result<Self> {
        if r.dim() != 4 {
            return Err(WcsError::DimensionMismatch { expected: 4, got: r.dim() });
        }
        let args: Vec<Vec<f64>> =
            (0..4).map(|i| (0..4).map(|k| if i == k { 1.0 } else { 0.0 }).collect()).collect();
        let p1 = p1_density(&r, &args)?;
        let rfive = [r.get(0, 1, 2, 3), r.get(0, 2, 0, 2), r.get(0, 3, 0, 3), r.get(0, 1, 0, 1), r.get(2, 3, 2, 3)];
        Ok(KahlerPointData { rfive, p1, rfull: r })
    }

    /// Geometry pipeline: chart metric, Riemann tensor, J-adapted frame.
    pub fn from_chart(chart: &dyn MetricChart, x: &[f64]) -> Result<Self> {
        let pg = riemann_at(chart, x)?;
        let frame = kahler_frame(chart, &pg)?;
        Self::from_curvature(pg.in_frame(&frame))
    }

    /// Max deviation of the cached scalars from `rfull`.
    pub fn consistency_defect(&self) -> f64 {
        let r = &self.rfull;
        let again = [r.get(0, 1, 2, 3), r.get(0, 2, 0, 2), r.get(0, 3, 0, 3), r.get(0, 1, 0, 1), r.get(2, 3, 2, 3)];
        self.rfive.iter().zip(again).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// `3R(e2,Je2,e3,Je3) − R(e2,e3,e2,e3) − R(e2,Je3,e2,Je3) + R(e2,Je2,e2,Je2) + R(e3,Je3,e3,Je3)`
    pub fn curvature_bracket(&self) -> f64 {
        let [a, b, c, d, f] = self.rfive;
        3.0 * a - b - c + d + f
    }
}

/// `C3 p² {32π² p1 + 32p² [bracket] + 192p⁴}`: the WCS integrand on
/// `(ξ, e2, Je2, e3, Je3)` with `γ̇ = ξ`.
pub fn wcs5_integrand_kahler(kd: &KahlerPointData, p: i64, norm: &Normalization) -> f64 {
    let p2 = (p * p) as f64;
    let b1 = 32.0 * PI * PI * kd.p1;
    norm.c3 * p2 * (b1 + 32.0 * p2 * kd.curvature_bracket() + 192.0 * p2 * p2)
}

/// The same integrand through the generic path: lift, then the reduced form.
pub fn wcs5_integrand_lifted(kd: &KahlerPointData, p: i64, norm: &Normalization) -> Result<f64> {
    let lifted = lift_curvature(&kd.rfull, &standard_j(), p)?;
    let xi = vec![1.0, 0.0, 0.0, 0.0, 0.0];
    let inp = WcsPointInput::with_frame_args(lifted, xi, 3)?;
    Ok(wcs_reduced(&inp, norm))
}

/// Closed forms used as pointwise oracles.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ClosedForms;

impl ClosedForms {
    /// `(3p²/5)(192 − 384p² + 192p⁴) = (576/5) p² (p² − 1)²` for C3 = 3/5.
    pub fn cp2(p: i64, norm: &Normalization) -> f64 {
        let p2 = (p * p) as f64;
        norm.c3 * p2 * 192.0 * (p2 - 1.0) * (p2 - 1.0)
    }

    /// `(3p²/5)(32p²(1/a + 1/b) + 192p⁴)`.
    pub fn s2xs2(a: f64, b: f64, p: i64, norm: &Normalization) -> f64 {
        let p2 = (p * p) as f64;
        norm.c3 * p2 * (32.0 * p2 * (1.0 / a + 1.0 / b) + 192.0 * p2 * p2)
    }

    /// `(3p²/5) 192 p⁴`.
    pub fn flat(p: i64, norm: &Normalization) -> f64 {
        let p2 = (p * p) as f64;
        norm.c3 * 192.0 * p2 * p2 * p2
    }
}
