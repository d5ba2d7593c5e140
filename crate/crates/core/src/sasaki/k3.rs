use super::{curvature_from_forms, two_form_bases, KahlerPointData};
use crate::geometry::p1_density;
use crate::tensor::AlgCurvature;
use crate::wcsform::Normalization;
use crate::{Result, WcsError};
use nalgebra::Matrix3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;


/// Which orientation of the adapted frame the Pontrjagin density uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// `e2 ∧ Je2 ∧ e3 ∧ Je3`
    Complex,
    /// `e2 ∧ Je2 ∧ Je3 ∧ e3`
    Reversed,
}

/// Curvature operator with no Λ²₊ ↔ Λ²₋ mixing, given by eigenvalues and
/// orthonormal eigenbases (rows, in the standard bases of Λ²±).
///
/// Eigenvalues are those of `ω ↦ Σ_cd R_abdc ω_cd`, under which the unit
/// sphere has eigenvalue 2.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvatureOperator {
    pub lambda_plus: [f64; 3],
    pub lambda_minus: [f64; 3],
    pub basis_plus: [[f64; 3]; 3],
    pub basis_minus: [[f64; 3]; 3],
}

const IDENTITY: [[f64; 3]; 3] = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

impl CurvatureOperator {
    pub fn diagonal(lambda_plus: [f64; 3], lambda_minus: [f64; 3]) -> Self {
        CurvatureOperator { lambda_plus, lambda_minus, basis_plus: IDENTITY, basis_minus: IDENTITY }
    }

    pub fn trace(&self) -> f64 {
        self.lambda_plus.iter().chain(&self.lambda_minus).sum()
    }

    /// Tensor in the adapted frame.
    pub fn curvature(&self) -> AlgCurvature {
        let (plus, minus) = two_form_bases();
        let rotate = |basis: &[[f64; 3]; 3], std: &[[[f64; 4]; 4]; 3]| {
            let mut out = [[[0.0; 4]; 4]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    for a in 0..4 {
                        for b in 0..4 {
                            out[i][a][b] += basis[i][j] * std[j][a][b];
                        }
                    }
                }
            }
            out
        };
        let fp = rotate(&self.basis_plus, &plus);
        let fm = rotate(&self.basis_minus, &minus);
        let forms = [fp[0], fp[1], fp[2], fm[0], fm[1], fm[2]];
        let mut m = vec![vec![0.0; 6]; 6];
        for i in 0..3 {
            m[i][i] = 0.5 * self.lambda_plus[i];
            m[i + 3][i + 3] = 0.5 * self.lambda_minus[i];
        }
        curvature_from_forms(&forms, &m)
    }

    /// Pontrjagin density in the chosen orientation.
    pub fn p1(&self, orientation: Orientation) -> f64 {
        let mut args: Vec<Vec<f64>> =
            (0..4).map(|i| (0..4).map(|k| if i == k { 1.0 } else { 0.0 }).collect()).collect();
        if orientation == Orientation::Reversed {
            args.swap(2, 3);
        }
        p1_density(&self.curvature(), &args).expect("dimension 4")
    }

    /// The Sasakian integrand with the density taken in `orientation`.
    pub fn integrand(&self, p: i64, orientation: Orientation, norm: &Normalization) -> Result<f64> {
        let mut kd = KahlerPointData::from_curvature(self.curvature())?;
        kd.p1 = self.p1(orientation);
        Ok(super::wcs5_integrand_kahler(&kd, p, norm))
    }
}

/// `2R(e2,e3,e2,e3) + 2R(e2,Je3,e2,Je3) + R(e2,Je2,e2,Je2) + R(e3,Je3,e3,Je3)`,
/// which equals `−½ Σ λ`.
pub fn k3_bracket_unchecked(op: &CurvatureOperator) -> f64 {
    let r = op.curvature();
    2.0 * r.get(0, 2, 0, 2) + 2.0 * r.get(0, 3, 0, 3) + r.get(0, 1, 0, 1) + r.get(2, 3, 2, 3)
}

/// As [`k3_bracket_unchecked`], rejecting spectra with nonzero total trace.
pub fn k3_bracket(op: &CurvatureOperator) -> Result<f64> {
    let scale = op.lambda_plus.iter().chain(&op.lambda_minus).fold(1.0_f64, |m, x| m.max(x.abs()));
    let t = op.trace();
    if t.abs() > 1e-12 * scale {
        return Err(WcsError::TraceConstraint(t));
    }
    Ok(k3_bracket_unchecked(op))
}

fn random_rotation(rng: &mut ChaCha8Rng) -> [[f64; 3]; 3] {
    let m = Matrix3::from_fn(|_, _| rng.gen_range(-1.0..1.0));
    let mut q = m.qr().q();
    if q.determinant() < 0.0 {
        q.column_mut(0).neg_mut();
    }
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = q[(i, j)];
        }
    }
    out
}

/// Random operator with `Σλ⁺ + Σλ⁻ = 0`. With `hyperkahler`, λ⁺ = 0 and
/// λ⁻ is traceless, so the tensor is Ricci-flat and of Kähler type.
pub fn random_k3_operator(seed: u64, hyperkahler: bool) -> CurvatureOperator {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || -> [f64; 3] { [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)] };
    let (mut lp, mut lm) = (draw(), draw());
    if hyperkahler {
        lp = [0.0; 3];
        lm[2] = -(lm[0] + lm[1]);
    } else {
        lm[2] = -(lp[0] + lp[1] + lp[2] + lm[0] + lm[1]);
    }
    CurvatureOperator {
        lambda_plus: lp,
        lambda_minus: lm,
        basis_plus: random_rotation(&mut rng),
        basis_minus: random_rotation(&mut rng),
    }
}

