use crate::{Result, WcsError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrameKind {
    Orthonormal,
    CoordinateWithMetric,
}

/// All-lowered curvature components `R_{ijkl} = R(e_i, e_j, e_k, e_l)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgCurvature {
    dim: usize,
    comps: Vec<f64>,
    pub frame_kind: FrameKind,
}

/// Max-norm defects of the three Riemann symmetries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymmetryDefects {
    pub antisymmetry: f64,
    pub pair: f64,
    pub bianchi: f64,
}

impl SymmetryDefects {
    pub fn max(&self) -> f64 {
        self.antisymmetry.max(self.pair).max(self.bianchi)
    }
}

impl AlgCurvature {
    pub fn zeros(dim: usize, frame_kind: FrameKind) -> Self {
        AlgCurvature { dim, comps: vec![0.0; dim.pow(4)], frame_kind }
    }

    pub fn from_fn<F: FnMut(usize, usize, usize, usize) -> f64>(
        dim: usize,
        frame_kind: FrameKind,
        mut f: F,
    ) -> Self {
        let mut r = AlgCurvature::zeros(dim, frame_kind);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    for l in 0..dim {
                        r.set(i, j, k, l, f(i, j, k, l));
                    }
                }
            }
        }
        r
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn comps(&self) -> &[f64] {
        &self.comps
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        ((i * self.dim + j) * self.dim + k) * self.dim + l
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.comps[self.idx(i, j, k, l)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, l: usize, v: f64) {
        let n = self.idx(i, j, k, l);
        self.comps[n] = v;
    }

    /// `R(X, Y, Z, W)` by multilinear extension.
    pub fn eval(&self, x: &[f64], y: &[f64], z: &[f64], w: &[f64]) -> f64 {
        let n = self.dim;
        let mut s = 0.0;
        for i in 0..n {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                if y[j] == 0.0 {
                    continue;
                }
                let xy = x[i] * y[j];
                for k in 0..n {
                    if z[k] == 0.0 {
                        continue;
                    }
                    for l in 0..n {
                        s += xy * z[k] * w[l] * self.get(i, j, k, l);
                    }
                }
            }
        }
        s
    }

    /// Components in a new frame whose vectors are the rows of `frame`,
    /// each written in the current basis.
    pub fn transform(&self, frame: &[Vec<f64>], kind: FrameKind) -> AlgCurvature {
        let n = self.dim;
        let m = frame.len();
        // contract one slot at a time: O(m n^4) instead of O(m^4 n^4)
        let mut t1 = vec![0.0; m * n * n * n];
        for a in 0..m {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut s = 0.0;
                        for i in 0..n {
                            s += frame[a][i] * self.get(i, j, k, l);
                        }
                        t1[((a * n + j) * n + k) * n + l] = s;
                    }
                }
            }
        }
        let mut t2 = vec![0.0; m * m * n * n];
        for a in 0..m {
            for b in 0..m {
                for k in 0..n {
                    for l in 0..n {
                        let mut s = 0.0;
                        for j in 0..n {
                            s += frame[b][j] * t1[((a * n + j) * n + k) * n + l];
                        }
                        t2[((a * m + b) * n + k) * n + l] = s;
                    }
                }
            }
        }
        let mut t3 = vec![0.0; m * m * m * n];
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    for l in 0..n {
                        let mut s = 0.0;
                        for k in 0..n {
                            s += frame[c][k] * t2[((a * m + b) * n + k) * n + l];
                        }
                        t3[((a * m + b) * m + c) * n + l] = s;
                    }
                }
            }
        }
        AlgCurvature::from_fn(m, kind, |a, b, c, d| {
            let mut s = 0.0;
            for l in 0..n {
                s += frame[d][l] * t3[((a * m + b) * m + c) * n + l];
            }
            s
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.comps.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn scale(&self, c: f64) -> AlgCurvature {
        AlgCurvature {
            dim: self.dim,
            comps: self.comps.iter().map(|x| c * x).collect(),
            frame_kind: self.frame_kind,
        }
    }

    pub fn add(&self, o: &AlgCurvature) -> AlgCurvature {
        AlgCurvature {
            dim: self.dim,
            comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a + b).collect(),
            frame_kind: self.frame_kind,
        }
    }

    /// Exhaustive scan of all index quadruples.
    pub fn symmetry_defects(&self) -> SymmetryDefects {
        let n = self.dim;
        let mut d = SymmetryDefects { antisymmetry: 0.0, pair: 0.0, bianchi: 0.0 };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let r = self.get(i, j, k, l);
                        d.antisymmetry = d
                            .antisymmetry
                            .max((r + self.get(j, i, k, l)).abs())
                            .max((r + self.get(i, j, l, k)).abs());
                        d.pair = d.pair.max((r - self.get(k, l, i, j)).abs());
                        let b = r + self.get(j, k, i, l) + self.get(k, i, j, l);
                        d.bianchi = d.bianchi.max(b.abs());
                    }
                }
            }
        }
        d
    }

    /// Fails if any defect exceeds `tol` times the max-norm (or `tol` for
    /// the zero tensor).
    pub fn check_symmetries(&self, tol: f64) -> Result<()> {
        let scale = self.max_abs().max(1.0);
        let d = self.symmetry_defects();
        for (what, defect) in [
            ("antisymmetry", d.antisymmetry),
            ("pair symmetry", d.pair),
            ("first Bianchi", d.bianchi),
        ] {
            if defect > tol * scale {
                return Err(WcsError::SymmetryViolation { what, defect, tol: tol * scale });
            }
        }
        Ok(())
    }

    /// Projection onto tensors antisymmetric in (ij) and in (kl).
    pub fn antisymmetrize(&self) -> AlgCurvature {
        let a = AlgCurvature::from_fn(self.dim, self.frame_kind, |i, j, k, l| {
            0.5 * (self.get(i, j, k, l) - self.get(j, i, k, l))
        });
        AlgCurvature::from_fn(self.dim, self.frame_kind, |i, j, k, l| {
            0.5 * (a.get(i, j, k, l) - a.get(i, j, l, k))
        })
    }

    /// Projection onto tensors symmetric under pair exchange.
    pub fn pair_symmetrize(&self) -> AlgCurvature {
        AlgCurvature::from_fn(self.dim, self.frame_kind, |i, j, k, l| {
            0.5 * (self.get(i, j, k, l) + self.get(k, l, i, j))
        })
    }

    /// Subtracts a third of the cyclic sum; on tensors with the pair and
    /// antisymmetries this is the projection onto the Bianchi kernel.
    pub fn bianchi_project(&self) -> AlgCurvature {
        AlgCurvature::from_fn(self.dim, self.frame_kind, |i, j, k, l| {
            let r = self.get(i, j, k, l);
            r - (r + self.get(j, k, i, l) + self.get(k, i, j, l)) / 3.0
        })
    }
}

/// Deterministic random algebraic curvature tensor (orthonormal frame).
pub fn random_alg_curvature(dim: usize, seed: u64) -> Result<AlgCurvature> {
    if !(3..=5).contains(&dim) {
        return Err(WcsError::UnsupportedDimension(dim));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw = AlgCurvature::from_fn(dim, FrameKind::Orthonormal, |_, _, _, _| {
        rng.gen_range(-1.0..1.0)
    });
    Ok(raw.antisymmetrize().pair_symmetrize().bianchi_project())
}

/// Space form with sectional curvature `kappa`:
/// `R_{ijkl} = kappa (d_il d_jk - d_ik d_jl)`, so `R(e_i,e_j,e_i,e_j) = -kappa`.
pub fn constant_curvature(dim: usize, kappa: f64) -> AlgCurvature {
    let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    AlgCurvature::from_fn(dim, FrameKind::Orthonormal, |i, j, k, l| {
        kappa * (d(i, l) * d(j, k) - d(i, k) * d(j, l))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_tensor_is_algebraic() {
        let r = random_alg_curvature(3, 7).unwrap();
        assert!(r.symmetry_defects().max() < 1e-12);
        assert!(r.max_abs() > 0.0);
        assert_eq!(random_alg_curvature(5, 0).unwrap(), random_alg_curvature(5, 0).unwrap());
        assert!(random_alg_curvature(2, 0).is_err());
        assert!(random_alg_curvature(6, 0).is_err());
    }

    #[test]
    fn space_forms() {
        assert_eq!(constant_curvature(3, 0.0).max_abs(), 0.0);
        let r = constant_curvature(3, 1.0);
        assert_eq!(r.get(0, 1, 0, 1), -1.0);
        assert_eq!(r.get(0, 2, 0, 2), -1.0);
        assert_eq!(r.get(1, 2, 1, 2), -1.0);
        assert_eq!(r.get(0, 1, 1, 0), 1.0);
        assert_eq!(r.get(0, 1, 0, 2), 0.0);
        assert_eq!(r.get(0, 0, 1, 1), 0.0);
    }

    #[test]
    fn transform_by_identity_is_exact() {
        let r = random_alg_curvature(4, 3).unwrap();
        let id: Vec<Vec<f64>> =
            (0..4).map(|i| (0..4).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
        assert_eq!(r.transform(&id, FrameKind::Orthonormal), r);
    }
}
