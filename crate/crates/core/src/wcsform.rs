//! Pointwise WCS integrands.
//!
//! For `k ∈ {2, 3}` and arguments `X_1..X_{2k-1}` on a `(2k-1)`-manifold the
//! reduced integrand is
//!
//! ```text
//! C_k Σ_σ sgn σ tr[ A(X_σ1) Ω(X_σ2, X_σ3) ... Ω(X_σ(2k-2), X_σ(2k-1)) ]
//! ```
//!
//! with `A(X) : Y ↦ R(X, Y)γ̇` and `Ω(X, Y) : Z ↦ R(X, Y)Z`. The full form
//! replaces `A(X)` by `Y ↦ −2R(X,γ̇)Y − R(Y,γ̇)X + R(X,Y)γ̇` and carries
//! half the constant.

use crate::tensor::{permutations, AlgCurvature};
use crate::{Result, WcsError};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Overall constants of the reduced form; the full form uses `C_k / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Normalization {
    pub c2: f64,
    pub c3: f64,
}

impl Default for Normalization {
    /// `C2 = 2 = k/2^(k-2)` and `C3 = 3/5`, the constant the published
    /// numerics are computed with (`k/2^(k-2)` would give 3/2).
    fn default() -> Self {
        Normalization { c2: 2.0, c3: 0.6 }
    }
}

impl Normalization {
    /// `k / 2^(k-2)` for both degrees.
    pub fn power_of_two() -> Self {
        Normalization { c2: 2.0, c3: 1.5 }
    }

    pub fn reduced(&self, k: usize) -> f64 {
        if k == 2 {
            self.c2
        } else {
            self.c3
        }
    }

    pub fn full(&self, k: usize) -> f64 {
        0.5 * self.reduced(k)
    }
}

/// Curvature in an orthonormal frame, loop velocity and form arguments.
#[derive(Debug, Clone)]
pub struct WcsPointInput {
    pub r: AlgCurvature,
    pub gamma_dot: Vec<f64>,
    pub args: Vec<Vec<f64>>,
    pub k: usize,
}

impl WcsPointInput {
    pub fn new(r: AlgCurvature, gamma_dot: Vec<f64>, args: Vec<Vec<f64>>, k: usize) -> Result<Self> {
        if k != 2 && k != 3 {
            return Err(WcsError::Invalid(format!("k must be 2 or 3, got {k}")));
        }
        let n = 2 * k - 1;
        if r.dim() != n {
            return Err(WcsError::DimensionMismatch { expected: n, got: r.dim() });
        }
        if gamma_dot.len() != n {
            return Err(WcsError::DimensionMismatch { expected: n, got: gamma_dot.len() });
        }
        if args.len() != n {
            return Err(WcsError::DimensionMismatch { expected: n, got: args.len() });
        }
        if let Some(a) = args.iter().find(|a| a.len() != n) {
            return Err(WcsError::DimensionMismatch { expected: n, got: a.len() });
        }
        Ok(WcsPointInput { r, gamma_dot, args, k })
    }

    /// Arguments default to the frame basis.
    pub fn with_frame_args(r: AlgCurvature, gamma_dot: Vec<f64>, k: usize) -> Result<Self> {
        let n = r.dim();
        let args = (0..n).map(|i| unit(n, i)).collect();
        Self::new(r, gamma_dot, args, k)
    }
}

fn unit(n: usize, i: usize) -> Vec<f64> {
    (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()
}

/// `Ω(X, Y)[a][b] = R(X, Y, e_b, e_a)`.
fn omega(r: &AlgCurvature, x: &[f64], y: &[f64]) -> DMatrix<f64> {
    let n = r.dim();
    let mut m = DMatrix::zeros(n, n);
    for c in 0..n {
        for d in 0..n {
            let w = x[c] * y[d];
            if w == 0.0 {
                continue;
            }
            for a in 0..n {
                for b in 0..n {
                    m[(a, b)] += w * r.get(c, d, b, a);
                }
            }
        }
    }
    m
}

/// `A(X)[c][a] = R(X, e_a, γ̇, e_c)`.
fn velocity_block(r: &AlgCurvature, x: &[f64], gd: &[f64]) -> DMatrix<f64> {
    let n = r.dim();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for k in 0..n {
            let w = x[i] * gd[k];
            if w == 0.0 {
                continue;
            }
            for a in 0..n {
                for c in 0..n {
                    m[(c, a)] += w * r.get(i, a, k, c);
                }
            }
        }
    }
    m
}

/// Matrix of `Y ↦ −2R(X,γ̇)Y − R(Y,γ̇)X + R(X,Y)γ̇`.
pub fn sigma_minus1_endo(r: &AlgCurvature, gamma_dot: &[f64], x: &[f64]) -> Result<DMatrix<f64>> {
    let n = r.dim();
    if gamma_dot.len() != n || x.len() != n {
        return Err(WcsError::DimensionMismatch { expected: n, got: gamma_dot.len().min(x.len()) });
    }
    let mut m = DMatrix::zeros(n, n);
    for b in 0..n {
        let eb = unit(n, b);
        for c in 0..n {
            let ec = unit(n, c);
            m[(c, b)] = -2.0 * r.eval(x, gamma_dot, &eb, &ec) - r.eval(&eb, gamma_dot, x, &ec)
                + r.eval(x, &eb, gamma_dot, &ec);
        }
    }
    Ok(m)
}

fn trace_product(first: &DMatrix<f64>, rest: &[&DMatrix<f64>]) -> f64 {
    match rest {
        [o] => first.component_mul(&o.transpose()).sum(),
        [o1, o2] => (first * *o1).component_mul(&o2.transpose()).sum(),
        _ => unreachable!("k is 2 or 3"),
    }
}

/// Σ_σ sgn σ tr[B(X_σ1) Ω(X_σ2,X_σ3) ...] over all (2k-1)! permutations.
fn permutation_sum(inp: &WcsPointInput, blocks: &[DMatrix<f64>]) -> f64 {
    let n = 2 * inp.k - 1;
    let om: Vec<Vec<DMatrix<f64>>> = (0..n)
        .map(|i| (0..n).map(|j| omega(&inp.r, &inp.args[i], &inp.args[j])).collect())
        .collect();
    let mut total = 0.0;
    for p in permutations(n) {
        let s = &p.image;
        let t = if inp.k == 2 {
            trace_product(&blocks[s[0]], &[&om[s[1]][s[2]]])
        } else {
            trace_product(&blocks[s[0]], &[&om[s[1]][s[2]], &om[s[3]][s[4]]])
        };
        total += p.sign * t;
    }
    total
}

/// Full form with constant `C_k / 2`.
pub fn wcs_full(inp: &WcsPointInput, norm: &Normalization) -> Result<f64> {
    let blocks = inp
        .args
        .iter()
        .map(|x| sigma_minus1_endo(&inp.r, &inp.gamma_dot, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(norm.full(inp.k) * permutation_sum(inp, &blocks))
}

/// The reduced permutation sum without the constant, by explicit
/// iteration over every permutation.
pub fn reduced_sum_reference(inp: &WcsPointInput) -> f64 {
    let blocks: Vec<DMatrix<f64>> =
        inp.args.iter().map(|x| velocity_block(&inp.r, x, &inp.gamma_dot)).collect();
    permutation_sum(inp, &blocks)
}

/// The reduced permutation sum without the constant. Swapping the two
/// entries of an `Ω` pair flips both the sign of `Ω` and of σ, so only
/// ordered splittings into pairs are visited.
pub fn reduced_sum(inp: &WcsPointInput) -> f64 {
    let n = 2 * inp.k - 1;
    let a: Vec<DMatrix<f64>> =
        inp.args.iter().map(|x| velocity_block(&inp.r, x, &inp.gamma_dot)).collect();
    let mut om = vec![vec![None; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            om[i][j] = Some(omega(&inp.r, &inp.args[i], &inp.args[j]));
        }
    }
    let get = |i: usize, j: usize| om[i][j].as_ref().expect("i < j");
    let mut total = 0.0;
    if inp.k == 2 {
        // σ = (i, j, l) with j < l; sign of the permutation [i, j, l]
        for i in 0..3 {
            let rest: Vec<usize> = (0..3).filter(|&x| x != i).collect();
            let sign = if i == 1 { -1.0 } else { 1.0 };
            total += 2.0 * sign * trace_product(&a[i], &[get(rest[0], rest[1])]);
        }
    } else {
        for p in permutations(5) {
            let s = &p.image;
            if s[1] < s[2] && s[3] < s[4] {
                total += 4.0 * p.sign * trace_product(&a[s[0]], &[get(s[1], s[2]), get(s[3], s[4])]);
            }
        }
    }
    total
}

/// Reduced form `C_k Σ_σ sgn σ tr[A(X_σ1) Ω ... Ω]`.
pub fn wcs_reduced(inp: &WcsPointInput, norm: &Normalization) -> f64 {
    norm.reduced(inp.k) * reduced_sum(inp)
}

/// `tr(Ω^k)(γ̇, X_1, ..., X_{2k-1})` as a signed sum over all (2k)!
/// orderings of the 2k vectors; zero on a (2k-1)-manifold.
pub fn interior_term_check(r: &AlgCurvature, gamma_dot: &[f64], args: &[Vec<f64>], k: usize) -> Result<f64> {
    let n = 2 * k - 1;
    if r.dim() != n || args.len() != n || gamma_dot.len() != n {
        return Err(WcsError::DimensionMismatch { expected: n, got: r.dim() });
    }
    let mut v: Vec<&[f64]> = vec![gamma_dot];
    v.extend(args.iter().map(|a| a.as_slice()));
    let m = 2 * k;
    let om: Vec<Vec<DMatrix<f64>>> =
        (0..m).map(|i| (0..m).map(|j| omega(r, v[i], v[j])).collect()).collect();
    let mut total = 0.0;
    for p in permutations(m) {
        let s = &p.image;
        let t = if k == 2 {
            trace_product(&om[s[0]][s[1]], &[&om[s[2]][s[3]]])
        } else {
            trace_product(&om[s[0]][s[1]], &[&om[s[2]][s[3]], &om[s[4]][s[5]]])
        };
        total += p.sign * t;
    }
    Ok(total)
}

/// Random tensor, velocity and arguments in dimension `2k − 1`, entries
/// uniform in (−1, 1).
pub fn random_point_input(k: usize, seed: u64) -> Result<WcsPointInput> {
    let n = 2 * k - 1;
    let r = crate::tensor::random_alg_curvature(n, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut v = || (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect::<Vec<f64>>();
    let gd = v();
    let args = (0..n).map(|_| v()).collect();
    WcsPointInput::new(r, gd, args, k)
}

/// Worst cases over a batch of random inputs. Deviations are divided by
/// `max|R|^k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrialSummary {
    pub trials: usize,
    pub seed: u64,
    pub max_abs: f64,
    pub max_rel: f64,
    pub max_interior: f64,
}

/// `trials` inputs from seeds `seed, seed + 1, ...`. `max_abs` is the
/// reduced value when `compare_full` is off and the full/reduced gap
/// otherwise.
pub fn run_trials(k: usize, trials: usize, seed: u64, compare_full: bool, norm: &Normalization) -> Result<TrialSummary> {
    let mut out = TrialSummary { trials, seed, max_abs: 0.0, max_rel: 0.0, max_interior: 0.0 };
    for t in 0..trials as u64 {
        let inp = random_point_input(k, seed.wrapping_add(t))?;
        let scale = inp.r.max_abs().powi(k as i32).max(f64::MIN_POSITIVE);
        let red = wcs_reduced(&inp, norm);
        let dev = if compare_full { (wcs_full(&inp, norm)? - red).abs() } else { red.abs() };
        out.max_abs = out.max_abs.max(dev);
        out.max_rel = out.max_rel.max(if compare_full { dev / red.abs().max(scale) } else { dev / scale });
        if compare_full {
            let it = interior_term_check(&inp.r, &inp.gamma_dot, &inp.args, k)?;
            out.max_interior = out.max_interior.max(it.abs() / scale);
        }
    }
    Ok(out)
}
