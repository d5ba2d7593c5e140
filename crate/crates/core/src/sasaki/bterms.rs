use crate::geometry::standard_j;
use crate::tensor::{permutations, AlgCurvature};
use serde::Serialize;
use std::f64::consts::PI;

/// The five pieces of the σ(1) = ξ part of the permutation sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BTerms {
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
    pub b4: f64,
    pub b5: f64,
}

impl BTerms {
    pub fn sum(&self) -> f64 {
        self.b1 + self.b2 + self.b3 + self.b4 + self.b5
    }

    pub fn as_array(&self) -> [f64; 5] {
        [self.b1, self.b2, self.b3, self.b4, self.b5]
    }
}

/// Closed forms in an adapted frame `(e2, Je2, e3, Je3)`.
pub fn bterms(r4: &AlgCurvature, p1: f64, p: i64) -> BTerms {
    let p2 = (p * p) as f64;
    let a = r4.get(0, 1, 2, 3);
    let b = r4.get(0, 2, 0, 2);
    let c = r4.get(0, 3, 0, 3);
    let d = r4.get(0, 1, 0, 1);
    let f = r4.get(2, 3, 2, 3);
    let b34 = 16.0 * p2 * (d + 2.0 * a + f);
    BTerms {
        b1: 32.0 * PI * PI * p1,
        b2: 32.0 * p2 * (a - b - c),
        b3: b34,
        b4: b34,
        b5: 192.0 * p2 * p2,
    }
}

fn je(j: &[[f64; 4]; 4], a: usize) -> [f64; 4] {
    [j[0][a], j[1][a], j[2][a], j[3][a]]
}

fn e(a: usize) -> [f64; 4] {
    let mut v = [0.0; 4];
    v[a] = 1.0;
    v
}

/// `Σ_r R(X, Y, e_r, Je_r)`
fn kahler_trace(r4: &AlgCurvature, j: &[[f64; 4]; 4], x: usize, y: usize) -> f64 {
    (0..4).map(|s| r4.eval(&e(x), &e(y), &e(s), &je(j, s))).sum()
}

/// Direct signed sums over the 24 permutations of the four horizontal
/// arguments; positions 2..5 of the five-slot sum are indices 0..3 here.
pub fn bterms_reference(r4: &AlgCurvature, p: i64) -> BTerms {
    let j = standard_j();
    let p2 = (p * p) as f64;
    let omega = |a: usize, b: usize| j[b][a];
    let mut out = BTerms { b1: 0.0, b2: 0.0, b3: 0.0, b4: 0.0, b5: 0.0 };
    for perm in permutations(4) {
        let [s2, s3, s4, s5] = [perm.image[0], perm.image[1], perm.image[2], perm.image[3]];
        let sg = perm.sign;
        let mut rr = 0.0;
        for r in 0..4 {
            for l in 0..4 {
                rr += r4.get(s2, s3, r, l) * r4.get(s4, s5, r, l);
            }
        }
        out.b1 += sg * rr;
        out.b2 += sg * 4.0 * p2 * r4.eval(&e(s4), &e(s5), &je(&j, s2), &je(&j, s3));
        out.b3 += sg * 2.0 * p2 * omega(s2, s3) * kahler_trace(r4, &j, s4, s5);
        out.b4 += sg * 2.0 * p2 * kahler_trace(r4, &j, s2, s3) * omega(s4, s5);
        out.b5 += sg * 24.0 * p2 * p2 * omega(s2, s3) * omega(s4, s5);
    }
    out
}

/// The eight permutations id, (23), (23)(45), (45), (24)(35), (2534),
/// (2435), (25)(34) of the slots 2..5, as images of indices 0..3.
pub fn perm1_group() -> [[usize; 4]; 8] {
    [
        [0, 1, 2, 3],
        [1, 0, 2, 3],
        [1, 0, 3, 2],
        [0, 1, 3, 2],
        [2, 3, 0, 1],
        [3, 2, 0, 1],
        [2, 3, 1, 0],
        [3, 2, 1, 0],
    ]
}

fn sign(p: &[usize; 4]) -> f64 {
    let mut inv = 0;
    for i in 0..4 {
        for k in i + 1..4 {
            if p[i] > p[k] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// The values `sgn σ R(e_σ2, e_σ3, Je_σ4, Je_σ5)` on the three groups of
/// eight: the base group, its right products with (34), and with (354).
pub fn b2_groups(r4: &AlgCurvature) -> [[f64; 8]; 3] {
    let j = standard_j();
    let compose = |s: &[usize; 4], t: &[usize; 4]| [s[t[0]], s[t[1]], s[t[2]], s[t[3]]];
    let shifts = [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]];
    let mut out = [[0.0; 8]; 3];
    for (g, t) in shifts.iter().enumerate() {
        for (i, s) in perm1_group().iter().enumerate() {
            let sg = compose(s, t);
            out[g][i] = sign(&sg) * r4.eval(&e(sg[0]), &e(sg[1]), &je(&j, sg[2]), &je(&j, sg[3]));
        }
    }
    out
}
