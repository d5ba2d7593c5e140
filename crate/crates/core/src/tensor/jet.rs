use crate::{Result, WcsError};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Largest number of active coordinates a [`Jet2`] carries.
pub const MAX_DIM: usize = 5;

/// Value, gradient and Hessian of a scalar field, propagated exactly through
/// arithmetic and elementary functions (forward-mode second-order AD).
///
/// Slots beyond the active dimension stay zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub v: f64,
    pub g: [f64; MAX_DIM],
    pub h: [[f64; MAX_DIM]; MAX_DIM],
}

impl Jet2 {
    pub fn constant(v: f64) -> Self {
        Jet2 { v, g: [0.0; MAX_DIM], h: [[0.0; MAX_DIM]; MAX_DIM] }
    }

    /// The coordinate function `x_i` evaluated at `v`.
    pub fn var(v: f64, i: usize) -> Self {
        let mut j = Jet2::constant(v);
        j.g[i] = 1.0;
        j
    }

    /// Chain rule for `f(self)` given `f`, `f'`, `f''` at `self.v`.
    fn chain(self, f0: f64, f1: f64, f2: f64) -> Self {
        let mut out = Jet2::constant(f0);
        for i in 0..MAX_DIM {
            out.g[i] = f1 * self.g[i];
            for k in 0..MAX_DIM {
                out.h[i][k] = f1 * self.h[i][k] + f2 * self.g[i] * self.g[k];
            }
        }
        out
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.chain(s, c, -s)
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.chain(c, -s, -c)
    }

    /// NaN outside the domain; [`jet2_lift`] turns that into an error.
    pub fn sqrt(self) -> Self {
        let r = self.v.sqrt();
        self.chain(r, 0.5 / r, -0.25 / (r * self.v))
    }

    pub fn recip(self) -> Self {
        let r = 1.0 / self.v;
        self.chain(r, -r * r, 2.0 * r * r * r)
    }

    pub fn powi(self, n: i32) -> Self {
        match n {
            0 => Jet2::constant(1.0),
            1 => self,
            _ => {
                let nf = n as f64;
                self.chain(
                    self.v.powi(n),
                    nf * self.v.powi(n - 1),
                    nf * (nf - 1.0) * self.v.powi(n - 2),
                )
            }
        }
    }

    pub fn powf(self, e: f64) -> Self {
        self.chain(
            self.v.powf(e),
            e * self.v.powf(e - 1.0),
            e * (e - 1.0) * self.v.powf(e - 2.0),
        )
    }

    pub fn is_finite(&self) -> bool {
        self.v.is_finite()
            && self.g.iter().all(|x| x.is_finite())
            && self.h.iter().flatten().all(|x| x.is_finite())
    }
}

impl From<f64> for Jet2 {
    fn from(v: f64) -> Self {
        Jet2::constant(v)
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(mut self, o: Jet2) -> Jet2 {
        self.v += o.v;
        for i in 0..MAX_DIM {
            self.g[i] += o.g[i];
            for k in 0..MAX_DIM {
                self.h[i][k] += o.h[i][k];
            }
        }
        self
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, o: Jet2) -> Jet2 {
        self + (-o)
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(mut self) -> Jet2 {
        self.v = -self.v;
        for i in 0..MAX_DIM {
            self.g[i] = -self.g[i];
            for k in 0..MAX_DIM {
                self.h[i][k] = -self.h[i][k];
            }
        }
        self
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, o: Jet2) -> Jet2 {
        let mut out = Jet2::constant(self.v * o.v);
        for i in 0..MAX_DIM {
            out.g[i] = self.g[i] * o.v + self.v * o.g[i];
            for k in 0..MAX_DIM {
                out.h[i][k] = self.h[i][k] * o.v
                    + self.v * o.h[i][k]
                    + self.g[i] * o.g[k]
                    + o.g[i] * self.g[k];
            }
        }
        out
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    fn div(self, o: Jet2) -> Jet2 {
        self * o.recip()
    }
}

impl Add<f64> for Jet2 {
    type Output = Jet2;
    fn add(mut self, c: f64) -> Jet2 {
        self.v += c;
        self
    }
}

impl Sub<f64> for Jet2 {
    type Output = Jet2;
    fn sub(mut self, c: f64) -> Jet2 {
        self.v -= c;
        self
    }
}

impl Mul<f64> for Jet2 {
    type Output = Jet2;
    fn mul(mut self, c: f64) -> Jet2 {
        self.v *= c;
        for i in 0..MAX_DIM {
            self.g[i] *= c;
            for k in 0..MAX_DIM {
                self.h[i][k] *= c;
            }
        }
        self
    }
}

impl Div<f64> for Jet2 {
    type Output = Jet2;
    fn div(self, c: f64) -> Jet2 {
        self * (1.0 / c)
    }
}

impl Add<Jet2> for f64 {
    type Output = Jet2;
    fn add(self, j: Jet2) -> Jet2 {
        j + self
    }
}

impl Sub<Jet2> for f64 {
    type Output = Jet2;
    fn sub(self, j: Jet2) -> Jet2 {
        (-j) + self
    }
}

impl Mul<Jet2> for f64 {
    type Output = Jet2;
    fn mul(self, j: Jet2) -> Jet2 {
        j * self
    }
}

impl Div<Jet2> for f64 {
    type Output = Jet2;
    fn div(self, j: Jet2) -> Jet2 {
        j.recip() * self
    }
}

/// Value, gradient and Hessian of `field` at `x`.
pub fn jet2_lift<F>(field: F, x: &[f64]) -> Result<Jet2>
where
    F: Fn(&[Jet2]) -> Jet2,
{
    if x.len() > MAX_DIM {
        return Err(WcsError::UnsupportedDimension(x.len()));
    }
    let vars: Vec<Jet2> = x.iter().enumerate().map(|(i, &v)| Jet2::var(v, i)).collect();
    let out = field(&vars);
    if out.is_finite() {
        Ok(out)
    } else {
        Err(WcsError::Evaluation {
            location: x.to_vec(),
            message: "non-finite value or derivative (domain violation)".into(),
        })
    }
}
