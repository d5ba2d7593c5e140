use crate::{Result, WcsError};
use gauss_quad::GaussLegendre;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::num::NonZeroUsize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadRule {
    /// Product Gauss-Legendre on a uniform 2^L × 2^L panel grid, L = 0, 1, ...
    GaussLegendreTensor,
    /// Product Gauss-Legendre on cells bisected where the local error is large.
    Adaptive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub rule: QuadRule,
    /// Nodes per axis in each panel.
    pub orders: [usize; 2],
    pub rel_tol: f64,
    pub max_refinements: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { rule: QuadRule::GaussLegendreTensor, orders: [12, 12], rel_tol: 1e-10, max_refinements: 6 }
    }
}

impl QuadratureSpec {
    pub fn adaptive(rel_tol: f64) -> Self {
        QuadratureSpec { rule: QuadRule::Adaptive, orders: [8, 8], rel_tol, max_refinements: 40 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(WcsError::Invalid(format!("rel_tol must be positive, got {}", self.rel_tol)));
        }
        if self.orders.iter().any(|&o| o == 0 || o > 128) {
            return Err(WcsError::Invalid(format!("orders must lie in 1..=128, got {:?}", self.orders)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub node_count: usize,
    pub refinements: usize,
    pub cells: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Cell {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Cell {
    fn halves(&self, axis: usize) -> [Cell; 2] {
        if axis == 0 {
            let m = 0.5 * (self.x0 + self.x1);
            [Cell { x1: m, ..*self }, Cell { x0: m, ..*self }]
        } else {
            let m = 0.5 * (self.y0 + self.y1);
            [Cell { y1: m, ..*self }, Cell { y0: m, ..*self }]
        }
    }
}

struct Rule {
    x: Vec<(f64, f64)>,
    y: Vec<(f64, f64)>,
}

impl Rule {
    fn new(orders: [usize; 2]) -> Self {
        let nodes = |n: usize| {
            GaussLegendre::new(NonZeroUsize::new(n).expect("validated order"))
                .iter()
                .map(|(x, w)| (*x, *w))
                .collect()
        };
        Rule { x: nodes(orders[0]), y: nodes(orders[1]) }
    }

    fn nodes_per_cell(&self) -> usize {
        self.x.len() * self.y.len()
    }

    /// Sequential sum in fixed node order.
    fn apply<F>(&self, f: &F, c: &Cell) -> Result<f64>
    where
        F: Fn(f64, f64) -> Result<f64> + Sync,
    {
        let (hx, hy) = (0.5 * (c.x1 - c.x0), 0.5 * (c.y1 - c.y0));
        let (mx, my) = (0.5 * (c.x1 + c.x0), 0.5 * (c.y1 + c.y0));
        let mut s = 0.0;
        for &(u, wu) in &self.x {
            let mut row = 0.0;
            for &(v, wv) in &self.y {
                row += wv * f(mx + hx * u, my + hy * v)?;
            }
            s += wu * row;
        }
        Ok(s * hx * hy)
    }
}

fn within(diff: f64, value: f64, rel_tol: f64) -> bool {
    diff <= rel_tol * value.abs() || diff == 0.0
}

/// `∫_{x0}^{x1} ∫_{y0}^{y1} f(x, y) dy dx`. Parallel over cells; partial
/// sums are combined in a fixed order so the result does not depend on
/// the number of threads.
pub fn integrate_2d<F>(f: &F, xr: (f64, f64), yr: (f64, f64), spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: Fn(f64, f64) -> Result<f64> + Sync,
{
    spec.validate()?;
    let rule = Rule::new(spec.orders);
    let root = Cell { x0: xr.0, x1: xr.1, y0: yr.0, y1: yr.1 };
    match spec.rule {
        QuadRule::GaussLegendreTensor => tensor(f, root, &rule, spec),
        QuadRule::Adaptive => adaptive(f, root, &rule, spec),
    }
}

fn tensor<F>(f: &F, root: Cell, rule: &Rule, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: Fn(f64, f64) -> Result<f64> + Sync,
{
    let mut node_count = 0;
    let mut prev: Option<f64> = None;
    let mut last = QuadratureResult {
        value: f64::NAN,
        error_estimate: f64::INFINITY,
        node_count: 0,
        refinements: 0,
        cells: 0,
        converged: false,
    };
    for level in 0..=spec.max_refinements {
        let m = 1usize << level;
        let (dx, dy) = ((root.x1 - root.x0) / m as f64, (root.y1 - root.y0) / m as f64);
        let cells: Vec<Cell> = (0..m * m)
            .map(|t| {
                let (i, j) = (t / m, t % m);
                Cell {
                    x0: root.x0 + i as f64 * dx,
                    x1: if i + 1 == m { root.x1 } else { root.x0 + (i + 1) as f64 * dx },
                    y0: root.y0 + j as f64 * dy,
                    y1: if j + 1 == m { root.y1 } else { root.y0 + (j + 1) as f64 * dy },
                }
            })
            .collect();
        let parts = cells.par_iter().map(|c| rule.apply(f, c)).collect::<Result<Vec<f64>>>()?;
        let value: f64 = parts.iter().sum();
        node_count += cells.len() * rule.nodes_per_cell();
        let err = prev.map_or(f64::INFINITY, |p| (value - p).abs());
        last = QuadratureResult {
            value,
            error_estimate: err,
            node_count,
            refinements: level,
            cells: cells.len(),
            converged: within(err, value, spec.rel_tol),
        };
        if last.converged {
            break;
        }
        prev = Some(value);
    }
    Ok(last)
}

#[derive(Debug, Clone, Copy)]
struct Scored {
    /// The two halves along the axis with the larger local error, with
    /// their own estimates.
    children: [(Cell, f64); 2],
    /// Sum over the two halves.
    fine: f64,
    err: f64,
}

/// Bisects along each axis and keeps the direction where the estimate
/// moves more; separable or one-sided singular integrands then refine only
/// where needed.
fn score<F>(f: &F, rule: &Rule, cell: Cell, coarse: f64) -> Result<Scored>
where
    F: Fn(f64, f64) -> Result<f64> + Sync,
{
    let mut best: Option<Scored> = None;
    for axis in 0..2 {
        let h = cell.halves(axis);
        let (a, b) = (rule.apply(f, &h[0])?, rule.apply(f, &h[1])?);
        let fine = a + b;
        let err = (fine - coarse).abs();
        if best.map_or(true, |s| err > s.err) {
            best = Some(Scored { children: [(h[0], a), (h[1], b)], fine, err });
        }
    }
    Ok(best.expect("two axes"))
}

fn adaptive<F>(f: &F, root: Cell, rule: &Rule, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: Fn(f64, f64) -> Result<f64> + Sync,
{
    let coarse = rule.apply(f, &root)?;
    let mut cells = vec![score(f, rule, root, coarse)?];
    let mut node_count = 5 * rule.nodes_per_cell();
    let mut rounds = 0;
    loop {
        let value: f64 = cells.iter().map(|c| c.fine).sum();
        let err: f64 = cells.iter().map(|c| c.err).sum();
        let converged = within(err, value, spec.rel_tol);
        if converged || rounds >= spec.max_refinements {
            return Ok(QuadratureResult {
                value,
                error_estimate: err,
                node_count,
                refinements: rounds,
                cells: cells.len(),
                converged,
            });
        }
        let budget = spec.rel_tol * value.abs() / cells.len() as f64;
        let worst = cells.iter().map(|c| c.err).fold(0.0, f64::max);
        let split: Vec<bool> = cells.iter().map(|c| c.err > budget || c.err == worst).collect();
        let jobs: Vec<(Cell, f64)> =
            cells.iter().zip(&split).filter(|(_, &s)| s).flat_map(|(c, _)| c.children).collect();
        let scored = jobs.par_iter().map(|&(c, q)| score(f, rule, c, q)).collect::<Result<Vec<_>>>()?;
        node_count += jobs.len() * 4 * rule.nodes_per_cell();
        let mut it = scored.into_iter();
        let mut next = Vec::with_capacity(cells.len() + jobs.len() / 2);
        for (c, s) in cells.into_iter().zip(split) {
            if s {
                next.extend(it.by_ref().take(2));
            } else {
                next.push(c);
            }
        }
        cells = next;
        rounds += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let f = |x: f64, y: f64| Ok(x * x * y.powi(5));
        let spec = QuadratureSpec { orders: [4, 4], ..Default::default() };
        let r = integrate_2d(&f, (0.0, 2.0), (-1.0, 1.0), &spec).unwrap();
        assert!(r.value.abs() < 1e-15);
        let g = |x: f64, y: f64| Ok(x * x * y * y);
        let r = integrate_2d(&g, (0.0, 1.0), (0.0, 1.0), &spec).unwrap();
        assert!((r.value - 1.0 / 9.0).abs() < 1e-15 && r.converged);
    }

    #[test]
    fn adaptive_resolves_near_pole() {
        // ∫0^1 ∫0^1 1/(1.001 − y)^2 dy dx = 1/0.001 − 1/1.001
        let f = |_x: f64, y: f64| Ok((1.001 - y).powi(-2));
        let exact = 1.0 / 0.001 - 1.0 / 1.001;
        let r = integrate_2d(&f, (0.0, 1.0), (0.0, 1.0), &QuadratureSpec::adaptive(1e-10)).unwrap();
        assert!(r.converged);
        assert!(((r.value - exact) / exact).abs() < 1e-9, "{}", r.value);
    }
}
