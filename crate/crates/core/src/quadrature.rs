//! Globally adaptive Gauss–Legendre quadrature.
//!
//! Each panel is integrated with a 20-point rule; a 10-point rule on the same
//! panel gives the error estimate. The panel with the largest estimate is
//! bisected until the summed estimate meets the tolerance.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::math::cos;
use crate::{Error, Result};

const HIGH: usize = 20;
const LOW: usize = 10;
const MAX_PANELS: usize = 4000;

/// Nodes and weights of an `n`-point Gauss–Legendre rule on [−1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let nf = n as f64;
    for i in 0..n {
        let mut x = cos(PI * (i as f64 + 0.75) / (nf + 0.5));
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        nodes.push(x);
        weights.push(2.0 / ((1.0 - x * x) * dp * dp));
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub panels: usize,
}

struct Rule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Rule {
    fn new(n: usize) -> Self {
        let (nodes, weights) = gauss_legendre(n);
        Self { nodes, weights }
    }

    fn apply<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        let mut s = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s += w * f(mid + half * x);
        }
        s * half
    }
}

#[derive(Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// Integrates `f` over `[a, b]` to relative tolerance `rel_tol` (with an
/// absolute floor `abs_tol`).
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<QuadResult> {
    let high = Rule::new(HIGH);
    let low = Rule::new(LOW);
    let eval = |a: f64, b: f64| {
        let v = high.apply(&f, a, b);
        let e = (v - low.apply(&f, a, b)).abs();
        Panel {
            a,
            b,
            value: v,
            error: e,
        }
    };

    let mut panels = Vec::with_capacity(64);
    panels.push(eval(a, b));
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::QuadratureNotConverged {
                estimate: value,
                error,
            });
        }
        if error <= abs_tol.max(rel_tol * value.abs()) {
            return Ok(QuadResult {
                value,
                error,
                panels: panels.len(),
            });
        }
        if panels.len() >= MAX_PANELS {
            return Err(Error::QuadratureNotConverged {
                estimate: value,
                error,
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let p = panels.swap_remove(worst);
        let m = 0.5 * (p.a + p.b);
        if !(m > p.a && m < p.b) {
            return Err(Error::QuadratureNotConverged {
                estimate: value,
                error,
            });
        }
        panels.push(eval(p.a, m));
        panels.push(eval(m, p.b));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(HIGH);
        let s: f64 = w.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        // ∫ x^38 over [-1, 1] = 2/39
        let m: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(38)).sum();
        assert!((m - 2.0 / 39.0).abs() < 1e-14);
    }

    #[test]
    fn endpoint_singularity() {
        // ∫₀¹ 1/√x dx = 2
        let r = integrate(|x| 1.0 / x.sqrt(), 0.0, 1.0, 1e-10, 0.0).unwrap();
        assert!((r.value - 2.0).abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn peaked_integrand() {
        let r = integrate(|x| (-(x - 0.3).powi(2) * 1e4).exp(), 0.0, 1.0, 1e-13, 0.0).unwrap();
        let exact = (PI / 1e4).sqrt();
        assert!((r.value - exact).abs() / exact < 1e-12);
    }

    #[test]
    fn nonfinite_integrand_reports_failure() {
        assert!(matches!(
            integrate(|_| f64::NAN, 0.0, 1.0, 1e-10, 0.0),
            Err(Error::QuadratureNotConverged { .. })
        ));
    }
}
