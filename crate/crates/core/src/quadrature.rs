//! Composite Gauss-Legendre quadrature on `[-1, 1]`.

use crate::error::{Error, Result};

/// Composite Gauss-Legendre rule: `panels` equal subintervals of `[-1, 1]`,
/// `order` points per panel. Exact for polynomials of degree `2*order - 1`
/// on each panel.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    panels: usize,
    order: usize,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn panels(&self) -> usize {
        self.panels
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `integral_{-1}^{1} f(x) dx`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Builds the composite rule; `panels >= 1`, `order >= 2`.
pub fn build_quadrature(panels: usize, order: usize) -> Result<QuadratureRule> {
    if panels < 1 || order < 2 {
        return Err(Error::QuadratureSize { panels, order });
    }
    let (ref_nodes, ref_weights) = legendre_rule(order);
    let h = 2.0 / panels as f64;
    let mut nodes = Vec::with_capacity(panels * order);
    let mut weights = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let center = -1.0 + (p as f64 + 0.5) * h;
        for (&t, &w) in ref_nodes.iter().zip(&ref_weights) {
            nodes.push(center + 0.5 * h * t);
            weights.push(0.5 * h * w);
        }
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        panels,
        order,
    })
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, ascending nodes.
///
/// Newton iteration on the Legendre recurrence with the classic cosine
/// initial guess; converges to machine precision in a handful of steps.
fn legendre_rule(order: usize) -> (Vec<f64>, Vec<f64>) {
    let n = order;
    let mut nodes = vec![0.0f64; n];
    let mut weights = vec![0.0f64; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_eval(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                let (p2, d2) = legendre_eval(n, x);
                dp = d2;
                x -= p2 / d2;
                break;
            }
        }
        // The cosine guess enumerates roots in descending order.
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// Legendre polynomial `P_n` and its derivative at `x` via the three-term
/// recurrence.
fn legendre_eval(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0f64;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}
