//! One-dimensional quadrature rules for zonal integrals on `[0, π]`.

use std::f64::consts::PI;

use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalKind {
    /// Gauss-Legendre in `u = cos θ`; nodes in `[-1, 1]`, weights sum to 2.
    Legendre,
    /// Midpoint rule in `θ`; nodes in `(0, π)`, weights sum to `π`.
    ThetaMidpoint,
}

/// Node/weight table on an interval.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalRule {
    pub kind: IntervalKind,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl IntervalRule {
    /// `n`-point Gauss-Legendre rule on `[-1, 1]`.
    pub fn gauss_legendre(n: usize) -> Result<Self> {
        if n == 0 {
            return domain("quadrature needs at least one node");
        }
        let (nodes, weights) = gauss_legendre_nodes(n);
        Ok(Self {
            kind: IntervalKind::Legendre,
            nodes,
            weights,
        })
    }

    /// `n`-point midpoint rule in `θ` on `[0, π]`. Exact for `cos kθ`, `k < 2n`.
    pub fn theta_midpoint(n: usize) -> Result<Self> {
        if n == 0 {
            return domain("quadrature needs at least one node");
        }
        let h = PI / n as f64;
        Ok(Self {
            kind: IntervalKind::ThetaMidpoint,
            nodes: (0..n).map(|k| (k as f64 + 0.5) * h).collect(),
            weights: vec![h; n],
        })
    }

    /// Rule that integrates `f(θ) sin^{d-1} θ` exactly whenever `f` is a
    /// polynomial in `cos θ` of modest degree.
    ///
    /// For even `d` the weight `(1-u²)^{(d-2)/2}` is a polynomial in `u` and
    /// Gauss-Legendre is exact. For odd `d` it is not (and is singular at
    /// `d = 1`), but `sin^{d-1} θ` is then a cosine polynomial and the
    /// midpoint rule in `θ` is exact.
    pub fn for_dimension(d: usize, n: usize) -> Result<Self> {
        if d == 0 {
            return domain("sphere dimension must be at least 1");
        }
        if d.is_multiple_of(2) {
            Self::gauss_legendre(n)
        } else {
            Self::theta_midpoint(n)
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `(θ, cos θ, w)` triples such that `Σ w g(θ) ≈ ∫_0^π g(θ) sin^{d-1}θ dθ`.
    pub fn zonal_points(&self, d: usize) -> Vec<(f64, f64, f64)> {
        let exponent = d as i32 - 1;
        match self.kind {
            IntervalKind::Legendre => self
                .nodes
                .iter()
                .zip(&self.weights)
                .map(|(&u, &w)| {
                    // dθ sin^{d-1}θ = (1-u²)^{(d-2)/2} du
                    let factor = (1.0 - u * u).max(0.0).powf((d as f64 - 2.0) / 2.0);
                    (u.acos(), u, w * factor)
                })
                .collect(),
            IntervalKind::ThetaMidpoint => self
                .nodes
                .iter()
                .zip(&self.weights)
                .map(|(&t, &w)| (t, t.cos(), w * t.sin().powi(exponent)))
                .collect(),
        }
    }

    pub fn integrate_zonal(&self, d: usize, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.zonal_points(d)
            .into_iter()
            .map(|(t, _, w)| w * f(t))
            .sum()
    }
}

/// Default node count for coefficients up to degree `n_max`.
pub fn default_nodes(n_max: usize) -> usize {
    (2 * n_max + 32).max(128)
}

/// Gauss-Legendre nodes (ascending) and weights by Newton iteration on `P_n`.
pub fn gauss_legendre_nodes(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
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
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (x * p1 - p0) / (x * x - 1.0))
}
