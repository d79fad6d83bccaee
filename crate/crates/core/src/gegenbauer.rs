//! Gegenbauer (ultraspherical) polynomials and their normalized versions.
//!
//! The zonal basis on `S^d` is `c_n^λ(u) = C_n^λ(u) / C_n^λ(1)` with
//! `λ = (d-1)/2`. The circle `d = 1` uses Chebyshev polynomials
//! `T_n(u) = cos(n arccos u)` instead of the degenerate `λ = 0` family.

use crate::error::{domain, Result};

/// Distance outside `[-1, 1]` that is silently clamped.
pub const CLAMP_TOL: f64 = 1e-12;

/// Polynomial family attached to a sphere dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZonalBasis {
    /// `d = 1`: `T_n(cos θ) = cos nθ`.
    Chebyshev,
    /// `d >= 2`: normalized Gegenbauer polynomials of order `λ = (d-1)/2`.
    Gegenbauer { lambda: f64 },
}

impl ZonalBasis {
    pub fn for_dimension(d: usize) -> Result<Self> {
        match d {
            0 => domain("sphere dimension must be at least 1"),
            1 => Ok(ZonalBasis::Chebyshev),
            _ => Ok(ZonalBasis::Gegenbauer {
                lambda: (d as f64 - 1.0) / 2.0,
            }),
        }
    }

    /// Values `p_0(u), ..., p_max_n(u)` of the normalized basis.
    pub fn eval_all(&self, max_n: usize, u: f64) -> Result<Vec<f64>> {
        let u = clamp_unit(u)?;
        Ok(match *self {
            ZonalBasis::Chebyshev => chebyshev_all(max_n, u),
            ZonalBasis::Gegenbauer { lambda } => normalized_all(max_n, lambda, u),
        })
    }
}

/// Degree and order of a Gegenbauer polynomial `C_n^λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyOrder {
    pub n: usize,
    pub lambda: f64,
}

impl PolyOrder {
    pub fn new(n: usize, lambda: f64) -> Result<Self> {
        check_lambda(lambda)?;
        Ok(Self { n, lambda })
    }

    /// Order for the sphere `S^d`; `None` for the circle, which has no
    /// Gegenbauer representation.
    pub fn for_dimension(n: usize, d: usize) -> Option<Self> {
        (d >= 2).then(|| Self {
            n,
            lambda: (d as f64 - 1.0) / 2.0,
        })
    }

    pub fn eval(&self, u: f64) -> Result<f64> {
        gegenbauer_eval(self.n, self.lambda, u)
    }

    pub fn at_one(&self) -> f64 {
        at_one_unchecked(self.n, self.lambda)
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        domain(format!("Gegenbauer order must be positive, got {lambda}"))
    }
}

/// Clamp `u` into `[-1, 1]` when it lies within [`CLAMP_TOL`] of the interval.
pub fn clamp_unit(u: f64) -> Result<f64> {
    if !u.is_finite() || u.abs() > 1.0 + CLAMP_TOL {
        return domain(format!("argument {u} outside [-1, 1]"));
    }
    Ok(u.clamp(-1.0, 1.0))
}

/// `C_n^λ(u)` by the forward three-term recurrence
/// `n C_n = 2u(n+λ-1) C_{n-1} - (n+2λ-2) C_{n-2}`.
pub fn gegenbauer_eval(n: usize, lambda: f64, u: f64) -> Result<f64> {
    check_lambda(lambda)?;
    let u = clamp_unit(u)?;
    let mut prev = 1.0;
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = 2.0 * lambda * u;
    for k in 2..=n {
        let k = k as f64;
        let next = (2.0 * u * (k + lambda - 1.0) * cur - (k + 2.0 * lambda - 2.0) * prev) / k;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `C_n^λ(1) = binom(n + 2λ - 1, n)`, accumulated as a product of ratios.
pub fn gegenbauer_at_one(n: usize, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    Ok(at_one_unchecked(n, lambda))
}

fn at_one_unchecked(n: usize, lambda: f64) -> f64 {
    (1..=n).fold(1.0, |acc, k| {
        let k = k as f64;
        acc * (k + 2.0 * lambda - 1.0) / k
    })
}

/// Normalized zonal polynomial for `S^d`: `c_n^{(d-1)/2}(u)` when `d >= 2`,
/// `cos(n arccos u)` when `d = 1`.
pub fn normalized_gegenbauer(n: usize, d: usize, u: f64) -> Result<f64> {
    let basis = ZonalBasis::for_dimension(d)?;
    let u = clamp_unit(u)?;
    Ok(match basis {
        ZonalBasis::Chebyshev => (n as f64 * u.acos()).cos(),
        ZonalBasis::Gegenbauer { lambda } => normalized_all(n, lambda, u)[n],
    })
}

// Dividing the recurrence by C_n(1) gives
// (n+2λ-1) c_n = 2u(n+λ-1) c_{n-1} - (n-1) c_{n-2},
// which stays bounded by 1 and never overflows.
fn normalized_all(max_n: usize, lambda: f64, u: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(max_n + 1);
    out.push(1.0);
    if max_n >= 1 {
        out.push(u);
    }
    for k in 2..=max_n {
        let kf = k as f64;
        let next = (2.0 * u * (kf + lambda - 1.0) * out[k - 1] - (kf - 1.0) * out[k - 2])
            / (kf + 2.0 * lambda - 1.0);
        out.push(next);
    }
    out
}

fn chebyshev_all(max_n: usize, u: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(max_n + 1);
    out.push(1.0);
    if max_n >= 1 {
        out.push(u);
    }
    for k in 2..=max_n {
        out.push(2.0 * u * out[k - 1] - out[k - 2]);
    }
    out
}
