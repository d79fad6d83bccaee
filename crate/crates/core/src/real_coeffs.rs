//! Schoenberg coefficients on real spheres `S^d`.
//!
//! A continuous `ψ` on `[0, π]` with `ψ(0) = 1` belongs to `Ψ_d` iff
//! `ψ(θ) = Σ b_{n,d} c_n^{(d-1)/2}(cos θ)` with `{b_{n,d}}` a probability
//! mass sequence. This module computes `b_{n,d}` by quadrature and sums the
//! truncated series back.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{domain, Result, SchoenbergError};
use crate::gegenbauer::{gegenbauer_at_one, ZonalBasis};
use crate::quadrature::IntervalRule;
use crate::special::ln_gamma;

/// Entries above `-NEGATIVITY_TOL` count as nonnegative.
pub const NEGATIVITY_TOL: f64 = 1e-12;
/// Allowed excess of total mass over 1.
pub const MASS_TOL: f64 = 1e-10;
/// `Σ|b|` may exceed 1 by this much before quadrature is declared under-resolved.
pub const RESOLUTION_TOL: f64 = 1e-6;
/// Tolerance on the normalization `ψ(0) = 1`.
pub const NORMALIZATION_TOL: f64 = 1e-10;

/// `true` when `coeffs` is (up to roundoff) a sub-probability sequence.
pub fn is_valid_mass<'a>(coeffs: impl IntoIterator<Item = &'a f64>) -> bool {
    let mut sum = 0.0;
    for &c in coeffs {
        if !c.is_finite() || c < -NEGATIVITY_TOL {
            return false;
        }
        sum += c;
    }
    sum <= 1.0 + MASS_TOL
}

/// A candidate member of `Ψ_d`: a real function of the geodesic distance.
#[derive(Clone)]
pub struct IsotropicFunction {
    label: String,
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl IsotropicFunction {
    /// Wraps `eval`, checking `ψ(0) = 1`.
    pub fn new(
        label: impl Into<String>,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let f = Self {
            label: label.into(),
            eval: Arc::new(eval),
        };
        let at_zero = f.eval(0.0);
        if (at_zero - 1.0).abs() > NORMALIZATION_TOL {
            return domain(format!("{}: ψ(0) = {at_zero}, expected 1", f.label));
        }
        Ok(f)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, theta: f64) -> f64 {
        (self.eval)(theta)
    }
}

impl fmt::Debug for IsotropicFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IsotropicFunction")
            .field("label", &self.label)
            .finish()
    }
}

/// Truncated `d`-Schoenberg sequence `b_{0,d}, ..., b_{N,d}`.
///
/// Sequences produced by dimension walks may carry negative entries; the
/// `valid_mass` flag records whether the stored entries certify `Ψ_d`
/// membership up to truncation. `finite_support` records whether the
/// sequence is known to vanish beyond its truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSchoenbergSequence {
    d: usize,
    coeffs: Vec<f64>,
    valid_mass: bool,
    finite_support: bool,
}

impl RealSchoenbergSequence {
    /// Support is inferred: the sequence counts as finitely supported when
    /// its last two stored entries are exactly zero.
    pub fn new(d: usize, coeffs: Vec<f64>) -> Result<Self> {
        if d == 0 {
            return domain("sphere dimension must be at least 1");
        }
        if coeffs.is_empty() {
            return domain("a Schoenberg sequence needs at least one coefficient");
        }
        let valid_mass = is_valid_mass(&coeffs);
        let n = coeffs.len();
        let finite_support = n >= 2 && coeffs[n - 2..].iter().all(|&c| c == 0.0);
        Ok(Self {
            d,
            coeffs,
            valid_mass,
            finite_support,
        })
    }

    /// Overrides the inferred support knowledge.
    pub fn with_finite_support(mut self, finite: bool) -> Self {
        self.finite_support = finite;
        self
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    /// Largest stored degree `N`.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn valid_mass(&self) -> bool {
        self.valid_mass
    }

    pub fn mass(&self) -> f64 {
        self.coeffs.iter().sum()
    }

    /// `1 - Σ b_n`: heuristic estimate of the mass beyond truncation.
    pub fn tail_mass(&self) -> f64 {
        1.0 - self.mass()
    }

    pub fn has_negative(&self) -> bool {
        self.coeffs.iter().any(|&c| c < -NEGATIVITY_TOL)
    }

    /// Known to vanish beyond truncation.
    pub fn is_finitely_supported(&self) -> bool {
        self.finite_support
    }

    /// Index of the last nonzero entry, if any.
    pub fn last_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0.0)
    }

    /// Same entries restricted (or zero-padded) to truncation `n`.
    pub fn resized(&self, n: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n + 1, 0.0);
        let finite = self.finite_support && self.last_nonzero().is_none_or(|k| k <= n);
        Self::new(self.d, coeffs)
            .expect("dimension already validated")
            .with_finite_support(finite)
    }
}

/// `κ(n, d) = (2n+d-1) Γ((d-1)/2)² / (2^{3-d} π Γ(d-1))`, for `d >= 2`.
pub fn kappa(n: usize, d: usize) -> Result<f64> {
    if d < 2 {
        return domain(format!("κ(n, d) needs d >= 2, got {d}"));
    }
    let df = d as f64;
    let log_ratio = 2.0 * ln_gamma((df - 1.0) / 2.0) - ln_gamma(df - 1.0);
    Ok((2.0 * n as f64 + df - 1.0) * (log_ratio + (df - 3.0) * 2f64.ln()).exp() / PI)
}

/// Factor `s_n` with `b_{n,d} = s_n ∫ ψ(θ) c_n(cos θ) sin^{d-1}θ dθ`.
pub fn coefficient_scale(n: usize, d: usize) -> Result<f64> {
    match d {
        0 => domain("sphere dimension must be at least 1"),
        1 if n == 0 => Ok(1.0 / PI),
        1 => Ok(2.0 / PI),
        _ => Ok(kappa(n, d)? * gegenbauer_at_one(n, (d as f64 - 1.0) / 2.0)?),
    }
}

/// Coefficients without the under-resolution check; used where signed
/// (non-member) functions are expected.
pub fn raw_real_coeffs(
    psi: impl Fn(f64) -> f64,
    d: usize,
    n_max: usize,
    rule: &IntervalRule,
) -> Result<Vec<f64>> {
    let basis = ZonalBasis::for_dimension(d)?;
    let mut sums = vec![0.0; n_max + 1];
    for (theta, u, w) in rule.zonal_points(d) {
        let fw = psi(theta) * w;
        for (acc, p) in sums.iter_mut().zip(basis.eval_all(n_max, u)?) {
            *acc += fw * p;
        }
    }
    sums.iter()
        .enumerate()
        .map(|(n, s)| Ok(coefficient_scale(n, d)? * s))
        .collect()
}

/// `b_{0,d}, ..., b_{N,d}` of `psi` by quadrature.
pub fn compute_real_coeffs(
    psi: &IsotropicFunction,
    d: usize,
    n_max: usize,
    rule: &IntervalRule,
) -> Result<RealSchoenbergSequence> {
    let coeffs = raw_real_coeffs(|t| psi.eval(t), d, n_max, rule)?;
    let abs_sum: f64 = coeffs.iter().map(|c| c.abs()).sum();
    if abs_sum > 1.0 + RESOLUTION_TOL {
        return Err(SchoenbergError::UnderResolved {
            abs_sum,
            tolerance: RESOLUTION_TOL,
        });
    }
    Ok(RealSchoenbergSequence::new(d, coeffs)?.with_finite_support(false))
}

/// `Σ_{n ≤ N} b_{n,d} c_n^{(d-1)/2}(cos θ)`.
pub fn reconstruct(seq: &RealSchoenbergSequence, theta: f64) -> Result<f64> {
    if !(-1e-12..=PI + 1e-12).contains(&theta) {
        return domain(format!("θ = {theta} outside [0, π]"));
    }
    reconstruct_cos(seq, theta.cos())
}

pub(crate) fn reconstruct_cos(seq: &RealSchoenbergSequence, u: f64) -> Result<f64> {
    let basis = ZonalBasis::for_dimension(seq.d)?;
    let values = basis.eval_all(seq.truncation(), u)?;
    Ok(seq.coeffs.iter().zip(values).map(|(b, p)| b * p).sum())
}

/// The function represented by a truncated sequence.
pub fn as_function(
    seq: &RealSchoenbergSequence,
    label: impl Into<String>,
) -> Result<IsotropicFunction> {
    let seq = seq.clone();
    IsotropicFunction::new(label, move |t| {
        reconstruct_cos(&seq, t.cos()).expect("cos θ always lies in [-1, 1]")
    })
}
