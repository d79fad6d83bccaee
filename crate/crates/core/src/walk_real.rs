//! Dimension walks for real Schoenberg sequences.
//!
//! * [`walk_up`]: `S^d → S^{d+2}` by the classical two-term recursion.
//! * [`walk_down`]: `S^{d+2} → S^d` by the inverse series
//!   `b_{n,d} = Σ_j w_{j,n,d} b_{n+2j,d+2}`.
//! * [`cross_project`]: `S^d → S^{d'}` for any `d' < d` by zonal integrals.

use crate::error::{domain, Result, SchoenbergError};
use crate::gegenbauer::ZonalBasis;
use crate::quadrature::IntervalRule;
use crate::real_coeffs::{
    coefficient_scale, raw_real_coeffs, reconstruct_cos, RealSchoenbergSequence,
};
use crate::special::pochhammer_ratio;

/// Default relative cutoff for the inverse series.
pub const DEFAULT_TAIL_TOL: f64 = 1e-12;
/// Number of consecutive negligible terms that ends the inverse series.
const NEGLIGIBLE_RUN: usize = 3;

/// `S^d → S^{d+2}`. The output has truncation `N - 2`, since `b_{n,d+2}`
/// needs `b_{n+2,d}`.
pub fn walk_up(seq: &RealSchoenbergSequence) -> Result<RealSchoenbergSequence> {
    let n_max = seq.truncation();
    if n_max < 2 {
        return Err(SchoenbergError::TruncationTooSmall {
            needed: 2,
            got: n_max,
        });
    }
    let b = seq.coeffs();
    let d = seq.dimension();
    let out: Vec<f64> = (0..=n_max - 2)
        .map(|n| {
            let nf = n as f64;
            if d == 1 {
                if n == 0 {
                    b[0] - 0.5 * b[2]
                } else {
                    0.5 * (nf + 1.0) * (b[n] - b[n + 2])
                }
            } else {
                let df = d as f64;
                let keep = (nf + df - 1.0) * (nf + df) / (df * (2.0 * nf + df - 1.0));
                let shift = (nf + 1.0) * (nf + 2.0) / (df * (2.0 * nf + df + 3.0));
                keep * b[n] - shift * b[n + 2]
            }
        })
        .collect();
    // b_{n,d+2} vanishes for n > N - 2 exactly when b_{N-1,d} = b_{N,d} = 0.
    let finite = seq.is_finitely_supported() && seq.last_nonzero().is_none_or(|k| k + 2 <= n_max);
    Ok(RealSchoenbergSequence::new(d + 2, out)?.with_finite_support(finite))
}

/// Weight `w_{j,n,d}` of `b_{n+2j,d+2}` in the expansion of `b_{n,d}`.
///
/// For `d = 1` these are `1/(2j+1)` (`n = 0`) and `2/(n+2j+1)` (`n >= 1`).
/// For `d >= 2`,
/// `w_{j,n,d} = d(2n+d-1) Π_{l<j} v_{n+2l,d} / ((n+2j+d-1)(n+2j+d))` with
/// `v_{m,d} = (m+1)(m+2)/((m+d-1)(m+d))`, the product being the rising
/// factorial ratio `(n/2+1/2)^(j) (n/2+1)^(j) / ((n/2+(d-1)/2)^(j) (n/2+d/2)^(j))`.
pub fn walk_weight(j: usize, n: usize, d: usize) -> Result<f64> {
    let (jf, nf, df) = (j as f64, n as f64, d as f64);
    match d {
        0 => domain("sphere dimension must be at least 1"),
        1 if n == 0 => Ok(1.0 / (2.0 * jf + 1.0)),
        1 => Ok(2.0 / (nf + 2.0 * jf + 1.0)),
        _ => {
            let ratio = pochhammer_ratio(
                &[nf / 2.0 + 0.5, nf / 2.0 + 1.0],
                &[nf / 2.0 + (df - 1.0) / 2.0, nf / 2.0 + df / 2.0],
                j,
            );
            let m = nf + 2.0 * jf;
            Ok(df * (2.0 * nf + df - 1.0) * ratio / ((m + df - 1.0) * (m + df)))
        }
    }
}

/// Successive weights `w_{0,n,d}, w_{1,n,d}, ...` by ratio updates.
struct WeightRun {
    n: usize,
    d: usize,
    j: usize,
    current: f64,
}

impl WeightRun {
    fn new(n: usize, d: usize) -> Self {
        let current = walk_weight(0, n, d).expect("dimension checked by caller");
        Self {
            n,
            d,
            j: 0,
            current,
        }
    }
}

impl Iterator for WeightRun {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let out = self.current;
        let (nf, df) = (self.n as f64, self.d as f64);
        let m = nf + 2.0 * self.j as f64;
        self.current *= if self.d == 1 {
            if self.n == 0 {
                (2.0 * self.j as f64 + 1.0) / (2.0 * self.j as f64 + 3.0)
            } else {
                (m + 1.0) / (m + 3.0)
            }
        } else {
            let v = (m + 1.0) * (m + 2.0) / ((m + df - 1.0) * (m + df));
            v * (m + df - 1.0) * (m + df) / ((m + df + 1.0) * (m + df + 2.0))
        };
        self.j += 1;
        Some(out)
    }
}

/// Result of the inverse walk.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkDownReport {
    pub sequence: RealSchoenbergSequence,
    /// Largest magnitude of the last term kept in any output series.
    /// Zero when the input is known to vanish beyond its truncation.
    pub unresolved: f64,
    /// Some series was cut early by the tail tolerance.
    pub early_stopped: bool,
}

/// `S^{d+2} → S^d` for `d + 2 >= 3`, producing `b_{0,d}, ..., b_{n_out,d}`.
///
/// Finitely supported inputs are summed in full
/// and may carry negative entries. Otherwise the input must be nonnegative;
/// each series stops after [`NEGLIGIBLE_RUN`] consecutive nonzero terms
/// smaller than `tail_tol` times the running sum.
pub fn walk_down(
    seq: &RealSchoenbergSequence,
    n_out: usize,
    tail_tol: f64,
) -> Result<WalkDownReport> {
    let source_dim = seq.dimension();
    if source_dim < 3 {
        return domain(format!(
            "inverse walk needs a source dimension >= 3, got {source_dim}"
        ));
    }
    if tail_tol.is_nan() || tail_tol < 0.0 {
        return domain(format!(
            "tail tolerance must be nonnegative, got {tail_tol}"
        ));
    }
    let finite = seq.is_finitely_supported();
    if !finite && seq.has_negative() {
        return Err(SchoenbergError::Unverifiable(
            "negative coefficients without finite support; the inverse series may not converge"
                .into(),
        ));
    }
    let n_max = seq.truncation();
    if !finite && n_out > n_max {
        return Err(SchoenbergError::TruncationTooSmall {
            needed: n_out,
            got: n_max,
        });
    }
    let d = source_dim - 2;
    let b = seq.coeffs();
    let mut unresolved: f64 = 0.0;
    let mut early_stopped = false;
    let mut out = Vec::with_capacity(n_out + 1);
    for n in 0..=n_out {
        let mut sum = 0.0;
        let mut last = 0.0;
        let mut negligible = 0;
        for (idx, w) in (n..=n_max).step_by(2).zip(WeightRun::new(n, d)) {
            let term = w * b[idx];
            sum += term;
            if term != 0.0 {
                last = term;
            }
            if finite || term == 0.0 {
                continue;
            }
            if term.abs() < tail_tol * sum.abs() {
                negligible += 1;
                if negligible >= NEGLIGIBLE_RUN {
                    early_stopped = idx + 2 <= n_max;
                    break;
                }
            } else {
                negligible = 0;
            }
        }
        if !finite {
            unresolved = unresolved.max(last.abs());
        }
        out.push(sum);
    }
    let out_finite = finite && seq.last_nonzero().is_none_or(|k| k <= n_out);
    Ok(WalkDownReport {
        sequence: RealSchoenbergSequence::new(d, out)?.with_finite_support(out_finite),
        unresolved,
        early_stopped,
    })
}

/// Integral route: `b_{k,d'} = Σ_n b_{n,d} s_k ∫ c_n^{(d)} p_k^{(d')} sin^{d'-1}θ dθ`,
/// where `p_k^{(d')}` is the zonal basis of `S^{d'}` and `s_k` its
/// coefficient scale. The stored sequence is read as a polynomial of
/// degree `N`, so the output has truncation `N` as well.
pub fn cross_project(
    seq: &RealSchoenbergSequence,
    d_prime: usize,
    rule: &IntervalRule,
) -> Result<RealSchoenbergSequence> {
    let d = seq.dimension();
    check_projection(d, d_prime)?;
    let n_max = seq.truncation();
    let source = ZonalBasis::for_dimension(d)?;
    let target = ZonalBasis::for_dimension(d_prime)?;
    // transfer[k][n] = ∫ c_n^{(d)} p_k^{(d')} dμ_{d'}
    let mut transfer = vec![vec![0.0; n_max + 1]; n_max + 1];
    for (_, u, w) in rule.zonal_points(d_prime) {
        let cs = source.eval_all(n_max, u)?;
        let ps = target.eval_all(n_max, u)?;
        for (row, pk) in transfer.iter_mut().zip(&ps) {
            for (entry, cn) in row.iter_mut().zip(&cs) {
                *entry += w * pk * cn;
            }
        }
    }
    let coeffs = transfer
        .iter()
        .enumerate()
        .map(|(k, row)| {
            let inner: f64 = row.iter().zip(seq.coeffs()).map(|(t, b)| t * b).sum();
            Ok(coefficient_scale(k, d_prime)? * inner)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RealSchoenbergSequence::new(d_prime, coeffs)?.with_finite_support(true))
}

/// Reconstruct-then-recompute route to the same map as [`cross_project`].
pub fn cross_project_by_reconstruction(
    seq: &RealSchoenbergSequence,
    d_prime: usize,
    rule: &IntervalRule,
) -> Result<RealSchoenbergSequence> {
    check_projection(seq.dimension(), d_prime)?;
    let psi = |t: f64| reconstruct_cos(seq, t.cos()).expect("cos θ lies in [-1, 1]");
    let coeffs = raw_real_coeffs(psi, d_prime, seq.truncation(), rule)?;
    Ok(RealSchoenbergSequence::new(d_prime, coeffs)?.with_finite_support(true))
}

fn check_projection(d: usize, d_prime: usize) -> Result<()> {
    if d_prime == 0 || d_prime >= d {
        return domain(format!(
            "projection needs d > d' >= 1, got d = {d}, d' = {d_prime}"
        ));
    }
    Ok(())
}
