//! Dimension walks between complex spheres `Ω_{2q}` and `Ω_{2(q+1)}`.
//!
//! Both directions act along diagonals `m - n = const`: the forward map
//! combines `(m, n)` and `(m+1, n+1)`, the inverse sums over `(m+j, n+j)`.

use crate::complex_coeffs::ComplexSchoenbergSequence;
use crate::error::{domain, Result, SchoenbergError};
use crate::special::pochhammer_ratio;

/// `Ω_{2q} → Ω_{2(q+1)}`:
///
/// ```text
/// a^{q-1}_{m,n} = (m+q-1)(n+q-1) / ((q-1)(m+n+q-1)) a^{q-2}_{m,n}
///               - (m+1)(n+1) / ((q-1)(m+n+q+1)) a^{q-2}_{m+1,n+1}
/// ```
///
/// Output max degree is `M - 2`.
pub fn walk_up_complex(seq: &ComplexSchoenbergSequence) -> Result<ComplexSchoenbergSequence> {
    let big_m = seq.max_degree();
    if big_m < 2 {
        return Err(SchoenbergError::TruncationTooSmall {
            needed: 2,
            got: big_m,
        });
    }
    let q = seq.q();
    let qf = q as f64;
    let out_degree = big_m - 2;
    let mut targets: Vec<(usize, usize)> = seq
        .entries()
        .flat_map(|((m, n), _)| {
            let below = (m >= 1 && n >= 1).then(|| (m - 1, n - 1));
            std::iter::once((m, n)).chain(below)
        })
        .filter(|&(m, n)| m + n <= out_degree)
        .collect();
    targets.sort_unstable();
    targets.dedup();
    let entries = targets.into_iter().map(|(m, n)| {
        let (mf, nf) = (m as f64, n as f64);
        let keep = (mf + qf - 1.0) * (nf + qf - 1.0) / ((qf - 1.0) * (mf + nf + qf - 1.0));
        let shift = (mf + 1.0) * (nf + 1.0) / ((qf - 1.0) * (mf + nf + qf + 1.0));
        ((m, n), keep * seq.get(m, n) - shift * seq.get(m + 1, n + 1))
    });
    let finite =
        seq.is_finitely_supported() && seq.support_degree().is_none_or(|t| t <= out_degree);
    Ok(ComplexSchoenbergSequence::new(q + 1, out_degree, entries)?.with_finite_support(finite))
}

/// `v^{q-2}_{j,m,n} = m^(j) (n+1)^(j) (m+n+q-2) / ((m+q-2)^(j) (n+q-1)^(j) (m+n+2j+q-2))`,
/// the weight as displayed alongside the inverse series. It is positive for
/// `m >= 1`, which is all the support-transfer argument needs, but it
/// omits the factor `u^{q-2}_{m+j,n+j}`; see [`inverse_weight`].
pub fn displayed_weight(j: usize, m: usize, n: usize, q: usize) -> Result<f64> {
    if q < 2 {
        return domain(format!(
            "complex sphere index q must be at least 2, got {q}"
        ));
    }
    let (mf, nf, qf, jf) = (m as f64, n as f64, q as f64, j as f64);
    let ratio = pochhammer_ratio(&[mf, nf + 1.0], &[mf + qf - 2.0, nf + qf - 1.0], j);
    Ok(ratio * (mf + nf + qf - 2.0) / (mf + nf + 2.0 * jf + qf - 2.0))
}

/// Weight of `a^{q-1}_{m+j,n+j}` in `a^{q-2}_{m,n}`:
///
/// ```text
/// (q-1)(m+n+q-1) (m+1)^(j) (n+1)^(j) / ((m+q-1)^(j+1) (n+q-1)^(j+1))
/// ```
///
/// obtained by telescoping the forward recursion. Equals
/// `v^{q-2}_{j,m+1,n} u^{q-2}_{m+1+j,n+j}` with
/// `u^{q-2}_{a,b} = (q-1)(a+b+q-2)/((a+q-2)(b+q-1))`.
pub fn inverse_weight(j: usize, m: usize, n: usize, q: usize) -> Result<f64> {
    if q < 2 {
        return domain(format!(
            "complex sphere index q must be at least 2, got {q}"
        ));
    }
    let (mf, nf, qf, jf) = (m as f64, n as f64, q as f64, j as f64);
    let ratio = pochhammer_ratio(&[mf + 1.0, nf + 1.0], &[mf + qf - 1.0, nf + qf - 1.0], j);
    Ok((qf - 1.0) * (mf + nf + qf - 1.0) * ratio / ((mf + qf - 1.0 + jf) * (nf + qf - 1.0 + jf)))
}

/// Result of the inverse complex walk.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexWalkDownReport {
    pub sequence: ComplexSchoenbergSequence,
    /// Largest magnitude of the last term kept in any series; zero for
    /// finitely supported input.
    pub unresolved: f64,
    pub early_stopped: bool,
}

/// `Ω_{2(q+1)} → Ω_{2q}` with `q >= 2`; output keeps the input max degree.
pub fn walk_down_complex(
    seq: &ComplexSchoenbergSequence,
    tail_tol: f64,
) -> Result<ComplexWalkDownReport> {
    let source_q = seq.q();
    if source_q < 3 {
        return domain(format!(
            "inverse complex walk needs source q >= 3, got {source_q}"
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
    let q = source_q - 1;
    let qf = q as f64;
    let big_m = seq.max_degree();
    let mut unresolved: f64 = 0.0;
    let mut early_stopped = false;
    let mut entries = Vec::new();
    for diag in seq.diagonals() {
        // (m, n) on this diagonal with m + n <= M
        let start_n = if diag < 0 { (-diag) as usize } else { 0 };
        let mut n = start_n;
        loop {
            let m = (n as i64 + diag) as usize;
            if m + n > big_m {
                break;
            }
            let (mf, nf) = (m as f64, n as f64);
            let mut w = inverse_weight(0, m, n, q)?;
            let mut sum = 0.0;
            let mut last = 0.0;
            let mut negligible = 0;
            let mut j = 0;
            while m + n + 2 * j <= big_m {
                let term = w * seq.get(m + j, n + j);
                sum += term;
                if term != 0.0 {
                    last = term;
                    if !finite {
                        if term.abs() < tail_tol * sum.abs() {
                            negligible += 1;
                            if negligible >= 3 {
                                early_stopped |= m + n + 2 * j + 2 <= big_m;
                                break;
                            }
                        } else {
                            negligible = 0;
                        }
                    }
                }
                let jf = j as f64;
                w *= (mf + 1.0 + jf) * (nf + 1.0 + jf) / ((mf + qf + jf) * (nf + qf + jf));
                j += 1;
            }
            if !finite {
                unresolved = unresolved.max(last.abs());
            }
            entries.push(((m, n), sum));
            n += 1;
        }
    }
    Ok(ComplexWalkDownReport {
        sequence: ComplexSchoenbergSequence::new(q, big_m, entries)?.with_finite_support(finite),
        unresolved,
        early_stopped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(q: usize, m: usize, e: &[((usize, usize), f64)]) -> ComplexSchoenbergSequence {
        ComplexSchoenbergSequence::new(q, m, e.iter().copied()).unwrap()
    }

    #[test]
    fn walk_up_examples() {
        for q in 2..7 {
            let up = walk_up_complex(&seq(q, 4, &[((0, 0), 1.0)])).unwrap();
            assert_eq!(up.q(), q + 1);
            assert!((up.get(0, 0) - 1.0).abs() < 1e-15);
            assert_eq!(up.len(), 1);
            let up = walk_up_complex(&seq(q, 4, &[((1, 0), 1.0)])).unwrap();
            assert!((up.get(1, 0) - 1.0).abs() < 1e-15);
            assert_eq!(up.len(), 1);
        }
        assert!(walk_up_complex(&seq(2, 1, &[((0, 0), 1.0)])).is_err());
    }

    #[test]
    fn walk_down_examples() {
        let down = walk_down_complex(&seq(3, 4, &[((0, 0), 1.0)]), 1e-12).unwrap();
        assert_eq!(down.sequence.q(), 2);
        assert!((down.sequence.get(0, 0) - 1.0).abs() < 1e-15);
        assert!(walk_down_complex(&seq(2, 4, &[((0, 0), 1.0)]), 1e-12).is_err());
    }

    #[test]
    fn weights_positive_and_related() {
        for q in 2..=8 {
            for m in 0..=40 {
                for n in 0..=40 {
                    let mut w = inverse_weight(0, m, n, q).unwrap();
                    for j in 0..=40 {
                        let closed = inverse_weight(j, m, n, q).unwrap();
                        assert!(closed > 0.0);
                        assert!((closed - w).abs() <= 1e-12 * closed);
                        let v = displayed_weight(j, m + 1, n, q).unwrap();
                        assert!(v > 0.0);
                        let (a, b) = ((m + 1 + j) as f64, (n + j) as f64);
                        let qf = q as f64;
                        let u = (qf - 1.0) * (a + b + qf - 2.0) / ((a + qf - 2.0) * (b + qf - 1.0));
                        assert!((v * u - closed).abs() <= 1e-12 * closed);
                        let (jf, mf, nf) = (j as f64, m as f64, n as f64);
                        w *= (mf + 1.0 + jf) * (nf + 1.0 + jf) / ((mf + qf + jf) * (nf + qf + jf));
                    }
                }
            }
            // displayed weight at j = 0 is exactly one
            assert_eq!(displayed_weight(0, 3, 2, q).unwrap(), 1.0);
        }
    }

    #[test]
    fn displayed_weight_does_not_invert_forward_map() {
        // a^{q-1}_{1,1} = 4/3 a^{q-2}_{1,1} at q = 2, so the j = 0 weight must be 3/4.
        let up = walk_up_complex(&seq(2, 4, &[((1, 1), 1.0)])).unwrap();
        assert!((up.get(1, 1) - 4.0 / 3.0).abs() < 1e-15);
        assert!((inverse_weight(0, 1, 1, 2).unwrap() - 0.75).abs() < 1e-15);
        assert_eq!(displayed_weight(0, 2, 1, 2).unwrap(), 1.0);
    }

    #[test]
    fn roundtrip_small() {
        let base = seq(
            3,
            8,
            &[
                ((0, 0), 0.1),
                ((1, 1), 0.2),
                ((2, 0), 0.15),
                ((3, 1), 0.05),
                ((0, 2), 0.15),
                ((2, 4), 0.35),
            ],
        );
        let up = walk_up_complex(&base).unwrap();
        let back = walk_down_complex(&up, 1e-12).unwrap().sequence;
        for (m, n) in crate::complex_coeffs::indices_up_to(6) {
            assert!((back.get(m, n) - base.get(m, n)).abs() < 1e-14, "({m},{n})");
        }
        assert!((back.mass() - base.mass()).abs() < 1e-14);
    }

    #[test]
    fn forward_walk_matches_quadrature() {
        use crate::complex_coeffs::{raw_complex_coeffs, reconstruct_complex};
        use crate::disk::disk_quadrature_for_degree;
        let base = seq(
            2,
            8,
            &[
                ((0, 0), 0.2),
                ((1, 1), 0.3),
                ((3, 0), 0.1),
                ((2, 4), 0.25),
                ((4, 3), 0.15),
            ],
        );
        let up = walk_up_complex(&base).unwrap();
        let rule = disk_quadrature_for_degree(3, 8).unwrap();
        let oracle = raw_complex_coeffs(|z| reconstruct_complex(&base, z), 3, 6, &rule).unwrap();
        for ((m, n), a) in oracle {
            assert!(
                (up.get(m, n) - a.re).abs() < 1e-12,
                "({m},{n}) {} vs {}",
                up.get(m, n),
                a.re
            );
        }
    }
}
