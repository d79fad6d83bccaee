//! Built-in test functions and seeded random Schoenberg sequences.

use num_complex::Complex64;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex_coeffs::{as_disk_function, ComplexSchoenbergSequence, DiskFunction};
use crate::error::{domain, Result};
use crate::real_coeffs::{as_function, IsotropicFunction, RealSchoenbergSequence};

pub const DEFAULT_SEED: u64 = 20240917;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, PartialEq)]
pub enum FunctionSpec {
    Constant,
    Cosine,
    /// `(1-r)² / (1 - 2r cos θ + r²)`, scaled so `ψ(0) = 1`.
    Poisson {
        r: f64,
    },
    GegenbauerMixture {
        seed: u64,
        n_max: usize,
        d: usize,
    },
    /// `z^m conj(z)^n`.
    DiskMonomial {
        m: usize,
        n: usize,
    },
    DiskMixture {
        seed: u64,
        max_degree: usize,
        q: usize,
    },
}

impl FunctionSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            FunctionSpec::Poisson { r } if !(r > 0.0 && r < 1.0) => {
                domain(format!("poisson needs r in (0, 1), got {r}"))
            }
            FunctionSpec::GegenbauerMixture { d: 0, .. } => {
                domain("sphere dimension must be at least 1")
            }
            FunctionSpec::DiskMixture { q, .. } if q < 2 => domain(format!(
                "complex sphere index q must be at least 2, got {q}"
            )),
            _ => Ok(()),
        }
    }

    pub fn label(&self) -> String {
        match self {
            FunctionSpec::Constant => "constant".into(),
            FunctionSpec::Cosine => "cosine".into(),
            FunctionSpec::Poisson { r } => format!("poisson(r={r})"),
            FunctionSpec::GegenbauerMixture { seed, n_max, d } => {
                format!("gegenbauer-mixture(seed={seed},N={n_max},d={d})")
            }
            FunctionSpec::DiskMonomial { m, n } => format!("disk-monomial({m},{n})"),
            FunctionSpec::DiskMixture {
                seed,
                max_degree,
                q,
            } => format!("disk-mixture(seed={seed},M={max_degree},q={q})"),
        }
    }

    pub fn real_function(&self) -> Result<IsotropicFunction> {
        self.validate()?;
        let label = self.label();
        match *self {
            FunctionSpec::Constant => IsotropicFunction::new(label, |_| 1.0),
            FunctionSpec::Cosine => IsotropicFunction::new(label, f64::cos),
            FunctionSpec::Poisson { r } => IsotropicFunction::new(label, move |t| {
                (1.0 - r).powi(2) / (1.0 - 2.0 * r * t.cos() + r * r)
            }),
            FunctionSpec::GegenbauerMixture { seed, n_max, d } => {
                as_function(&gegenbauer_mixture(&mut rng(seed), d, n_max)?, label)
            }
            _ => domain(format!(
                "{label} is a function on the disk, not of a geodesic distance"
            )),
        }
    }

    pub fn disk_function(&self) -> Result<DiskFunction> {
        self.validate()?;
        let label = self.label();
        match *self {
            FunctionSpec::Constant => DiskFunction::new(label, |_| Complex64::new(1.0, 0.0)),
            FunctionSpec::DiskMonomial { m, n } => DiskFunction::new(label, move |z| {
                let w = z.as_complex();
                w.powu(m as u32) * w.conj().powu(n as u32)
            }),
            FunctionSpec::DiskMixture {
                seed,
                max_degree,
                q,
            } => as_disk_function(
                &disk_mixture(&mut rng(seed), q, max_degree, usize::MAX)?,
                label,
            ),
            _ => domain(format!(
                "{label} is a function of a geodesic distance, not on the disk"
            )),
        }
    }

    /// Degree of the function as a polynomial, when it is one. Coefficients
    /// above this degree vanish exactly.
    pub fn polynomial_degree(&self) -> Option<usize> {
        match *self {
            FunctionSpec::Constant => Some(0),
            FunctionSpec::Cosine => Some(1),
            FunctionSpec::Poisson { .. } => None,
            FunctionSpec::GegenbauerMixture { n_max, .. } => Some(n_max),
            FunctionSpec::DiskMonomial { m, n } => Some(m + n),
            FunctionSpec::DiskMixture { max_degree, .. } => Some(max_degree.saturating_sub(2)),
        }
    }

    /// Exact `b_{0,d}, ..., b_{N,d}` where an independent closed form exists.
    pub fn real_oracle(&self, d: usize, n_max: usize) -> Option<Vec<f64>> {
        let mut b = vec![0.0; n_max + 1];
        match *self {
            FunctionSpec::Constant => b[0] = 1.0,
            FunctionSpec::Cosine if n_max >= 1 => b[1] = 1.0,
            FunctionSpec::Poisson { r } if d == 1 => {
                // Fourier series of the Poisson kernel
                let scale = (1.0 - r) / (1.0 + r);
                for (n, c) in b.iter_mut().enumerate() {
                    *c = if n == 0 {
                        scale
                    } else {
                        2.0 * scale * r.powi(n as i32)
                    };
                }
            }
            FunctionSpec::GegenbauerMixture {
                seed,
                n_max: own,
                d: own_d,
            } if own_d == d => {
                let seq = gegenbauer_mixture(&mut rng(seed), own_d, own).ok()?;
                for (c, s) in b.iter_mut().zip(seq.coeffs()) {
                    *c = *s;
                }
            }
            _ => return None,
        }
        Some(b)
    }
}

fn normalized(weights: Vec<f64>) -> Vec<f64> {
    let total: f64 = weights.iter().sum();
    weights.into_iter().map(|w| w / total).collect()
}

/// Dense nonnegative normalized `b_{0,d}, ..., b_{N,d}`; the function is a
/// polynomial so the sequence is marked finitely supported.
pub fn gegenbauer_mixture(
    rng: &mut impl Rng,
    d: usize,
    n_max: usize,
) -> Result<RealSchoenbergSequence> {
    let weights = normalized((0..=n_max).map(|_| rng.random::<f64>() + 1e-3).collect());
    Ok(RealSchoenbergSequence::new(d, weights)?.with_finite_support(true))
}

/// Nonnegative normalized sequence with random support inside
/// `0..=N-2`, so the last two entries vanish and support is finite.
pub fn random_real_sequence(
    rng: &mut impl Rng,
    d: usize,
    n_max: usize,
) -> Result<RealSchoenbergSequence> {
    if n_max < 2 {
        return domain(format!(
            "random sequences need truncation at least 2, got {n_max}"
        ));
    }
    let slots = n_max - 1;
    let count = rng.random_range(1..=slots);
    let mut coeffs = vec![0.0; n_max + 1];
    let weights = normalized((0..count).map(|_| rng.random::<f64>() + 1e-3).collect());
    for (i, w) in sample(rng, slots, count).into_iter().zip(weights) {
        coeffs[i] = w;
    }
    RealSchoenbergSequence::new(d, coeffs)
}

/// Sparse nonnegative normalized double sequence with at most `max_terms`
/// entries, all of total degree at most `M - 2`.
pub fn disk_mixture(
    rng: &mut impl Rng,
    q: usize,
    max_degree: usize,
    max_terms: usize,
) -> Result<ComplexSchoenbergSequence> {
    if max_degree < 2 {
        return domain(format!(
            "random sequences need max degree at least 2, got {max_degree}"
        ));
    }
    let slots: Vec<_> = crate::complex_coeffs::indices_up_to(max_degree - 2).collect();
    let count = rng.random_range(1..=slots.len().min(max_terms.max(1)));
    let weights = normalized((0..count).map(|_| rng.random::<f64>() + 1e-3).collect());
    let picks = sample(rng, slots.len(), count);
    ComplexSchoenbergSequence::new(
        q,
        max_degree,
        picks.into_iter().map(|i| slots[i]).zip(weights),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_coeffs::compute_complex_coeffs;
    use crate::disk::disk_quadrature_for_degree;
    use crate::quadrature::{default_nodes, IntervalRule};
    use crate::real_coeffs::compute_real_coeffs;

    #[test]
    fn generators_are_valid_and_deterministic() {
        let a = random_real_sequence(&mut rng(7), 3, 20).unwrap();
        assert_eq!(a, random_real_sequence(&mut rng(7), 3, 20).unwrap());
        for seed in 0..50 {
            let s = random_real_sequence(&mut rng(seed), 4, 12).unwrap();
            assert!(s.valid_mass() && s.is_finitely_supported());
            assert!((s.mass() - 1.0).abs() < 1e-14);
            let c = disk_mixture(&mut rng(seed), 3, 10, 6).unwrap();
            assert!(c.valid_mass() && c.is_finitely_supported());
            assert!(c.len() <= 6);
            assert!((c.mass() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn real_oracles_match_quadrature() {
        let specs = [
            (FunctionSpec::Constant, 3),
            (FunctionSpec::Cosine, 2),
            (FunctionSpec::Cosine, 1),
            (FunctionSpec::Poisson { r: 0.5 }, 1),
            (
                FunctionSpec::GegenbauerMixture {
                    seed: 3,
                    n_max: 8,
                    d: 5,
                },
                5,
            ),
        ];
        for (spec, d) in specs {
            let rule = IntervalRule::for_dimension(d, default_nodes(20)).unwrap();
            let got = compute_real_coeffs(&spec.real_function().unwrap(), d, 20, &rule).unwrap();
            for (a, b) in got.coeffs().iter().zip(spec.real_oracle(d, 20).unwrap()) {
                assert!((a - b).abs() < 1e-12, "{}", spec.label());
            }
        }
        assert!(FunctionSpec::Poisson { r: 1.0 }.real_function().is_err());
        assert!(FunctionSpec::DiskMonomial { m: 1, n: 1 }
            .real_function()
            .is_err());
    }

    #[test]
    fn disk_monomial_is_diagonal() {
        let rule = disk_quadrature_for_degree(2, 6).unwrap();
        let phi = FunctionSpec::DiskMonomial { m: 1, n: 1 }
            .disk_function()
            .unwrap();
        let c = compute_complex_coeffs(&phi, 2, 6, &rule).unwrap().sequence;
        assert!((c.get(0, 0) - 0.5).abs() < 1e-13 && (c.get(1, 1) - 0.5).abs() < 1e-13);
        assert!(c.entries().all(|((m, n), a)| m == n || a.abs() < 1e-13));
    }
}
