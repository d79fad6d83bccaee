//! Schoenberg coefficients on complex spheres `Ω_{2q}`.
//!
//! `φ ∈ Υ_{2q}` iff `φ(z) = Σ a^{q-2}_{m,n} R^{q-2}_{m,n}(z)` with
//! `a^{q-2}_{m,n} >= 0` summing to one, where
//! `a^{q-2}_{m,n} = h^{q-2}_{m,n} ∫ φ conj(R^{q-2}_{m,n}) dν_{q-2}`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::disk::{disk_poly_eval, h_norm, DiskIndex, DiskPoint, DiskRule};
use crate::error::{domain, Result, SchoenbergError};
use crate::real_coeffs::{is_valid_mass, NEGATIVITY_TOL, NORMALIZATION_TOL, RESOLUTION_TOL};

/// Imaginary parts above this are reported as suspicious.
pub const IMAG_TOL: f64 = 1e-10;

/// A candidate member of `Υ_{2q}`.
#[derive(Clone)]
pub struct DiskFunction {
    label: String,
    eval: Arc<dyn Fn(DiskPoint) -> Complex64 + Send + Sync>,
}

impl DiskFunction {
    /// Wraps `eval`, checking `φ(1) = 1`.
    pub fn new(
        label: impl Into<String>,
        eval: impl Fn(DiskPoint) -> Complex64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let f = Self {
            label: label.into(),
            eval: Arc::new(eval),
        };
        let at_one = f.eval(DiskPoint::new(1.0, 0.0)?);
        if (at_one - Complex64::new(1.0, 0.0)).norm() > NORMALIZATION_TOL {
            return domain(format!("{}: φ(1) = {at_one}, expected 1", f.label));
        }
        Ok(f)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, z: DiskPoint) -> Complex64 {
        (self.eval)(z)
    }
}

impl fmt::Debug for DiskFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DiskFunction")
            .field("label", &self.label)
            .finish()
    }
}

/// Sparse `2q`-Schoenberg sequence `{a^{q-2}_{m,n} : m + n <= M}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSchoenbergSequence {
    q: usize,
    max_degree: usize,
    entries: BTreeMap<(usize, usize), f64>,
    valid_mass: bool,
    finite_support: bool,
}

impl ComplexSchoenbergSequence {
    /// Exact zeros are not stored. Support is inferred: finite when no
    /// entry has total degree `M - 1` or `M`.
    pub fn new(
        q: usize,
        max_degree: usize,
        entries: impl IntoIterator<Item = ((usize, usize), f64)>,
    ) -> Result<Self> {
        if q < 2 {
            return domain(format!(
                "complex sphere index q must be at least 2, got {q}"
            ));
        }
        let mut map = BTreeMap::new();
        for ((m, n), a) in entries {
            if m + n > max_degree {
                return domain(format!("entry ({m}, {n}) exceeds max degree {max_degree}"));
            }
            if !a.is_finite() {
                return domain(format!("entry ({m}, {n}) is not finite"));
            }
            if a != 0.0 {
                *map.entry((m, n)).or_insert(0.0) += a;
            }
        }
        let valid_mass = is_valid_mass(map.values());
        let finite_support = max_degree >= 1 && map.keys().all(|&(m, n)| m + n + 2 <= max_degree);
        Ok(Self {
            q,
            max_degree,
            entries: map,
            valid_mass,
            finite_support,
        })
    }

    pub fn with_finite_support(mut self, finite: bool) -> Self {
        self.finite_support = finite;
        self
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn get(&self, m: usize, n: usize) -> f64 {
        self.entries.get(&(m, n)).copied().unwrap_or(0.0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn valid_mass(&self) -> bool {
        self.valid_mass
    }

    pub fn is_finitely_supported(&self) -> bool {
        self.finite_support
    }

    pub fn mass(&self) -> f64 {
        self.entries.values().sum()
    }

    pub fn has_negative(&self) -> bool {
        self.entries.values().any(|&a| a < -NEGATIVITY_TOL)
    }

    /// Largest total degree carrying a nonzero entry.
    pub fn support_degree(&self) -> Option<usize> {
        self.entries.keys().map(|&(m, n)| m + n).max()
    }

    /// Diagonals `m - n` that carry a nonzero entry.
    pub fn diagonals(&self) -> std::collections::BTreeSet<i64> {
        self.entries
            .keys()
            .map(|&(m, n)| m as i64 - n as i64)
            .collect()
    }

    /// Largest `|a_{m,n} - a_{n,m}|`, zero for functions real on `[-1, 1]`.
    pub fn conjugate_asymmetry(&self) -> f64 {
        self.entries
            .keys()
            .map(|&(m, n)| (self.get(m, n) - self.get(n, m)).abs())
            .fold(0.0, f64::max)
    }
}

/// Coefficients together with the imaginary-part diagnostic.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexCoefficients {
    pub sequence: ComplexSchoenbergSequence,
    /// Largest `|Im a_{m,n}|`; should vanish for members of `Υ_{2q}`.
    pub max_imag: f64,
}

impl ComplexCoefficients {
    pub fn imag_ok(&self) -> bool {
        self.max_imag <= IMAG_TOL
    }
}

/// All `(m, n)` with `m + n <= max_degree`.
pub fn indices_up_to(max_degree: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=max_degree).flat_map(move |t| (0..=t).map(move |m| (m, t - m)))
}

/// Complex coefficients without any resolution check.
pub fn raw_complex_coeffs(
    phi: impl Fn(DiskPoint) -> Complex64,
    q: usize,
    max_degree: usize,
    rule: &DiskRule,
) -> Result<BTreeMap<(usize, usize), Complex64>> {
    if rule.q() != q {
        return domain(format!(
            "quadrature built for q = {}, coefficients requested for q = {q}",
            rule.q()
        ));
    }
    let indices: Vec<_> = indices_up_to(max_degree).collect();
    let mut sums = vec![Complex64::new(0.0, 0.0); indices.len()];
    for (z, w) in rule.points() {
        let fw = phi(z) * w;
        for (acc, &(m, n)) in sums.iter_mut().zip(&indices) {
            *acc += fw * disk_poly_eval(DiskIndex::new(m, n, q - 2), z).conj();
        }
    }
    indices
        .into_iter()
        .zip(sums)
        .map(|((m, n), s)| Ok(((m, n), s * h_norm(m, n, q)?)))
        .collect()
}

/// `a^{q-2}_{m,n}` for `m + n <= max_degree`.
pub fn compute_complex_coeffs(
    phi: &DiskFunction,
    q: usize,
    max_degree: usize,
    rule: &DiskRule,
) -> Result<ComplexCoefficients> {
    let raw = raw_complex_coeffs(|z| phi.eval(z), q, max_degree, rule)?;
    let abs_sum: f64 = raw.values().map(|a| a.re.abs()).sum();
    if abs_sum > 1.0 + RESOLUTION_TOL {
        return Err(SchoenbergError::UnderResolved {
            abs_sum,
            tolerance: RESOLUTION_TOL,
        });
    }
    let max_imag = raw.values().map(|a| a.im.abs()).fold(0.0, f64::max);
    let sequence =
        ComplexSchoenbergSequence::new(q, max_degree, raw.into_iter().map(|(k, a)| (k, a.re)))?
            .with_finite_support(false);
    Ok(ComplexCoefficients { sequence, max_imag })
}

/// `Σ a^{q-2}_{m,n} R^{q-2}_{m,n}(z)`.
pub fn reconstruct_complex(seq: &ComplexSchoenbergSequence, z: DiskPoint) -> Complex64 {
    seq.entries()
        .map(|((m, n), a)| disk_poly_eval(DiskIndex::new(m, n, seq.q - 2), z) * a)
        .sum()
}

/// The function represented by a truncated sequence.
pub fn as_disk_function(
    seq: &ComplexSchoenbergSequence,
    label: impl Into<String>,
) -> Result<DiskFunction> {
    let seq = seq.clone();
    DiskFunction::new(label, move |z| reconstruct_complex(&seq, z))
}
