//! Disk polynomials `R^α_{m,n}` on the closed unit disk.
//!
//! With `z = r e^{iφ}` and `k = |m - n|`,
//!
//! ```text
//! R^α_{m,n}(z) = r^k e^{i(m-n)φ} P^{(α,k)}_{min(m,n)}(2r² - 1) / P^{(α,k)}_{min(m,n)}(1)
//! ```
//!
//! so that `R^α_{m,n}(1) = 1`. For `α = q - 2` they form a complete
//! orthogonal system for `dν_{q-2} = ((q-1)/π)(1-|z|²)^{q-2} dx dy`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::quadrature::gauss_legendre_nodes;

/// Slack allowed on `|z| <= 1`.
pub const DISK_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DiskIndex {
    pub m: usize,
    pub n: usize,
    pub alpha: usize,
}

impl DiskIndex {
    pub fn new(m: usize, n: usize, alpha: usize) -> Self {
        Self { m, n, alpha }
    }

    /// Index attached to the complex sphere `Ω_{2q}`, `q >= 2`.
    pub fn for_sphere(m: usize, n: usize, q: usize) -> Result<Self> {
        check_q(q)?;
        Ok(Self::new(m, n, q - 2))
    }

    /// `m - n`, the diagonal the index lies on.
    pub fn diagonal(&self) -> i64 {
        self.m as i64 - self.n as i64
    }
}

/// A point of the closed unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint {
    x: f64,
    y: f64,
}

impl DiskPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite()) || x * x + y * y > 1.0 + DISK_TOL {
            return domain(format!(
                "point ({x}, {y}) lies outside the closed unit disk"
            ));
        }
        Ok(Self { x, y })
    }

    pub fn polar(r: f64, phi: f64) -> Result<Self> {
        Self::new(r * phi.cos(), r * phi.sin())
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn radius(&self) -> f64 {
        self.x.hypot(self.y).min(1.0)
    }
}

impl TryFrom<Complex64> for DiskPoint {
    type Error = crate::error::SchoenbergError;

    fn try_from(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }
}

fn check_q(q: usize) -> Result<()> {
    if q < 2 {
        return domain(format!(
            "complex sphere index q must be at least 2, got {q}"
        ));
    }
    Ok(())
}

/// Jacobi polynomial `P_k^{(a,b)}(x) / P_k^{(a,b)}(1)`.
pub fn normalized_jacobi(k: usize, a: f64, b: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut cur = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
    for j in 2..=k {
        let j = j as f64;
        let s = 2.0 * j + a + b;
        let c1 = 2.0 * j * (j + a + b) * (s - 2.0);
        let c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        let c3 = 2.0 * (j + a - 1.0) * (j + b - 1.0) * s;
        let next = (c2 * cur - c3 * prev) / c1;
        prev = cur;
        cur = next;
    }
    // P_k(1) = binom(k + a, k)
    let at_one = (1..=k).fold(1.0, |acc, j| acc * (j as f64 + a) / j as f64);
    cur / at_one
}

/// `R^α_{m,n}(z)`.
pub fn disk_poly_eval(idx: DiskIndex, z: DiskPoint) -> Complex64 {
    let r = z.radius();
    let phi = z.y.atan2(z.x);
    let k = idx.m.abs_diff(idx.n);
    let radial = r.powi(k as i32)
        * normalized_jacobi(
            idx.m.min(idx.n),
            idx.alpha as f64,
            k as f64,
            2.0 * r * r - 1.0,
        );
    Complex64::from_polar(radial, idx.diagonal() as f64 * phi)
}

/// `h^{q-2}_{m,n} = ((m+n+q-1)/(q-1)) binom(m+q-2, q-2) binom(n+q-2, q-2)`.
pub fn h_norm(m: usize, n: usize, q: usize) -> Result<f64> {
    check_q(q)?;
    let binom =
        |top: usize, k: usize| (1..=k).fold(1.0, |acc, j| acc * (top - k + j) as f64 / j as f64);
    let qf = q as f64;
    Ok((m + n + q - 1) as f64 / (qf - 1.0) * binom(m + q - 2, q - 2) * binom(n + q - 2, q - 2))
}

/// Product rule for `ν_{q-2}`: Gauss-Legendre in `s = r²` against
/// `(q-1)(1-s)^{q-2} ds`, times the uniform rule in `φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskRule {
    q: usize,
    /// `(s, weight)` pairs; weights include the radial density.
    radial: Vec<(f64, f64)>,
    angles: usize,
}

impl DiskRule {
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn radial_nodes(&self) -> usize {
        self.radial.len()
    }

    pub fn angular_nodes(&self) -> usize {
        self.angles
    }

    pub fn len(&self) -> usize {
        self.radial.len() * self.angles
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All `(z, weight)` nodes; weights sum to `ν_{q-2}(B[0,1]) = 1`.
    pub fn points(&self) -> Vec<(DiskPoint, f64)> {
        let da = 2.0 * PI / self.angles as f64;
        let mut out = Vec::with_capacity(self.len());
        for &(s, ws) in &self.radial {
            let r = s.sqrt();
            for j in 0..self.angles {
                let phi = j as f64 * da;
                out.push((
                    DiskPoint {
                        x: r * phi.cos(),
                        y: r * phi.sin(),
                    },
                    ws / self.angles as f64,
                ));
            }
        }
        out
    }

    pub fn integrate(&self, mut f: impl FnMut(DiskPoint) -> Complex64) -> Complex64 {
        self.points().into_iter().map(|(z, w)| f(z) * w).sum()
    }
}

pub fn disk_quadrature(q: usize, radial_nodes: usize, angular_nodes: usize) -> Result<DiskRule> {
    check_q(q)?;
    if radial_nodes == 0 || angular_nodes == 0 {
        return domain("disk quadrature needs at least one node in each direction");
    }
    let (xs, ws) = gauss_legendre_nodes(radial_nodes);
    let qf = q as f64;
    let radial = xs
        .iter()
        .zip(&ws)
        .map(|(&x, &w)| {
            let s = (x + 1.0) / 2.0;
            (s, w / 2.0 * (qf - 1.0) * (1.0 - s).powi(q as i32 - 2))
        })
        .collect();
    Ok(DiskRule {
        q,
        radial,
        angles: angular_nodes,
    })
}

/// Rule exact for products of two disk polynomials of total degree at most
/// `max_degree` each.
pub fn disk_quadrature_for_degree(q: usize, max_degree: usize) -> Result<DiskRule> {
    disk_quadrature(q, max_degree + q / 2 + 4, 4 * max_degree + 8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn pt(x: f64, y: f64) -> DiskPoint {
        DiskPoint::new(x, y).unwrap()
    }

    #[test]
    fn low_degree_polynomials() {
        let z = pt(0.3, -0.4);
        for alpha in 0..5 {
            let one = disk_poly_eval(DiskIndex::new(0, 0, alpha), z);
            assert!((one - Complex64::new(1.0, 0.0)).norm() < 1e-15);
            let r10 = disk_poly_eval(DiskIndex::new(1, 0, alpha), z);
            assert!((r10 - z.as_complex()).norm() < 1e-15);
            let r01 = disk_poly_eval(DiskIndex::new(0, 1, alpha), z);
            assert!((r01 - z.as_complex().conj()).norm() < 1e-15);
        }
    }

    #[test]
    fn value_one_at_one() {
        for alpha in 0..6 {
            for m in 0..10 {
                for n in 0..10 {
                    let v = disk_poly_eval(DiskIndex::new(m, n, alpha), pt(1.0, 0.0));
                    assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn bounded_and_conjugate_symmetric_on_grid() {
        for alpha in 0..4 {
            for i in 0..=20 {
                for j in 0..24 {
                    let z = DiskPoint::polar(i as f64 / 20.0, j as f64 * PI / 12.0).unwrap();
                    for m in 0..=10 {
                        for n in 0..=10 {
                            let a = disk_poly_eval(DiskIndex::new(m, n, alpha), z);
                            let b = disk_poly_eval(DiskIndex::new(n, m, alpha), z);
                            assert!(a.norm() <= 1.0 + 1e-12);
                            assert!((a - b.conj()).norm() < 1e-12);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn recursion_identity() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let q = rng.random_range(2..=6usize);
            let m = rng.random_range(1..=10usize);
            let n = rng.random_range(0..=10usize);
            let z = DiskPoint::polar(rng.random::<f64>().sqrt(), rng.random_range(0.0..2.0 * PI))
                .unwrap();
            let lhs =
                disk_poly_eval(DiskIndex::new(m - 1, n, q - 1), z) * (1.0 - z.radius().powi(2));
            let rhs = (disk_poly_eval(DiskIndex::new(m - 1, n, q - 2), z)
                - disk_poly_eval(DiskIndex::new(m, n + 1, q - 2), z))
                * ((q - 1) as f64 / (m + n + q - 1) as f64);
            assert!((lhs - rhs).norm() < 1e-12, "q={q} m={m} n={n}");
        }
    }

    #[test]
    fn h_norm_values() {
        assert_eq!(h_norm(0, 0, 2).unwrap(), 1.0);
        assert_eq!(h_norm(1, 0, 2).unwrap(), 2.0);
        for q in 2..7 {
            for m in 0..8 {
                for n in 0..8 {
                    let (a, b) = (h_norm(m, n, q).unwrap(), h_norm(n, m, q).unwrap());
                    assert!((a - b).abs() <= 1e-14 * a);
                }
            }
        }
        // q = 3: (m+n+2)/2 (m+1)(n+1)
        assert!((h_norm(2, 1, 3).unwrap() - 15.0).abs() < 1e-13);
        assert!(h_norm(0, 0, 1).is_err());
    }

    #[test]
    fn quadrature_is_probability_measure() {
        for q in 2..=6 {
            let rule = disk_quadrature(q, 12, 16).unwrap();
            let total = rule.integrate(|_| Complex64::new(1.0, 0.0));
            assert!((total.re - 1.0).abs() < 1e-13 && total.im.abs() < 1e-15);
        }
        let rule = disk_quadrature(2, 8, 16).unwrap();
        let mean = rule.integrate(|z| disk_poly_eval(DiskIndex::new(1, 0, 0), z));
        assert!(mean.norm() < 1e-15);
    }

    #[test]
    fn squared_norms_match_h() {
        for q in 2..=5 {
            let rule = disk_quadrature_for_degree(q, 12).unwrap();
            for m in 0..=6 {
                for n in 0..=6 {
                    let idx = DiskIndex::new(m, n, q - 2);
                    let v =
                        rule.integrate(|z| Complex64::new(disk_poly_eval(idx, z).norm_sqr(), 0.0));
                    let expect = 1.0 / h_norm(m, n, q).unwrap();
                    assert!((v.re - expect).abs() < 1e-10, "q={q} m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn points_outside_disk_rejected() {
        assert!(DiskPoint::new(1.0, 0.1).is_err());
        assert!(DiskPoint::new(1.0 + 1e-13, 0.0).is_ok());
        assert!(disk_quadrature(1, 4, 4).is_err());
    }
}
