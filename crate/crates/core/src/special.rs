//! Log-gamma and rising factorials.

/// Products up to this length are formed directly; longer ones go through
/// log-gamma differences.
pub const DIRECT_PRODUCT_MAX: usize = 30;

pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// Rising factorial `(x)^(j) = x (x+1) ... (x+j-1)`, for `x > 0`.
pub fn rising_factorial(x: f64, j: usize) -> f64 {
    if j <= DIRECT_PRODUCT_MAX {
        (0..j).fold(1.0, |acc, i| acc * (x + i as f64))
    } else {
        ln_rising_factorial(x, j).exp()
    }
}

pub fn ln_rising_factorial(x: f64, j: usize) -> f64 {
    if j <= DIRECT_PRODUCT_MAX {
        (0..j).map(|i| (x + i as f64).ln()).sum()
    } else {
        ln_gamma(x + j as f64) - ln_gamma(x)
    }
}

/// `Π (num_k)^(j) / Π (den_k)^(j)` for positive arguments, without
/// forming the (possibly overflowing) factorials separately.
pub fn pochhammer_ratio(num: &[f64], den: &[f64], j: usize) -> f64 {
    if j <= DIRECT_PRODUCT_MAX {
        (0..j).fold(1.0, |acc, i| {
            let i = i as f64;
            let top: f64 = num.iter().map(|x| x + i).product();
            let bottom: f64 = den.iter().map(|x| x + i).product();
            acc * top / bottom
        })
    } else {
        let top: f64 = num.iter().map(|&x| ln_rising_factorial(x, j)).sum();
        let bottom: f64 = den.iter().map(|&x| ln_rising_factorial(x, j)).sum();
        (top - bottom).exp()
    }
}
