//! Schoenberg coefficient sequences of positive definite isotropic
//! functions on real spheres `S^d` and complex spheres `Ω_{2q}`.

pub mod cli;
pub mod complex_coeffs;
pub mod disk;
pub mod error;
pub mod gegenbauer;
pub mod io;
pub mod library;
pub mod quadrature;
pub mod real_coeffs;
pub mod selftest;
pub mod spd;
pub mod special;
pub mod walk_complex;
pub mod walk_real;

pub use error::{Result, SchoenbergError};
