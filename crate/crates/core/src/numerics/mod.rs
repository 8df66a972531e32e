//! Special functions and quadrature used throughout the crate.

mod bessel;
mod elliptic;
mod gamma;
mod hypergeometric;
mod quadrature;

pub use bessel::{bessel, bessel_j, bessel_k, bessel_y, BesselKind, BESSEL_CROSSOVER};
pub use elliptic::{
    agm, elliptic_e_imag, elliptic_e_imag_quadrature, elliptic_k_imag, elliptic_k_imag_quadrature,
    gauss_constant, inverse_lemniscate,
};
pub use gamma::{digamma_int, gamma, gen_binomial};
pub use hypergeometric::{hyp2f1, hyp2f1_series};
pub use quadrature::{periodic_trapezoid, QuadratureSpec};

pub type Complex = num_complex::Complex64;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
