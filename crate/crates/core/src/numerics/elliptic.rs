//! The complete elliptic integrals at the imaginary modulus `i`, and the two
//! constants built from them.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use super::quadrature::{periodic_trapezoid, QuadratureSpec};

/// Arithmetic–geometric mean of two positive reals.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        if (a - b).abs() <= 1e-16 * a {
            break;
        }
        let next = (0.5 * (a + b), (a * b).sqrt());
        a = next.0;
        b = next.1;
    }
    0.5 * (a + b)
}

/// K(i) = ∫₀^{π/2} dθ / √(1 + sin²θ), via K(k) = π / (2·AGM(1, √(1−k²))).
pub fn elliptic_k_imag() -> f64 {
    PI / (2.0 * agm(1.0, SQRT_2))
}

/// E(i) = ∫₀^{π/2} √(1 + sin²θ) dθ, via the Legendre AGM series
/// E = K·(1 − Σ 2^{n−1} c_n²) with c₀² = k² = −1.
pub fn elliptic_e_imag() -> f64 {
    let (mut a, mut b) = (1.0f64, SQRT_2);
    let mut sum = 0.5 * -1.0;
    let mut pow = 0.5;
    for _ in 0..64 {
        let c = 0.5 * (a - b);
        pow *= 2.0;
        sum += pow * c * c;
        if c.abs() < 1e-17 {
            break;
        }
        let next = (0.5 * (a + b), (a * b).sqrt());
        a = next.0;
        b = next.1;
    }
    elliptic_k_imag() * (1.0 - sum)
}

fn half_period_integral(f: impl Fn(f64) -> f64) -> f64 {
    // The integrands have period π and are even, so the trapezoid over
    // [−π/2, π/2] equals twice the integral over [0, π/2].
    let spec = QuadratureSpec {
        rel_tol: 1e-13,
        ..QuadratureSpec::default()
    };
    let v = periodic_trapezoid(|x| Complex64::new(f(x), 0.0), 2.0, &spec)
        .expect("smooth periodic integrand converges");
    0.5 * v.re
}

/// K(i) by direct quadrature of its defining integral.
pub fn elliptic_k_imag_quadrature() -> f64 {
    half_period_integral(|x| 1.0 / (1.0 + x.sin().powi(2)).sqrt())
}

/// E(i) by direct quadrature of its defining integral.
pub fn elliptic_e_imag_quadrature() -> f64 {
    half_period_integral(|x| (1.0 + x.sin().powi(2)).sqrt())
}

/// Gauss constant `G = (2/π)K(i) = Γ(1/4)²/(2π)^{3/2} ≈ 0.83463`.
pub fn gauss_constant() -> f64 {
    2.0 / PI * elliptic_k_imag()
}

/// Inverse lemniscate constant `L′ = (2/π)(E(i) − K(i)) = 1/(πG) ≈ 0.38138`.
pub fn inverse_lemniscate() -> f64 {
    2.0 / PI * (elliptic_e_imag() - elliptic_k_imag())
}
