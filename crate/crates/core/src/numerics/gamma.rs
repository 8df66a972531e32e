use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function on the real line (Lanczos approximation, reflection below 1/2).
pub fn gamma(z: f64) -> Result<f64> {
    if !z.is_finite() {
        return Err(Error::domain(format!("gamma of non-finite argument {z}")));
    }
    if z <= 0.0 && z == z.floor() {
        return Err(Error::domain(format!("gamma has a pole at {z}")));
    }
    Ok(gamma_unchecked(z))
}

fn gamma_unchecked(z: f64) -> f64 {
    if z < 0.5 {
        return PI / ((PI * z).sin() * gamma_unchecked(1.0 - z));
    }
    // Integers are frequent callers; return exact factorials where representable.
    if z == z.floor() && z <= 171.0 {
        let mut f = 1.0;
        let mut k = 2.0;
        while k < z {
            f *= k;
            k += 1.0;
        }
        return f;
    }
    let z = z - 1.0;
    let mut acc = LANCZOS[0];
    for (k, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc
}

/// Generalized binomial coefficient `(1/n!) ∏_{j=1}^{n} (z − j + 1)`.
pub fn gen_binomial(z: f64, n: u64) -> f64 {
    let mut acc = 1.0;
    for j in 1..=n {
        acc *= (z - j as f64 + 1.0) / j as f64;
    }
    acc
}

/// Digamma at a positive integer: `ψ(n) = H_{n−1} − γ`.
pub fn digamma_int(n: u64) -> f64 {
    assert!(n >= 1, "digamma_int needs n >= 1");
    let h: f64 = (1..n).map(|k| 1.0 / k as f64).sum();
    h - super::EULER_GAMMA
}
