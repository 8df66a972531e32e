//! Bessel functions J, Y and K for the handful of orders the model needs:
//! 0, 1 and ±1/3.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::gamma::gamma;
use crate::error::{Error, Result};

/// Argument above which J and Y switch from power series to the Hankel
/// large-argument expansion.
pub const BESSEL_CROSSOVER: f64 = 12.0;

/// K uses its power series only up to here; beyond it the series cancels
/// catastrophically and Steed's continued fraction takes over.
const K_SERIES_LIMIT: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BesselKind {
    J,
    Y,
    K,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Order {
    Zero,
    One,
    Third,
    MinusThird,
}

impl Order {
    fn parse(nu: f64) -> Result<Order> {
        const T: f64 = 1e-12;
        if nu.abs() < T {
            Ok(Order::Zero)
        } else if (nu - 1.0).abs() < T {
            Ok(Order::One)
        } else if (nu - 1.0 / 3.0).abs() < T {
            Ok(Order::Third)
        } else if (nu + 1.0 / 3.0).abs() < T {
            Ok(Order::MinusThird)
        } else {
            Err(Error::domain(format!(
                "Bessel order {nu} not supported (0, 1, ±1/3 only)"
            )))
        }
    }

    fn value(self) -> f64 {
        match self {
            Order::Zero => 0.0,
            Order::One => 1.0,
            Order::Third => 1.0 / 3.0,
            Order::MinusThird => -1.0 / 3.0,
        }
    }
}

pub fn bessel(kind: BesselKind, order: f64, z: f64) -> Result<f64> {
    match kind {
        BesselKind::J => bessel_j(order, z),
        BesselKind::Y => bessel_y(order, z),
        BesselKind::K => bessel_k(order, z),
    }
}

pub fn bessel_j(order: f64, z: f64) -> Result<f64> {
    let nu = Order::parse(order)?;
    if !(z >= 0.0) || !z.is_finite() {
        return Err(Error::domain(format!("J needs z ≥ 0, got {z}")));
    }
    if z == 0.0 {
        return match nu {
            Order::Zero => Ok(1.0),
            Order::MinusThird => Err(Error::domain("J_{-1/3} is singular at 0")),
            _ => Ok(0.0),
        };
    }
    if z <= BESSEL_CROSSOVER {
        Ok(j_series(nu.value(), z))
    } else {
        Ok(hankel_jy(nu.value(), z).0)
    }
}

pub fn bessel_y(order: f64, z: f64) -> Result<f64> {
    let nu = Order::parse(order)?;
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::domain(format!("Y needs z > 0, got {z}")));
    }
    if z > BESSEL_CROSSOVER {
        return Ok(hankel_jy(nu.value(), z).1);
    }
    Ok(match nu {
        Order::Zero => y_series_int(0, z),
        Order::One => y_series_int(1, z),
        Order::Third | Order::MinusThird => {
            let v = nu.value();
            (j_series(v, z) * (v * PI).cos() - j_series(-v, z)) / (v * PI).sin()
        }
    })
}

pub fn bessel_k(order: f64, z: f64) -> Result<f64> {
    let nu = Order::parse(order)?;
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::domain(format!("K needs z > 0, got {z}")));
    }
    if z <= K_SERIES_LIMIT {
        return Ok(match nu {
            Order::Zero => k_series_int(0, z),
            Order::One => k_series_int(1, z),
            Order::Third | Order::MinusThird => {
                let v = nu.value().abs();
                0.5 * PI * (i_series(-v, z) - i_series(v, z)) / (v * PI).sin()
            }
        });
    }
    Ok(match nu {
        Order::Zero => steed_k(0.0, z).0,
        Order::One => steed_k(0.0, z).1,
        Order::Third | Order::MinusThird => steed_k(1.0 / 3.0, z).0,
    })
}

/// Σ (−1)^k (z/2)^{2k+ν} / (k! Γ(k+ν+1)).
fn j_series(nu: f64, z: f64) -> f64 {
    power_series(nu, z, -1.0)
}

fn i_series(nu: f64, z: f64) -> f64 {
    power_series(nu, z, 1.0)
}

fn power_series(nu: f64, z: f64, sign: f64) -> f64 {
    let h = 0.5 * z;
    let q = sign * h * h;
    let mut term = h.powf(nu) / gamma(nu + 1.0).expect("order keeps Γ finite");
    let mut sum = term;
    for k in 1..500 {
        let kf = k as f64;
        term *= q / (kf * (kf + nu));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() && kf > h {
            break;
        }
    }
    sum
}

/// Y₀, Y₁ from the logarithmic series.
fn y_series_int(n: u32, z: f64) -> f64 {
    let h = 0.5 * z;
    let q = -h * h;
    let jn = j_series(n as f64, z);
    let log_part = 2.0 / PI * h.ln() * jn;
    // ψ(k+1) and ψ(n+k+1), advanced together.
    let mut psi_a = -super::EULER_GAMMA;
    let mut psi_b = super::digamma_int(n as u64 + 1);
    let mut term = h.powi(n as i32);
    let mut sum = (psi_a + psi_b) * term;
    for k in 1..500u32 {
        let kf = k as f64;
        term *= q / (kf * (kf + n as f64));
        psi_a += 1.0 / kf;
        psi_b += 1.0 / (kf + n as f64);
        let add = (psi_a + psi_b) * term;
        sum += add;
        if add.abs() < 1e-17 * sum.abs() && kf > h {
            break;
        }
    }
    let head = if n == 1 { -1.0 / (PI * h) } else { 0.0 };
    head + log_part - sum / PI
}

/// K₀, K₁ from the logarithmic series (small z only).
fn k_series_int(n: u32, z: f64) -> f64 {
    let h = 0.5 * z;
    let q = h * h;
    let inn = i_series(n as f64, z);
    let mut psi_a = -super::EULER_GAMMA;
    let mut psi_b = super::digamma_int(n as u64 + 1);
    let mut term = h.powi(n as i32);
    let mut sum = (psi_a + psi_b) * term;
    for k in 1..500u32 {
        let kf = k as f64;
        term *= q / (kf * (kf + n as f64));
        psi_a += 1.0 / kf;
        psi_b += 1.0 / (kf + n as f64);
        let add = (psi_a + psi_b) * term;
        sum += add;
        if add.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    if n == 0 {
        -h.ln() * inn + 0.5 * sum
    } else {
        0.5 / h + h.ln() * inn - 0.5 * sum
    }
}

/// Hankel large-argument expansion; returns (J_ν(z), Y_ν(z)).
fn hankel_jy(nu: f64, z: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0f64;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        a *= (mu - odd * odd) / (k as f64 * 8.0 * z);
        if a.abs() >= prev || a == 0.0 {
            break;
        }
        prev = a.abs();
        // signs: P = a0 − a2 + a4 …, Q = a1 − a3 + a5 …
        match k % 4 {
            1 => q += a,
            2 => p -= a,
            3 => q -= a,
            _ => p += a,
        }
        if a.abs() < 1e-17 {
            break;
        }
    }
    let chi = z - (0.5 * nu + 0.25) * PI;
    let amp = (2.0 / (PI * z)).sqrt();
    let (s, c) = chi.sin_cos();
    (amp * (p * c - q * s), amp * (p * s + q * c))
}

/// Steed's continued fraction for K_ν and K_{ν+1}, |ν| ≤ 1/2, z ≳ 2.
fn steed_k(nu: f64, z: f64) -> (f64, f64) {
    let mut b = 2.0 * (1.0 + z);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25 - nu * nu;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..100_000 {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    h *= a1;
    let k_nu = (PI / (2.0 * z)).sqrt() * (-z).exp() / s;
    let k_next = k_nu * (nu + z + 0.5 - h) / z;
    (k_nu, k_next)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn reference_values() {
        // Reference digits from standard tables.
        let cases: &[(BesselKind, f64, f64, f64)] = &[
            (BesselKind::J, 0.0, 1.0, 0.765_197_686_557_966_6),
            (BesselKind::J, 1.0, 1.0, 0.440_050_585_744_933_5),
            (BesselKind::Y, 0.0, 1.0, 0.088_256_964_215_676_96),
            (BesselKind::Y, 1.0, 1.0, -0.781_212_821_300_288_7),
            (BesselKind::K, 0.0, 1.0, 0.421_024_438_240_708_3),
            (BesselKind::K, 1.0, 1.0, 0.601_907_230_197_234_6),
            (BesselKind::J, 0.0, 30.0, -0.086_367_983_581_040_2),
            (BesselKind::Y, 1.0, 30.0, 0.084_425_570_661_747_13),
            (BesselKind::K, 0.0, 5.0, 0.003_691_098_334_042_594),
            (BesselKind::K, 1.0 / 3.0, 3.0, 0.035_305_904_902_162_56),
            (BesselKind::J, 1.0 / 3.0, 20.0, 0.176_060_580_012_937_34),
            (BesselKind::Y, -1.0 / 3.0, 7.0, 0.129_777_131_621_446_27),
        ];
        for &(kind, nu, z, want) in cases {
            let got = bessel(kind, nu, z).unwrap();
            assert!(
                rel(got, want) < 1e-12,
                "{kind:?}{nu}({z}) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn domain_errors() {
        assert!(bessel_y(0.0, 0.0).is_err());
        assert!(bessel_k(1.0, -1.0).is_err());
        assert!(bessel_j(0.5, 1.0).is_err());
        assert_eq!(bessel_j(0.0, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn series_and_asymptotic_agree_in_overlap_window() {
        let mut z = 10.0;
        while z <= 14.0 {
            for nu in [0.0, 1.0, 1.0 / 3.0, -1.0 / 3.0] {
                let (ja, ya) = hankel_jy(nu, z);
                let js = j_series(nu, z);
                assert!((ja - js).abs() < 1e-8, "J{nu}({z})");
                let ys = match nu as i32 {
                    _ if nu == 0.0 => y_series_int(0, z),
                    _ if nu == 1.0 => y_series_int(1, z),
                    _ => (j_series(nu, z) * (nu * PI).cos() - j_series(-nu, z)) / (nu * PI).sin(),
                };
                assert!((ya - ys).abs() < 1e-8, "Y{nu}({z})");
            }
            z += 0.25;
        }
        // At the crossover itself the two branches agree to the target accuracy.
        let (ja, ya) = hankel_jy(0.0, BESSEL_CROSSOVER);
        assert!((ja - j_series(0.0, BESSEL_CROSSOVER)).abs() < 1e-10);
        assert!((ya - y_series_int(0, BESSEL_CROSSOVER)).abs() < 1e-10);
    }

    #[test]
    fn k_series_and_continued_fraction_agree() {
        for &z in &[1.2, 1.6, 2.0, 2.4, 3.0] {
            let (k0, k1) = steed_k(0.0, z);
            assert!(rel(k0, k_series_int(0, z)) < 1e-12, "K0({z})");
            assert!(rel(k1, k_series_int(1, z)) < 1e-12, "K1({z})");
            let v = 1.0 / 3.0;
            let ks = 0.5 * PI * (i_series(-v, z) - i_series(v, z)) / (v * PI).sin();
            assert!(rel(steed_k(v, z).0, ks) < 1e-11, "K1/3({z})");
        }
    }
}
