use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_TERMS: usize = 2_000_000;

/// Gauss hypergeometric function ₂F₁(a,b;c;z) for real arguments and z < 1.
///
/// Negative arguments go through the Pfaff transformation
/// ₂F₁(a,b;c;z) = (1−z)^{−a} ₂F₁(a,c−b;c;z/(z−1)), whose argument lies in
/// (0,1), so only a forward series on [0,1) is ever summed.
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if c <= 0.0 && c == c.floor() {
        return Err(Error::domain(format!(
            "₂F₁ lower parameter c={c} is a pole"
        )));
    }
    if !(z < 1.0) || !z.is_finite() {
        return Err(Error::domain(format!("₂F₁ argument must be < 1, got {z}")));
    }
    if z < 0.0 {
        let w = z / (z - 1.0);
        let s = hyp2f1_series(a, c - b, c, w)?;
        Ok((1.0 - z).powf(-a) * s)
    } else {
        hyp2f1_series(a, b, c, z)
    }
}

/// Direct Gauss series, valid for |z| < 1.
pub fn hyp2f1_series(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if c <= 0.0 && c == c.floor() {
        return Err(Error::domain(format!(
            "₂F₁ lower parameter c={c} is a pole"
        )));
    }
    if !(z.abs() < 1.0) {
        return Err(Error::domain(format!("₂F₁ series needs |z| < 1, got {z}")));
    }
    let mut sum = 1.0;
    let mut term = 1.0;
    let mut small_run = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        if term == 0.0 {
            return Ok(sum);
        }
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            small_run += 1;
            if small_run >= 3 {
                return Ok(sum);
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::numeric(
        format!("₂F₁({a},{b};{c};{z}) series did not converge in {MAX_TERMS} terms"),
        Complex64::new(sum, 0.0),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn trivial_values() {
        assert_eq!(hyp2f1(0.0, 1.0, 1.0, -7.3).unwrap(), 1.0);
        assert_eq!(hyp2f1(0.5, 0.5, 1.0, 0.0).unwrap(), 1.0);
        assert!(hyp2f1(1.0, 1.0, -2.0, 0.3).is_err());
        assert!(hyp2f1(1.0, 1.0, 2.0, 1.0).is_err());
    }

    #[test]
    fn elementary_closed_forms() {
        // ₂F₁(1,1;2;z) = −ln(1−z)/z
        for &z in &[-30.0, -3.0, -0.5, 0.2, 0.9] {
            let v = hyp2f1(1.0, 1.0, 2.0, z).unwrap();
            let exact = -(1.0 - z).ln() / z;
            assert!((v / exact - 1.0).abs() < 1e-12, "z={z}");
        }
        // ₂F₁(a,b;b;z) = (1−z)^{−a}
        for &z in &[-9.0, -0.7, 0.4] {
            let v = hyp2f1(0.3, 1.7, 1.7, z).unwrap();
            assert!((v / (1.0 - z).powf(-0.3) - 1.0).abs() < 1e-12);
        }
        // ₂F₁(1/2,1/2;3/2;z²) = arcsin(z)/z
        let z: f64 = 0.6;
        let v = hyp2f1(0.5, 0.5, 1.5, z * z).unwrap();
        assert!((v - z.asin() / z).abs() < 1e-13);
    }

    #[test]
    fn pfaff_matches_direct_series_inside_unit_disk() {
        for &z in &[-0.9, -0.5, -0.1] {
            let a = hyp2f1(0.3, -1.2, 2.5, z).unwrap();
            let b = hyp2f1_series(0.3, -1.2, 2.5, z).unwrap();
            assert!((a - b).abs() < 1e-13 * b.abs().max(1.0));
        }
    }

    proptest! {
        #[test]
        fn at_zero_is_one(a in -5.0f64..5.0, b in -5.0f64..5.0, c in 0.1f64..6.0) {
            prop_assert_eq!(hyp2f1(a, b, c, 0.0).unwrap(), 1.0);
        }
    }
}
