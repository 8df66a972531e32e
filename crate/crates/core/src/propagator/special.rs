use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::PropagatorPair;
use crate::error::{Error, Result};

/// The two closed-form mass limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Limit {
    /// `m = 0`: `Ã₁ = 0`; `Ã₂ = ±1` on the diagonal `x = t`, `2iε/π(x−t)` for
    /// `(x+t)/ε` odd, zero otherwise.
    Massless,
    /// `m → ∞`: `Ã_k = δ_{x0}(−i)^{|t/ε+k−1|−1}`.
    Heavy,
}

pub fn massless_heavy(x: f64, t: f64, which: Limit, eps: f64) -> Result<PropagatorPair> {
    if !(eps > 0.0) {
        return Err(Error::domain("lattice step must be positive"));
    }
    let snap = |c: f64| -> Result<i64> {
        let s = c / eps;
        let r = s.round();
        if (s - r).abs() > 1e-9 * (1.0 + r.abs()) {
            return Err(Error::domain(format!("{c} is not a multiple of {eps}")));
        }
        Ok(r as i64)
    };
    let (xs, ts) = (snap(x)?, snap(t)?);
    let zero = Complex64::new(0.0, 0.0);
    Ok(match which {
        Limit::Massless => {
            let a2 = if xs == ts {
                Complex64::new(if ts >= 0 { 1.0 } else { -1.0 }, 0.0)
            } else if (xs + ts).rem_euclid(2) == 1 {
                Complex64::new(0.0, 2.0 / (PI * (xs - ts) as f64))
            } else {
                zero
            };
            PropagatorPair::new(zero, a2)
        }
        Limit::Heavy => {
            if xs != 0 {
                PropagatorPair::default()
            } else {
                let comp = |k: i64| Complex64::new(0.0, -1.0).powi(((ts + k - 1).abs() - 1) as i32);
                PropagatorPair::new(comp(1), comp(2))
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_values() {
        let v = massless_heavy(0.3, 0.3, Limit::Massless, 0.1).unwrap();
        assert_eq!(v.a2, Complex64::new(1.0, 0.0));
        let v = massless_heavy(3.0, 0.0, Limit::Massless, 1.0).unwrap();
        assert!((v.a2 - Complex64::new(0.0, 2.0 / (3.0 * PI))).norm() < 1e-15);
        let v = massless_heavy(0.0, 2.0, Limit::Heavy, 1.0).unwrap();
        assert!((v.a1 - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        let v = massless_heavy(0.0, 0.0, Limit::Heavy, 1.0).unwrap();
        assert_eq!(v.a2, Complex64::new(1.0, 0.0));
        let v = massless_heavy(-2.0, -2.0, Limit::Massless, 1.0).unwrap();
        assert_eq!(v.a2, Complex64::new(-1.0, 0.0));
    }
}
