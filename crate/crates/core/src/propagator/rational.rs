//! Recovery of the rational coordinates of unit-parameter propagator values
//! in the basis `{G, L′}` (Gauss constant, inverse lemniscate constant).

use serde::{Deserialize, Serialize};

use super::propagate_quadrature;
use crate::error::Result;
use crate::numerics::{gauss_constant, inverse_lemniscate};
use crate::params::LatticeParams;

/// `value ≈ (g·G + l·L′) / denominator` with integer coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisFit {
    pub denominator: i64,
    pub g: i64,
    pub l: i64,
}

impl BasisFit {
    pub fn eval(&self) -> f64 {
        (self.g as f64 * gauss_constant() + self.l as f64 * inverse_lemniscate())
            / self.denominator as f64
    }
}

/// Smallest-denominator integer relation `q·value = g·G + l·L′` with
/// `|q·value − g·G − l·L′| ≤ tol·q`.
///
/// For each candidate denominator the `g` coefficient is scanned over a
/// bounded range and `l` is obtained by rounding, which is an exhaustive
/// search over all pairs with `|g| ≤ max_coeff`.
pub fn rational_basis_fit(
    value: f64,
    max_denominator: i64,
    max_coeff: i64,
    tol: f64,
) -> Option<BasisFit> {
    let g_const = gauss_constant();
    let l_const = inverse_lemniscate();
    for q in 1..=max_denominator {
        let target = q as f64 * value;
        let mut best: Option<(f64, BasisFit)> = None;
        for g in -max_coeff..=max_coeff {
            let l = ((target - g as f64 * g_const) / l_const).round();
            if l.abs() > max_coeff as f64 {
                continue;
            }
            let r = (target - g as f64 * g_const - l * l_const).abs();
            if r <= tol * q as f64 && best.map_or(true, |(b, _)| r < b) {
                best = Some((
                    r,
                    BasisFit {
                        denominator: q,
                        g,
                        l: l as i64,
                    },
                ));
            }
        }
        if let Some((_, fit)) = best {
            return Some(fit);
        }
    }
    None
}

/// Rational coordinates of `2^{|t|/2}·Im Ã_k(x,t,1,1)` and the (integer)
/// value of `2^{|t|/2}·Re Ã_k(x,t,1,1)`.
pub fn unit_mass_basis(
    x: i64,
    t: i64,
    k: u8,
    max_denominator: i64,
) -> Result<(f64, Option<BasisFit>)> {
    let p = LatticeParams::new(1.0, 1.0);
    let v = propagate_quadrature(x as f64, t as f64, &p)?.get(k);
    let scale = 2f64.powf(t.abs() as f64 / 2.0);
    Ok((
        v.re * scale,
        rational_basis_fit(v.im * scale, max_denominator, 2000, 1e-10),
    ))
}
