use num_complex::Complex64;

use super::{is_real_class, PropagatorPair};
use crate::error::Result;
use crate::numerics::{gen_binomial, hyp2f1};
use crate::params::LatticeParams;

/// Hypergeometric closed form of `Ã₁, Ã₂`:
///
/// `Ã₁ = ±i(−imε)^{(t−|x|)/ε}(1+m²ε²)^{−t/2ε} C((t+|x|)/2ε − 1/2, |x|/ε)
///        ₂F₁(1/2+(|x|−t)/2ε, 1/2+(|x|−t)/2ε; 1+|x|/ε; −1/m²ε²)`,
///
/// `Ã₂ = ±(−imε)^{(t−|x|)/ε}(1+m²ε²)^{−t/2ε} C((t+|x|)/2ε − 1 + θ(x), |x|/ε)
///        ₂F₁((|x|−t)/2ε, 1+(|x|−t)/2ε; 1+|x|/ε; −1/m²ε²)`,
///
/// with `C` the generalized binomial, `θ(x) = 1` for `x ≥ 0` and `0` otherwise,
/// and the minus sign for `t < 0` with `(x+t)/ε + k` even.
pub fn propagate_hypergeometric(x: f64, t: f64, params: &LatticeParams) -> Result<PropagatorPair> {
    params.validate_massive()?;
    let xs = params.steps(x)?;
    let ts = params.steps(t)?;
    let mu = params.mu();
    let ax = xs.abs();
    let (axf, tf) = (ax as f64, ts as f64);
    let z = -1.0 / (mu * mu);
    let prefactor =
        Complex64::new(0.0, -mu).powi((ts - ax) as i32) * (1.0 + mu * mu).powf(-tf / 2.0);
    let step = if xs >= 0 { 1.0 } else { 0.0 };

    let a = 0.5 + (axf - tf) / 2.0;
    let f1 = hyp2f1(a, a, 1.0 + axf, z)?;
    let b1 = gen_binomial((tf + axf) / 2.0 - 0.5, ax as u64);
    let mut a1 = Complex64::i() * prefactor * (b1 * f1);

    let a = (axf - tf) / 2.0;
    let f2 = hyp2f1(a, 1.0 + a, 1.0 + axf, z)?;
    let b2 = gen_binomial((tf + axf) / 2.0 - 1.0 + step, ax as u64);
    let mut a2 = prefactor * (b2 * f2);

    if ts < 0 {
        if is_real_class(xs, ts, 1) {
            a1 = -a1;
        }
        if is_real_class(xs, ts, 2) {
            a2 = -a2;
        }
    }
    Ok(PropagatorPair::new(a1, a2))
}
