use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Controls for [`periodic_trapezoid`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub initial_nodes: usize,
    pub rel_tol: f64,
    pub max_doublings: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            initial_nodes: 64,
            rel_tol: 1e-11,
            max_doublings: 18,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.initial_nodes == 0 || self.max_doublings == 0 {
            return Err(Error::domain(
                "quadrature needs positive node count and doublings",
            ));
        }
        if !(self.rel_tol >= 100.0 * f64::EPSILON) {
            return Err(Error::domain(format!(
                "rel_tol {} is below 100 machine epsilons",
                self.rel_tol
            )));
        }
        Ok(())
    }
}

/// Trapezoid rule over one period `[−π/ε, π/ε]` of a smooth periodic integrand.
///
/// The node count doubles (reusing previous nodes) until two successive
/// estimates differ by at most `rel_tol` times the larger of the estimate's
/// modulus and the integral of `|f|`. The second scale keeps integrals that
/// cancel to (near) zero from demanding an absolute accuracy below roundoff.
pub fn periodic_trapezoid<F>(f: F, eps: f64, spec: &QuadratureSpec) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    spec.validate()?;
    if !(eps > 0.0) {
        return Err(Error::domain("period parameter must be positive"));
    }
    let a = -PI / eps;
    let len = 2.0 * PI / eps;
    let mut n = spec.initial_nodes;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    for j in 0..n {
        let v = f(a + len * j as f64 / n as f64);
        sum += v;
        abs_sum += v.norm();
    }
    let mut estimate = sum * (len / n as f64);
    for _ in 0..spec.max_doublings {
        // New nodes sit at the midpoints of the current grid.
        for j in 0..n {
            let v = f(a + len * (j as f64 + 0.5) / n as f64);
            sum += v;
            abs_sum += v.norm();
        }
        n *= 2;
        let h = len / n as f64;
        let next = sum * h;
        let scale = next.norm().max(abs_sum * h);
        let diff = (next - estimate).norm();
        estimate = next;
        if !estimate.re.is_finite() || !estimate.im.is_finite() {
            return Err(Error::numeric("non-finite quadrature estimate", estimate));
        }
        if diff <= spec.rel_tol * scale {
            return Ok(estimate);
        }
    }
    Err(Error::numeric(
        format!(
            "trapezoid rule not converged after {} doublings",
            spec.max_doublings
        ),
        estimate,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_and_pure_oscillations() {
        let spec = QuadratureSpec::default();
        let one = periodic_trapezoid(|_| Complex64::new(1.0, 0.0), 1.0, &spec).unwrap();
        assert!((one.re - 2.0 * PI).abs() < 1e-13 && one.im.abs() < 1e-13);
        let osc = periodic_trapezoid(|p| Complex64::new(0.0, p).exp(), 1.0, &spec).unwrap();
        assert!(osc.norm() < 1e-13);
        let half = periodic_trapezoid(|_| Complex64::new(1.0, 0.0), 2.0, &spec).unwrap();
        assert!((half.re - PI).abs() < 1e-13);
    }

    #[test]
    fn analytic_integrand_converges_spectrally() {
        // ∫ exp(cos p) dp over a period = 2π I₀(1)
        let exact = 2.0 * PI * 1.266_065_877_752_008_4;
        let f = |p: f64| Complex64::new(p.cos().exp(), 0.0);
        let errs: Vec<f64> = [4usize, 8, 16]
            .iter()
            .map(|&n| {
                let h = 2.0 * PI / n as f64;
                let s: f64 = (0..n).map(|j| f(-PI + h * j as f64).re).sum();
                (s * h - exact).abs()
            })
            .collect();
        assert!(errs[0] / errs[1] >= 10.0);
        assert!(errs[2] < 1e-12);
        let v = periodic_trapezoid(f, 1.0, &QuadratureSpec::default()).unwrap();
        assert!((v.re - exact).abs() < 1e-12);
    }

    #[test]
    fn failure_carries_estimate() {
        let spec = QuadratureSpec {
            initial_nodes: 4,
            rel_tol: 1e-13,
            max_doublings: 2,
        };
        let r = periodic_trapezoid(
            |p| Complex64::new(1.0 / (1.0001 - p.cos()), 0.0),
            1.0,
            &spec,
        );
        match r {
            Err(Error::Numeric { partial, .. }) => assert!(partial.re > 0.0),
            other => panic!("expected numeric error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_spec() {
        let spec = QuadratureSpec {
            initial_nodes: 64,
            rel_tol: 1e-18,
            max_doublings: 3,
        };
        assert!(periodic_trapezoid(|_| Complex64::new(1.0, 0.0), 1.0, &spec).is_err());
    }
}
