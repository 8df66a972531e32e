//! The infinite-lattice propagator `Ã₁(x,t), Ã₂(x,t)`.
//!
//! Three independent evaluation routes are provided: the Fourier integral
//! (quadrature), the hypergeometric closed form, and marching the lattice
//! Dirac equation from the `t = 0` row. The massless and heavy limits have
//! their own closed forms.

mod dirac;
mod explicit;
mod identities;
mod rational;
mod special;

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{periodic_trapezoid, QuadratureSpec};
use crate::params::LatticeParams;

pub use dirac::{marched_origin_a2, propagate_dp, propagate_dp_rows};
pub use explicit::propagate_hypergeometric;
pub use identities::{
    charge_conservation, identity_suite, ChargeReport, IdentityCheck, IdentityReport,
    PropagatorTable,
};
pub use rational::{rational_basis_fit, unit_mass_basis, BasisFit};
pub use special::{massless_heavy, Limit};

/// The pair `(Ã₁, Ã₂)` at one lattice point.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PropagatorPair {
    pub a1: Complex64,
    pub a2: Complex64,
}

impl PropagatorPair {
    pub fn new(a1: Complex64, a2: Complex64) -> Self {
        PropagatorPair { a1, a2 }
    }

    /// Component `k ∈ {1, 2}`.
    pub fn get(&self, k: u8) -> Complex64 {
        match k {
            1 => self.a1,
            2 => self.a2,
            _ => panic!("propagator component must be 1 or 2, got {k}"),
        }
    }

    /// Expected charge `(|Ã₁|² + |Ã₂|²)/2` of the length-ε interval.
    pub fn charge(&self) -> f64 {
        0.5 * (self.a1.norm_sqr() + self.a2.norm_sqr())
    }

    pub fn max_diff(&self, other: &PropagatorPair) -> f64 {
        (self.a1 - other.a1).norm().max((self.a2 - other.a2).norm())
    }
}

/// Evaluation route for grid requests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    Quadrature,
    Hypergeometric,
    Dp,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Quadrature => "quadrature",
            Method::Hypergeometric => "hypergeometric",
            Method::Dp => "dp",
        }
    }
}

/// A row of lattice points `x ∈ [x_min, x_max]` at one time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridRequest {
    pub x_min: f64,
    pub x_max: f64,
    pub t: f64,
    pub params: LatticeParams,
    pub method: Method,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridEntry {
    pub x: f64,
    pub t: f64,
    pub value: PropagatorPair,
}

/// Evaluates a grid request with the selected method, in ascending x.
pub fn propagate_grid(req: &GridRequest) -> Result<Vec<GridEntry>> {
    let p = &req.params;
    p.validate_massive()?;
    let lo = p.steps(req.x_min)?;
    let hi = p.steps(req.x_max)?;
    let ts = p.steps(req.t)?;
    if lo > hi {
        return Err(Error::domain(format!(
            "empty x range [{}, {}]",
            req.x_min, req.x_max
        )));
    }
    let values: Vec<PropagatorPair> = match req.method {
        Method::Dp => propagate_dp(req)?,
        Method::Quadrature => (lo..=hi)
            .into_par_iter()
            .map(|x| propagate_quadrature(x as f64 * p.eps, req.t, p))
            .collect::<Result<_>>()?,
        Method::Hypergeometric => (lo..=hi)
            .into_par_iter()
            .map(|x| propagate_hypergeometric(x as f64 * p.eps, req.t, p))
            .collect::<Result<_>>()?,
    };
    Ok((lo..=hi)
        .zip(values)
        .map(|(x, value)| GridEntry {
            x: x as f64 * p.eps,
            t: ts as f64 * p.eps,
            value,
        })
        .collect())
}

/// Lattice dispersion `ω_p = (1/ε)·arccos(cos pε / √(1+m²ε²))`.
pub fn dispersion(p: f64, params: &LatticeParams) -> f64 {
    let mu = params.mu();
    let c = ((p * params.eps).cos() / (1.0 + mu * mu).sqrt()).clamp(-1.0, 1.0);
    c.acos() / params.eps
}

/// `Ã_k` is real when `(x+t)/ε + k` is even and imaginary otherwise.
pub fn is_real_class(x_steps: i64, t_steps: i64, k: u8) -> bool {
    (x_steps + t_steps + k as i64).rem_euclid(2) == 0
}

fn project(v: Complex64, real: bool) -> Complex64 {
    if real {
        Complex64::new(v.re, 0.0)
    } else {
        Complex64::new(0.0, v.im)
    }
}

/// Periodic node-clustering substitution `p = φ(u)`, `φ′(u) = (8/3)sin⁴u`,
/// applied in the scaled variable `pε`. It concentrates nodes near `pε = 0, ±π`,
/// where the integrands develop near-singularities of width `mε` when `mε` is small.
fn cluster(u: f64) -> (f64, f64) {
    let s = u.sin();
    let phi = u - (2.0 / 3.0) * (2.0 * u).sin() + (4.0 * u).sin() / 12.0;
    (phi, (8.0 / 3.0) * s * s * s * s)
}

fn quadrature_spec_for(x_steps: i64, t_steps: i64, base: &QuadratureSpec) -> QuadratureSpec {
    // Start above the oscillation frequency so the first comparisons are not
    // between two aliased estimates.
    let freq = 4 * (x_steps.unsigned_abs() + t_steps.unsigned_abs() + 1) as usize;
    QuadratureSpec {
        initial_nodes: base.initial_nodes.max(freq.next_power_of_two()),
        ..*base
    }
}

/// Both Fourier integrals, with the sign rule for negative time applied
/// literally (minus for `t < 0` and `(x+t)/ε + k` even). No projection.
pub fn fourier_integral_signed(
    x: f64,
    t: f64,
    params: &LatticeParams,
    spec: &QuadratureSpec,
) -> Result<PropagatorPair> {
    params.validate_massive()?;
    let xs = params.steps(x)?;
    let ts = params.steps(t)?;
    let eps = params.eps;
    let mu = params.mu();
    let spec = quadrature_spec_for(xs, ts, spec);
    let (xf, tf) = (xs as f64 * eps, ts as f64 * eps);
    // Integrate over u with p = φ(uε)/ε, dp = φ′(uε)du.
    let phase = move |u: f64| {
        let (phi, dphi) = cluster(u * eps);
        let p = phi / eps;
        let s = phi.sin();
        let root = (mu * mu + s * s).sqrt();
        let w = dispersion(p, params);
        (Complex64::new(0.0, p * xf - w * tf).exp() * dphi, s, root)
    };
    let a1 = periodic_trapezoid(
        |u| {
            let (e, _, root) = phase(u);
            e * Complex64::new(0.0, params.m * eps * eps / (2.0 * PI)) / root
        },
        eps,
        &spec,
    )?;
    let a2 = periodic_trapezoid(
        |u| {
            let (e, s, root) = phase(u);
            e * (eps / (2.0 * PI) * (1.0 + s / root))
        },
        eps,
        &spec,
    )?;
    let mut pair = PropagatorPair::new(a1, a2);
    if ts < 0 {
        if is_real_class(xs, ts, 1) {
            pair.a1 = -pair.a1;
        }
        if is_real_class(xs, ts, 2) {
            pair.a2 = -pair.a2;
        }
    }
    Ok(pair)
}

/// Quadrature evaluation with the default quadrature controls.
pub fn propagate_quadrature(x: f64, t: f64, params: &LatticeParams) -> Result<PropagatorPair> {
    propagate_quadrature_with(x, t, params, &QuadratureSpec::default())
}

/// Canonical quadrature path: the integral is evaluated for `t ≥ 0` only,
/// projected onto the known reality class, and negative times are obtained
/// from `Ã₁(x,t) = Ã₁(x,−t)` and `Ã₂(x,t) = −Ã₂(−x,−t)`.
pub fn propagate_quadrature_with(
    x: f64,
    t: f64,
    params: &LatticeParams,
    spec: &QuadratureSpec,
) -> Result<PropagatorPair> {
    params.validate_massive()?;
    let xs = params.steps(x)?;
    let ts = params.steps(t)?;
    if ts < 0 {
        let a1 = propagate_quadrature_with(x, -t, params, spec)?.a1;
        let a2 = propagate_quadrature_with(-x, -t, params, spec)?.a2;
        return Ok(PropagatorPair::new(a1, -a2));
    }
    let raw = fourier_integral_signed(x, t, params, spec)?;
    Ok(PropagatorPair::new(
        project(raw.a1, is_real_class(xs, ts, 1)),
        project(raw.a2, is_real_class(xs, ts, 2)),
    ))
}

/// Expected charge `(|Ã₁|² + |Ã₂|²)/2` at a lattice point.
pub fn expected_charge(x: f64, t: f64, params: &LatticeParams) -> Result<f64> {
    Ok(propagate_quadrature(x, t, params)?.charge())
}
