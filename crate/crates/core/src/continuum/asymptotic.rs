//! Large-time asymptotics of the lattice propagator.
//!
//! Two regimes with two different phase functions: well between the peaks
//! (arcsin form, error ~ t^{-3/2}) and the whole region inside the peaks
//! (arctan form with Airy-type Bessel functions of order ±1/3, error ~ 1/t).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::bessel_j;
#[cfg(feature = "experimental")]
use crate::numerics::bessel_k;
use crate::params::LatticeParams;
use crate::propagator::PropagatorPair;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Zone {
    BetweenPeaks,
    Airy,
    Forbidden,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticZone {
    pub zone: Zone,
    /// Phase of the formula that applies; `None` in the forbidden zone.
    pub theta: Option<f64>,
}

/// How far inside the peaks, and how late, the between-peaks formula is
/// trusted. The true constants are not known; these are conservative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticGate {
    pub margin: f64,
    pub min_mass_time: f64,
}

impl Default for AsymptoticGate {
    fn default() -> Self {
        AsymptoticGate {
            margin: 0.05,
            min_mass_time: 10.0,
        }
    }
}

fn peak_speed(mu: f64) -> f64 {
    1.0 / (1.0 + mu * mu).sqrt()
}

fn check_point(x: f64, t: f64, params: &LatticeParams) -> Result<(i64, i64)> {
    params.validate_massive()?;
    let xs = params.steps(x)?;
    let ts = params.steps(t)?;
    if ts <= 0 {
        return Err(Error::domain(format!("asymptotics need t > 0, got {t}")));
    }
    Ok((xs, ts))
}

fn i_pow(n: i64) -> Complex64 {
    match n.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

fn between_peaks_theta(x: f64, t: f64, params: &LatticeParams) -> f64 {
    let mu = params.mu();
    let r = (t * t - x * x).sqrt();
    let first = (mu * t / ((1.0 + mu * mu).sqrt() * r)).min(1.0).asin();
    let second = (mu * x / r).asin();
    (t * first - x * second) / params.eps
}

fn airy_theta(x: f64, t: f64, params: &LatticeParams) -> f64 {
    let mu = params.mu();
    let r = (t * t - (1.0 + mu * mu) * x * x).max(0.0).sqrt();
    let second = if x == 0.0 {
        0.0
    } else {
        x * (r / (mu * x)).atan()
    };
    (t * (r / (mu * t)).atan() - second) / params.eps
}

fn in_between_peaks(x: f64, t: f64, params: &LatticeParams, gate: &AsymptoticGate) -> bool {
    t > 0.0
        && x.abs() / t < peak_speed(params.mu()) - gate.margin
        && params.mu() <= 1.0
        && params.m * t > gate.min_mass_time
}

fn in_airy(x: f64, t: f64, params: &LatticeParams) -> bool {
    t > 0.0 && x != 0.0 && x.abs() / t < peak_speed(params.mu())
}

/// Which asymptotic regime `(x,t)` belongs to, preferring the sharper
/// between-peaks formula when both apply.
pub fn classify(x: f64, t: f64, params: &LatticeParams, gate: &AsymptoticGate) -> AsymptoticZone {
    if in_between_peaks(x, t, params, gate) {
        AsymptoticZone {
            zone: Zone::BetweenPeaks,
            theta: Some(between_peaks_theta(x, t, params)),
        }
    } else if in_airy(x, t, params) {
        AsymptoticZone {
            zone: Zone::Airy,
            theta: Some(airy_theta(x, t, params)),
        }
    } else {
        AsymptoticZone {
            zone: Zone::Forbidden,
            theta: None,
        }
    }
}

/// Oscillatory approximation well inside the peaks, default gate.
pub fn asymptotic_between_peaks(x: f64, t: f64, params: &LatticeParams) -> Result<PropagatorPair> {
    asymptotic_between_peaks_with(x, t, params, &AsymptoticGate::default())
}

pub fn asymptotic_between_peaks_with(
    x: f64,
    t: f64,
    params: &LatticeParams,
    gate: &AsymptoticGate,
) -> Result<PropagatorPair> {
    let (xs, ts) = check_point(x, t, params)?;
    if !in_between_peaks(x, t, params, gate) {
        return Err(Error::domain(format!(
            "({x}, {t}) is outside the between-peaks zone for m={}, eps={}",
            params.m, params.eps
        )));
    }
    let mu = params.mu();
    let theta = between_peaks_theta(x, t, params);
    let amp =
        params.eps * (2.0 * params.m / PI).sqrt() / (t * t - (1.0 + mu * mu) * x * x).powf(0.25);
    let skew = ((t + x) / (t - x)).sqrt();
    let (s, c) = (theta + PI / 4.0).sin_cos();
    Ok(if (xs + ts).rem_euclid(2) == 1 {
        PropagatorPair::new(
            Complex64::new(amp * s, 0.0),
            Complex64::new(0.0, -amp * skew * s),
        )
    } else {
        PropagatorPair::new(
            Complex64::new(0.0, amp * c),
            Complex64::new(amp * skew * c, 0.0),
        )
    })
}

/// Approximation valid up to the peaks, in terms of `J_{±1/3}`.
pub fn asymptotic_airy(x: f64, t: f64, params: &LatticeParams) -> Result<PropagatorPair> {
    let (xs, ts) = check_point(x, t, params)?;
    if !in_airy(x, t, params) {
        return Err(Error::domain(format!(
            "({x}, {t}) is outside 0 < |x/t| < 1/sqrt(1+m²ε²)"
        )));
    }
    let mu = params.mu();
    let theta = airy_theta(x, t, params);
    let airy = bessel_j(1.0 / 3.0, theta)? + bessel_j(-1.0 / 3.0, theta)?;
    let amp = params.eps * params.m.sqrt() * theta.sqrt() * airy
        / (3f64.sqrt() * (t * t - (1.0 + mu * mu) * x * x).powf(0.25));
    let phase = xs.abs() - ts;
    let skew = ((t + x) / (t - x)).sqrt();
    Ok(PropagatorPair::new(
        i_pow(phase + 1) * amp,
        i_pow(phase) * (amp * skew),
    ))
}

/// Conjectured exponentially small behaviour between the peak and the light
/// cone, in terms of `K_{1/3}`. Unproven; kept out of every check.
#[cfg(feature = "experimental")]
pub fn asymptotic_outside_peaks(x: f64, t: f64, params: &LatticeParams) -> Result<PropagatorPair> {
    let (xs, ts) = check_point(x, t, params)?;
    let mu = params.mu();
    let v = x.abs() / t;
    if !(v > peak_speed(mu) && v < 1.0) {
        return Err(Error::domain(format!(
            "({x}, {t}) is outside 1/sqrt(1+m²ε²) < |x/t| < 1"
        )));
    }
    let r = ((1.0 + mu * mu) * x * x - t * t).sqrt();
    let theta = (x.abs() * (r / (mu * x.abs())).atanh() - t * (r / (mu * t)).atanh()) / params.eps;
    let amp =
        params.eps * params.m.sqrt() * theta.sqrt() * bessel_k(1.0 / 3.0, theta)? / (PI * r.sqrt());
    let phase = xs.abs() - ts;
    let skew = ((t + x) / (t - x)).sqrt();
    Ok(PropagatorPair::new(
        i_pow(phase + 1) * amp,
        i_pow(phase) * (amp * skew),
    ))
}
