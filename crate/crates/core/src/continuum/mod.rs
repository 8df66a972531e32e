//! The continuum spin-1/2 Feynman propagator and how the lattice approaches it.

mod asymptotic;

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{bessel_j, bessel_k, bessel_y};
use crate::params::LatticeParams;
use crate::propagator::{massless_heavy, propagate_quadrature, Limit, PropagatorPair};

#[cfg(feature = "experimental")]
pub use asymptotic::asymptotic_outside_peaks;
pub use asymptotic::{
    asymptotic_airy, asymptotic_between_peaks, asymptotic_between_peaks_with, classify,
    AsymptoticGate, AsymptoticZone, Zone,
};

/// Points closer than this many lattice steps to the light cone are refused
/// by the convergence experiments.
pub const LIGHT_CONE_BAND: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContinuumPoint {
    pub x: f64,
    pub t: f64,
    pub m: f64,
}

impl ContinuumPoint {
    pub fn new(x: f64, t: f64, m: f64) -> Self {
        ContinuumPoint { x, t, m }
    }

    /// Proper-time distance `√|t²−x²|`.
    pub fn s(&self) -> f64 {
        (self.t * self.t - self.x * self.x).abs().sqrt()
    }

    /// Scale of the continuum-limit error bound: blows up at the light cone
    /// and grows with mass and distance.
    pub fn delta(&self) -> f64 {
        1.0 / (self.x.abs() - self.t.abs()).abs() + self.m * self.m * (self.x.abs() + self.t.abs())
    }

    pub fn inside_cone(&self) -> bool {
        self.x.abs() < self.t.abs()
    }
}

/// 2×2 matrix, row-major.
pub type Matrix2 = [[Complex64; 2]; 2];

/// The Feynman propagator `G^F(x,t,m)`; the light cone is excluded.
pub fn feynman_continuum(pt: &ContinuumPoint) -> Result<Matrix2> {
    let ContinuumPoint { x, t, m } = *pt;
    if !(m >= 0.0) || !x.is_finite() || !t.is_finite() {
        return Err(Error::domain(format!("bad continuum point {pt:?}")));
    }
    if x.abs() == t.abs() {
        return Err(Error::domain(format!("({x}, {t}) lies on the light cone")));
    }
    let zero = Complex64::new(0.0, 0.0);
    if m == 0.0 {
        return Ok([
            [zero, Complex64::new(0.0, 1.0 / (2.0 * PI * (x - t)))],
            [Complex64::new(0.0, 1.0 / (2.0 * PI * (x + t))), zero],
        ]);
    }
    let s = pt.s();
    let ms = m * s;
    if pt.inside_cone() {
        let h0 = Complex64::new(bessel_j(0.0, ms)?, -bessel_y(0.0, ms)?);
        let h1 = Complex64::new(bessel_j(1.0, ms)?, -bessel_y(1.0, ms)?);
        let c = m / 4.0;
        Ok([
            [h0 * c, -h1 * (c * (t + x) / s)],
            [h1 * (c * (t - x) / s), h0 * c],
        ])
    } else {
        let k0 = bessel_k(0.0, ms)?;
        let k1 = bessel_k(1.0, ms)?;
        let c = Complex64::new(0.0, m / (2.0 * PI));
        Ok([
            [c * k0, c * (k1 * (t + x) / s)],
            [c * (k1 * (x - t) / s), c * k0],
        ])
    }
}

/// Continuum charge density `|G₁₁|² + |G₁₂|²`.
pub fn continuum_density(pt: &ContinuumPoint) -> Result<f64> {
    let g = feynman_continuum(pt)?;
    Ok(g[0][0].norm_sqr() + g[0][1].norm_sqr())
}

fn ceil_snapped(v: f64) -> f64 {
    let r = v.round();
    if (v - r).abs() <= 1e-9 * (1.0 + r.abs()) {
        r
    } else {
        v.ceil()
    }
}

/// Approximates a point of the plane by the lattice point `(2ε⌈x/2ε⌉, 2ε⌈t/2ε⌉)`.
///
/// Inputs within rounding noise of the lattice are snapped rather than
/// pushed a whole cell up.
pub fn lattice_point_of(x: f64, t: f64, eps: f64) -> Result<(f64, f64)> {
    if !(eps > 0.0) {
        return Err(Error::domain(format!(
            "lattice step must be positive, got {eps}"
        )));
    }
    let step = 2.0 * eps;
    Ok((step * ceil_snapped(x / step), step * ceil_snapped(t / step)))
}

fn lattice_pair(x: f64, t: f64, params: &LatticeParams) -> Result<PropagatorPair> {
    if params.m == 0.0 {
        massless_heavy(x, t, Limit::Massless, params.eps)
    } else {
        propagate_quadrature(x, t, params)
    }
}

/// One lattice step size of a convergence experiment.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceRow {
    pub eps: f64,
    /// `Ã₁(x_ε+ε)`, `Ã₁(x_ε)`, `Ã₂(x_ε+ε)`, `Ã₂(x_ε)`, all divided by 4ε.
    pub lattice: [Complex64; 4],
    /// `Re G₁₁`, `i Im G₁₁`, `i Im G₁₂`, `Re G₁₂`.
    pub target: [Complex64; 4],
    pub error: f64,
    pub density_lattice: f64,
    pub density_continuum: f64,
    pub density_error: f64,
    /// Error at the previous (coarser) step divided by this one.
    pub ratio: Option<f64>,
}

/// Normalized lattice values and their continuum targets at one `ε`.
///
/// Targets are taken at `(x,t)` itself. The shifted lattice point `x_ε+ε` is
/// a whole step away from it, which is what makes the error first order; at
/// the lattice points themselves the error is second order.
pub fn convergence_row(pt: &ContinuumPoint, eps: f64) -> Result<ConvergenceRow> {
    let params = LatticeParams::new(pt.m, eps);
    params.validate()?;
    let (xe, te) = lattice_point_of(pt.x, pt.t, eps)?;
    let on = lattice_pair(xe, te, &params)?;
    let off = lattice_pair(xe + eps, te, &params)?;
    let g = feynman_continuum(pt)?;
    let n = 1.0 / (4.0 * eps);
    let lattice = [off.a1 * n, on.a1 * n, off.a2 * n, on.a2 * n];
    let re = |z: Complex64| Complex64::new(z.re, 0.0);
    let im = |z: Complex64| Complex64::new(0.0, z.im);
    let target = [re(g[0][0]), im(g[0][0]), im(g[0][1]), re(g[0][1])];
    let error = lattice
        .iter()
        .zip(&target)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    let density_lattice = (on.charge() + off.charge()) / (8.0 * eps * eps);
    let density_continuum = g[0][0].norm_sqr() + g[0][1].norm_sqr();
    Ok(ConvergenceRow {
        eps,
        lattice,
        target,
        error,
        density_lattice,
        density_continuum,
        density_error: (density_lattice - density_continuum).abs(),
        ratio: None,
    })
}

/// Runs [`convergence_row`] over a decreasing list of steps.
pub fn convergence_experiment(
    pt: &ContinuumPoint,
    eps_list: &[f64],
) -> Result<Vec<ConvergenceRow>> {
    if eps_list.is_empty() {
        return Err(Error::domain("empty list of lattice steps"));
    }
    if eps_list.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::domain("lattice steps must be strictly decreasing"));
    }
    let band = LIGHT_CONE_BAND * eps_list[0];
    if (pt.x.abs() - pt.t.abs()).abs() < band || !pt.x.is_finite() || !pt.t.is_finite() {
        return Err(Error::domain(format!(
            "({}, {}) is within {band} of the light cone",
            pt.x, pt.t
        )));
    }
    let mut rows = eps_list
        .par_iter()
        .map(|&eps| convergence_row(pt, eps))
        .collect::<Result<Vec<_>>>()?;
    for i in 1..rows.len() {
        rows[i].ratio = Some(rows[i - 1].error / rows[i].error);
    }
    Ok(rows)
}

/// One sample of a figure.
#[derive(Debug, Clone, Serialize)]
pub struct FigureRow {
    /// 1 or 2 for the propagator component shown; 0 for charge density.
    pub component: u8,
    pub x: f64,
    pub lattice_value: f64,
    pub continuum_value: f64,
    pub asymptotic_value: Option<f64>,
}

/// Which curve set to reproduce.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureSpec {
    pub m: f64,
    pub eps: f64,
    pub t: f64,
    /// Samples cover `|x| ≤ x_max`.
    pub x_max: f64,
}

impl FigureSpec {
    pub fn charge_density() -> Self {
        FigureSpec {
            m: 4.0,
            eps: 0.03,
            t: 6.0,
            x_max: 7.5,
        }
    }

    pub fn propagator() -> Self {
        FigureSpec {
            m: 4.0,
            eps: 0.03,
            t: 6.0,
            x_max: 7.5,
        }
    }
}

fn sample_grid(eps: f64, x_max: f64, offset: f64) -> Vec<f64> {
    let step = 2.0 * eps;
    let n = ((x_max - offset) / step + 1e-9).floor() as i64;
    let lo = -(((x_max + offset) / step + 1e-9).floor() as i64);
    (lo..=n).map(|j| j as f64 * step + offset).collect()
}

/// Lattice and continuum charge density at even multiples of `ε`; the light
/// cone itself is skipped.
pub fn density_profile(spec: &FigureSpec) -> Result<Vec<FigureRow>> {
    let params = LatticeParams::new(spec.m, spec.eps);
    params.validate()?;
    let (_, te) = lattice_point_of(0.0, spec.t, spec.eps)?;
    sample_grid(spec.eps, spec.x_max, 0.0)
        .into_par_iter()
        .filter(|x| x.abs() != te.abs())
        .map(|x| {
            let q = lattice_pair(x, te, &params)?.charge()
                + lattice_pair(x + spec.eps, te, &params)?.charge();
            Ok(FigureRow {
                component: 0,
                x,
                lattice_value: q / (8.0 * spec.eps * spec.eps),
                continuum_value: continuum_density(&ContinuumPoint::new(x, spec.t, spec.m))?,
                asymptotic_value: None,
            })
        })
        .collect()
}

/// `Im Ã_k(x,t)/4ε` next to `Im G₁ₖ` and the Airy-zone approximation.
///
/// Component 1 is sampled on `2εℤ`, component 2 on `2εℤ+ε`, where each is
/// purely imaginary for `t ∈ 2εℤ`.
pub fn propagator_profile(spec: &FigureSpec) -> Result<Vec<FigureRow>> {
    let params = LatticeParams::new(spec.m, spec.eps);
    params.validate()?;
    let (_, te) = lattice_point_of(0.0, spec.t, spec.eps)?;
    let n = 1.0 / (4.0 * spec.eps);
    let mut jobs: Vec<(u8, f64)> = sample_grid(spec.eps, spec.x_max, 0.0)
        .into_iter()
        .map(|x| (1u8, x))
        .collect();
    jobs.extend(
        sample_grid(spec.eps, spec.x_max, spec.eps)
            .into_iter()
            .map(|x| (2u8, x)),
    );
    jobs.into_par_iter()
        .filter(|(_, x)| x.abs() != te.abs())
        .map(|(k, x)| {
            let lat = lattice_pair(x, te, &params)?.get(k).im * n;
            let g = feynman_continuum(&ContinuumPoint::new(x, te, spec.m))?;
            let asym = match asymptotic_airy(x, te, &params) {
                Ok(a) => Some(a.get(k).im * n),
                Err(Error::Domain(_)) => None,
                Err(e) => return Err(e),
            };
            Ok(FigureRow {
                component: k,
                x,
                lattice_value: lat,
                continuum_value: g[0][k as usize - 1].im,
                asymptotic_value: asym,
            })
        })
        .collect()
}
