//! The double limit `δ ↘ 0` after `T → ∞` that turns torus arrows into the
//! infinite-lattice propagator.
//!
//! For fixed δ the arrows converge in `T` like `exp(−c·T·mεδ/√(1+m²ε²))`, so
//! useful sizes grow like `1/δ`. The frequency sum is done in closed form,
//! which keeps each evaluation linear in `T`. After the sizes have saturated,
//! the values at the listed regulators are extrapolated to `δ = 0`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{arrows_dft, TorusLattice};
use crate::error::{Error, Result};
use crate::params::LatticeParams;
use crate::propagator::PropagatorPair;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitSchedule {
    /// Strictly decreasing regulators in `(0, 1)`.
    pub deltas: Vec<f64>,
    /// Strictly increasing torus sizes, used for every regulator. `None`
    /// picks two sizes per regulator from `size_factor`.
    pub sizes: Option<Vec<usize>>,
    /// Automatic sizes start at `size_factor·√(1+m²ε²)/(mεδ)`.
    pub size_factor: f64,
    /// Largest change between the last two sizes accepted as saturation.
    pub saturation_tol: f64,
}

impl Default for LimitSchedule {
    fn default() -> Self {
        LimitSchedule {
            deltas: vec![4e-3, 2e-3, 1e-3],
            sizes: None,
            size_factor: 40.0,
            saturation_tol: 1e-9,
        }
    }
}

impl LimitSchedule {
    pub fn with_sizes(sizes: Vec<usize>) -> Self {
        LimitSchedule {
            sizes: Some(sizes),
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.deltas.is_empty() || self.deltas.iter().any(|&d| !(d > 0.0 && d < 1.0)) {
            return Err(Error::domain(
                "regulators must be nonempty and lie in (0,1)",
            ));
        }
        if self.deltas.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::domain("regulators must decrease"));
        }
        if let Some(sizes) = &self.sizes {
            if sizes.windows(2).any(|w| w[1] <= w[0]) {
                return Err(Error::domain("torus sizes must increase"));
            }
            if let Some(bad) = sizes.iter().find(|&&s| s % 4 == 0) {
                return Err(Error::OrderOfLimits(format!(
                    "torus size {bad} is divisible by 4; there the arrows diverge as delta -> 0, \
                     so the limit in delta cannot be taken at fixed size"
                )));
            }
            if sizes.len() < 2 {
                return Err(Error::domain(
                    "need at least two torus sizes to judge saturation",
                ));
            }
        }
        Ok(())
    }

    fn sizes_for(&self, mu: f64, delta: f64) -> Vec<usize> {
        match &self.sizes {
            Some(s) => s.clone(),
            None => {
                let base = self.size_factor * (1.0 + mu * mu).sqrt() / (mu * delta);
                vec![odd_size(base), odd_size(1.5 * base)]
            }
        }
    }
}

fn odd_size(x: f64) -> usize {
    let n = x.ceil().max(1.0) as usize;
    n | 1
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitStep {
    pub delta: f64,
    pub size: usize,
    pub value: PropagatorPair,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitTrace {
    pub steps: Vec<LimitStep>,
    /// Change between the last two sizes, per regulator.
    pub saturation: Vec<f64>,
    pub estimate: PropagatorPair,
}

/// `Ã_k(x,t)` from torus arrows; see [`infinite_limit_trace`].
pub fn infinite_limit(
    x: f64,
    t: f64,
    params: &LatticeParams,
    schedule: &LimitSchedule,
) -> Result<PropagatorPair> {
    Ok(infinite_limit_trace(x, t, params, schedule)?.estimate)
}

/// `−2(−i)^k · A(a₀ → f_k(x,t))` on every torus of the schedule, and the
/// extrapolation to `δ = 0`.
pub fn infinite_limit_trace(
    x: f64,
    t: f64,
    params: &LatticeParams,
    schedule: &LimitSchedule,
) -> Result<LimitTrace> {
    params.validate_massive()?;
    schedule.validate()?;
    let xs = params.steps(x)?;
    let ts = params.steps(t)?;
    let mu = params.mu();
    let jobs: Vec<(f64, usize)> = schedule
        .deltas
        .iter()
        .flat_map(|&d| schedule.sizes_for(mu, d).into_iter().map(move |s| (d, s)))
        .collect();
    let values: Vec<PropagatorPair> = jobs
        .par_iter()
        .map(|&(delta, size)| torus_value(xs, ts, &params.with_delta(delta), size))
        .collect::<Result<_>>()?;
    let steps: Vec<LimitStep> = jobs
        .iter()
        .zip(&values)
        .map(|(&(delta, size), &value)| LimitStep { delta, size, value })
        .collect();

    let mut saturation = Vec::new();
    let mut nodes = Vec::new();
    for &delta in &schedule.deltas {
        let run: Vec<&LimitStep> = steps.iter().filter(|s| s.delta == delta).collect();
        let (prev, last) = (run[run.len() - 2], run[run.len() - 1]);
        let change = last.value.max_diff(&prev.value);
        saturation.push(change);
        if !(change <= schedule.saturation_tol) {
            let trace: Vec<String> = steps
                .iter()
                .map(|s| {
                    format!(
                        "delta={} T={}: A1={} A2={}",
                        s.delta, s.size, s.value.a1, s.value.a2
                    )
                })
                .collect();
            return Err(Error::numeric(
                format!(
                    "torus sizes have not saturated at delta={delta} (change {change:.3e} > {:.1e}); trace: {}",
                    schedule.saturation_tol,
                    trace.join("; ")
                ),
                last.value.a1,
            ));
        }
        nodes.push((delta, last.value));
    }
    let estimate = PropagatorPair::new(
        extrapolate_to_zero(&nodes.iter().map(|(d, v)| (*d, v.a1)).collect::<Vec<_>>()),
        extrapolate_to_zero(&nodes.iter().map(|(d, v)| (*d, v.a2)).collect::<Vec<_>>()),
    );
    Ok(LimitTrace {
        steps,
        saturation,
        estimate,
    })
}

/// Value at 0 of the interpolating polynomial (Neville).
fn extrapolate_to_zero(nodes: &[(f64, Complex64)]) -> Complex64 {
    let xs: Vec<f64> = nodes.iter().map(|n| n.0).collect();
    let mut p: Vec<Complex64> = nodes.iter().map(|n| n.1).collect();
    for level in 1..p.len() {
        for i in 0..p.len() - level {
            let (a, b) = (xs[i], xs[i + level]);
            p[i] = (p[i + 1] * a - p[i] * b) / (a - b);
        }
    }
    p[0]
}

/// `−2(−i)^k A(a₀ → f_k)` on one torus, built from four Fourier arrows out
/// of `b₂` via the adjoint Dirac equation at the origin, the Dirac equation
/// at `(x,t)`, and the mirror `x ↦ −x` that exchanges `b₁` and `b₂`.
fn torus_value(xs: i64, ts: i64, params: &LatticeParams, size: usize) -> Result<PropagatorPair> {
    let lat = TorusLattice::new(size, *params)?;
    let targets = [
        lat.e_edge(1, xs, ts)?,
        lat.e_edge(2, xs, ts)?,
        lat.e_edge(1, -xs, ts)?,
        lat.e_edge(2, -xs, ts)?,
    ];
    let v = arrows_dft(&lat, &targets)?;
    let n = size as i64;
    let origin = xs.rem_euclid(n) == 0 && ts.rem_euclid(n) == 0;
    let kron = |b: bool| if b { 1.0 } else { 0.0 };
    let d = params.delta;
    let (straight, turn) = (1.0 / (1.0 - d * d).sqrt(), -d / (1.0 - d * d).sqrt());
    // A(a₀ → e_j(x,t)); A(b₁ → e_j(x,t)) = A(b₂ → e_{3−j}(−x,t))
    let from_b2 = [v[0], v[1]];
    let from_b1 = [v[3], v[2]];
    let g: Vec<Complex64> = (0..2)
        .map(|j| {
            straight * (from_b2[j] - kron(j == 1 && origin))
                - turn * (from_b1[j] - kron(j == 0 && origin))
        })
        .collect();
    let f1 = g[0] * straight + g[1] * turn;
    let f2 = g[0] * turn + g[1] * straight + kron(origin);
    let minus_i = Complex64::new(0.0, -1.0);
    Ok(PropagatorPair::new(
        f1 * minus_i * -2.0,
        f2 * minus_i * minus_i * -2.0,
    ))
}
