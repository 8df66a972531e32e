//! Residual checks of the exact identities satisfied by `Ã` on the infinite
//! lattice: Dirac and Klein–Gordon equations, reflection symmetries, charge
//! conservation, both forms of Huygens' principle, and the equal-time
//! recurrences.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{fourier_integral_signed, propagate_quadrature, PropagatorPair};
use crate::error::{Error, Result};
use crate::numerics::QuadratureSpec;
use crate::params::LatticeParams;

/// Values of `Ã` on a rectangle of lattice points, indexed in steps of ε.
#[derive(Debug, Clone)]
pub struct PropagatorTable {
    pub x_half: i64,
    pub t_half: i64,
    data: Vec<PropagatorPair>,
}

impl PropagatorTable {
    /// Builds `|x/ε| ≤ x_half`, `|t/ε| ≤ t_half` in parallel.
    pub fn build<F>(x_half: i64, t_half: i64, eval: F) -> Result<Self>
    where
        F: Fn(i64, i64) -> Result<PropagatorPair> + Sync,
    {
        let width = 2 * x_half + 1;
        let height = 2 * t_half + 1;
        let data = (0..width * height)
            .into_par_iter()
            .map(|i| eval(i % width - x_half, i / width - t_half))
            .collect::<Result<Vec<_>>>()?;
        Ok(PropagatorTable {
            x_half,
            t_half,
            data,
        })
    }

    /// Table from the signed Fourier integrals (no symmetry is assumed).
    pub fn signed_quadrature(params: &LatticeParams, x_half: i64, t_half: i64) -> Result<Self> {
        let spec = QuadratureSpec::default();
        let eps = params.eps;
        Self::build(x_half, t_half, |x, t| {
            fourier_integral_signed(x as f64 * eps, t as f64 * eps, params, &spec)
        })
    }

    pub fn get(&self, x: i64, t: i64) -> PropagatorPair {
        self.try_get(x, t)
            .unwrap_or_else(|| panic!("({x},{t}) outside table ±{}×±{}", self.x_half, self.t_half))
    }

    pub fn try_get(&self, x: i64, t: i64) -> Option<PropagatorPair> {
        if x.abs() > self.x_half || t.abs() > self.t_half {
            return None;
        }
        let width = 2 * self.x_half + 1;
        Some(self.data[((t + self.t_half) * width + x + self.x_half) as usize])
    }

    fn comp(&self, k: u8, x: i64, t: i64) -> Complex64 {
        self.get(x, t).get(k)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub max_residual: f64,
    pub points: usize,
    /// Points where the identity is not claimed and was skipped.
    pub excluded: Vec<(i64, i64)>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub params: LatticeParams,
    pub window: i64,
    pub tol: f64,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Acc {
    name: &'static str,
    max: f64,
    points: usize,
    excluded: Vec<(i64, i64)>,
}

impl Acc {
    fn new(name: &'static str) -> Self {
        Acc {
            name,
            max: 0.0,
            points: 0,
            excluded: Vec::new(),
        }
    }

    fn add(&mut self, r: f64) {
        self.max = self.max.max(if r.is_nan() { f64::INFINITY } else { r });
        self.points += 1;
    }

    fn finish(self, tol: f64) -> IdentityCheck {
        IdentityCheck {
            name: self.name.to_string(),
            max_residual: self.max,
            points: self.points,
            excluded: self.excluded,
            pass: self.max <= tol,
        }
    }
}

/// Number of lattice steps beyond the light cone kept in infinite sums over x:
/// `40/m` in physical units, where the propagator has decayed below `K₀(40)`.
pub fn cutoff_steps(params: &LatticeParams) -> i64 {
    (40.0 / params.mu()).ceil() as i64
}

/// Runs every identity on `|x|, |t| ≤ window·ε`.
pub fn identity_suite(params: &LatticeParams, window: i64, tol: f64) -> Result<IdentityReport> {
    params.validate_massive()?;
    if window < 1 {
        return Err(Error::size("identity window must be at least one step"));
    }
    let cut = cutoff_steps(params);
    let table = PropagatorTable::signed_quadrature(params, 2 * window + cut + 2, window + 1)?;
    Ok(identity_suite_on(&table, params, window, tol))
}

/// Same as [`identity_suite`] on a precomputed table, which must cover
/// `|x| ≤ 2·window + cutoff + 2` and `|t| ≤ window + 1`.
pub fn identity_suite_on(
    table: &PropagatorTable,
    params: &LatticeParams,
    window: i64,
    tol: f64,
) -> IdentityReport {
    let mu = params.mu();
    let root = (1.0 + mu * mu).sqrt();
    let w = window;
    let cut = cutoff_steps(params);
    let a = |k: u8, x: i64, t: i64| table.comp(k, x, t);
    let delta = |x: i64, t: i64| if x == 0 && t == 0 { 1.0 } else { 0.0 };
    let mut checks = Vec::new();

    // Dirac equation
    let mut d1 = Acc::new("dirac-1");
    let mut d2 = Acc::new("dirac-2");
    for t in -w..=w {
        for x in -w..=w {
            let r1 = a(1, x, t) - (a(1, x + 1, t - 1) + a(2, x, t - 1) * mu) / root;
            let r2 = a(2, x, t)
                - (a(2, x - 1, t - 1) - a(1, x, t - 1) * mu) / root
                - Complex64::new(2.0 * delta(x, t), 0.0);
            d1.add(r1.norm());
            d2.add(r2.norm());
        }
    }
    checks.push(d1.finish(tol));
    checks.push(d2.finish(tol));

    // Klein–Gordon equation
    for k in [1u8, 2] {
        let mut acc = Acc::new(if k == 1 {
            "klein-gordon-1"
        } else {
            "klein-gordon-2"
        });
        for t in -w..=w {
            for x in -w..=w {
                let excluded = if k == 1 {
                    x == 0 && t == 0
                } else {
                    (x, t) == (-1, 0) || (x, t) == (0, -1)
                };
                if excluded {
                    acc.excluded.push((x, t));
                    continue;
                }
                let r = (a(k, x, t + 1) + a(k, x, t - 1)) * root - a(k, x + 1, t) - a(k, x - 1, t);
                acc.add(r.norm());
            }
        }
        checks.push(acc.finish(tol));
    }

    // Skew-symmetry
    let mut sk = Acc::new("skew-symmetry");
    for t in -w..=w {
        for x in -w..=w {
            if x == 0 && t == 0 {
                sk.excluded.push((0, 0));
                continue;
            }
            let v = a(1, x, t);
            let r = [
                (v - a(1, -x, t)).norm(),
                (v - a(1, x, -t)).norm(),
                (v - a(1, -x, -t)).norm(),
                (a(2, x, t) + a(2, -x, -t)).norm(),
                (a(2, x, t) * (t - x) as f64 - a(2, -x, t) * (t + x) as f64).norm(),
            ];
            sk.add(r.into_iter().fold(0.0, f64::max));
        }
    }
    checks.push(sk.finish(tol));

    // Initial values
    let mut iv = Acc::new("initial-value");
    for x in -w..=w {
        for k in [1u8, 2] {
            if (k as i64 + x).rem_euclid(2) == 0 {
                let want = if k == 2 && x == 0 { 1.0 } else { 0.0 };
                iv.add((a(k, x, 0) - Complex64::new(want, 0.0)).norm());
            }
        }
    }
    checks.push(iv.finish(tol));

    // Charge conservation
    let mut cc = Acc::new("charge-conservation");
    for t in -w..=w {
        let total: f64 = (-(t.abs() + cut)..=(t.abs() + cut))
            .map(|x| table.get(x, t).charge())
            .sum();
        cc.add((total - 1.0).abs());
    }
    checks.push(cc.finish(tol));

    // Huygens' principle, infinite sums with the factor 1/2
    let mut h1 = Acc::new("huygens-sum");
    // Huygens' principle, parity-restricted finite sums
    let mut h2 = Acc::new("huygens-finite");
    for t in 0..=w {
        for tp in 0..=t {
            let dt = t - tp;
            for x in -w..=w {
                let range = -(tp + cut)..=(tp + cut);
                let mut s1 = Complex64::new(0.0, 0.0);
                let mut s2 = Complex64::new(0.0, 0.0);
                let mut f1 = Complex64::new(0.0, 0.0);
                let mut f2 = Complex64::new(0.0, 0.0);
                for xp in range {
                    let here = table.get(xp, tp);
                    let fwd = table.get(x - xp, dt);
                    let back = table.get(xp - x, dt);
                    s1 += here.a2 * fwd.a1 + here.a1 * back.a2;
                    s2 += here.a2 * fwd.a2 - here.a1 * back.a1;
                    if (x + xp + t + tp).rem_euclid(2) == 1 {
                        f1 += here.a2 * fwd.a1;
                        f2 -= here.a1 * back.a1;
                    } else {
                        f1 += here.a1 * back.a2;
                        f2 += here.a2 * fwd.a2;
                    }
                }
                let v = table.get(x, t);
                h1.add((v.a1 - s1 * 0.5).norm().max((v.a2 - s2 * 0.5).norm()));
                h2.add((v.a1 - f1).norm().max((v.a2 - f2).norm()));
            }
        }
    }
    checks.push(h1.finish(tol));
    checks.push(h2.finish(tol));

    // Equal-time mixed recurrence
    let mut m1 = Acc::new("mixed-recurrence-1");
    let mut m2 = Acc::new("mixed-recurrence-2");
    // Equal-time three-term recurrence
    let mut r1 = Acc::new("three-term-1");
    let mut r2 = Acc::new("three-term-2");
    for t in -w..=w {
        let tf = t as f64;
        for x in -w..=w {
            let xf = x as f64;
            let lhs = a(1, x, t) * (2.0 * mu * xf);
            let rhs = a(2, x - 1, t) * (xf - tf - 1.0) - a(2, x + 1, t) * (xf - tf + 1.0);
            m1.add((lhs - rhs).norm());
            let lhs = a(2, x, t) * (2.0 * mu * xf);
            let rhs = (a(1, x - 1, t) - a(1, x + 1, t)) * (xf + tf);
            m2.add((lhs - rhs).norm());

            let c = 1.0 + 2.0 * mu * mu;
            let lhs = a(1, x - 2, t) * ((xf + 1.0) * ((xf - 1.0).powi(2) - tf * tf))
                + a(1, x + 2, t) * ((xf - 1.0) * ((xf + 1.0).powi(2) - tf * tf));
            let rhs = a(1, x, t) * (2.0 * xf * (c * (xf * xf - 1.0) - tf * tf));
            r1.add((lhs - rhs).norm());
            let lhs = a(2, x - 2, t) * ((xf + 1.0) * ((xf - 1.0).powi(2) - (tf + 1.0).powi(2)))
                + a(2, x + 2, t) * ((xf - 1.0) * ((xf + 1.0).powi(2) - (tf - 1.0).powi(2)));
            let rhs = a(2, x, t) * (2.0 * xf * (c * (xf * xf - 1.0) - tf * tf + 1.0));
            r2.add((lhs - rhs).norm());
        }
    }
    checks.extend([m1, m2, r1, r2].into_iter().map(|acc| acc.finish(tol)));

    IdentityReport {
        params: *params,
        window,
        tol,
        checks,
    }
}

/// Outcome of the charge-conservation sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChargeReport {
    /// `max_t |Σ_x Q(x,t) − 1|` with the standard cutoff.
    pub max_residual: f64,
    /// `max_t` change of the sum when the cutoff is widened by `widen` steps.
    pub cutoff_sensitivity: f64,
    pub totals: Vec<f64>,
}

/// `Σ_x Q(x,t)` over `|x| ≤ |t| + 40/m` for `t/ε = 0, …, t_max`.
pub fn charge_conservation(params: &LatticeParams, t_max: i64, widen: i64) -> Result<ChargeReport> {
    params.validate_massive()?;
    let cut = cutoff_steps(params);
    let eps = params.eps;
    let rows: Vec<(f64, f64)> = (0..=t_max)
        .into_par_iter()
        .map(|t| {
            let inner = t + cut;
            let mut base = 0.0;
            let mut extra = 0.0;
            for x in -(inner + widen)..=(inner + widen) {
                let q = propagate_quadrature(x as f64 * eps, t as f64 * eps, params)?.charge();
                if x.abs() <= inner {
                    base += q;
                } else {
                    extra += q;
                }
            }
            Ok((base, extra))
        })
        .collect::<Result<_>>()?;
    Ok(ChargeReport {
        max_residual: rows
            .iter()
            .map(|(b, _)| (b - 1.0).abs())
            .fold(0.0, f64::max),
        cutoff_sensitivity: rows.iter().map(|(_, e)| e.abs()).fold(0.0, f64::max),
        totals: rows.iter().map(|(b, _)| *b).collect(),
    })
}
