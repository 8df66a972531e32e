use num_complex::Complex64;
use rayon::prelude::*;

use super::{propagate_quadrature, GridRequest, PropagatorPair};
use crate::error::{Error, Result};
use crate::params::LatticeParams;

/// Rows `t = 0, ε, …, t_steps·ε` of `Ã` on `x/ε ∈ [x_lo, x_hi]`.
///
/// The `t = 0` row is seeded by quadrature on a window widened by `t_steps`
/// on each side; the Dirac equation
/// `Ã₁(x,t) = (Ã₁(x+ε,t−ε) + mε·Ã₂(x,t−ε))/√(1+m²ε²)`,
/// `Ã₂(x,t) = (Ã₂(x−ε,t−ε) − mε·Ã₁(x,t−ε))/√(1+m²ε²)`
/// then marches forward, each step consuming one cell at each edge.
pub fn propagate_dp_rows(
    x_lo: i64,
    x_hi: i64,
    t_steps: i64,
    params: &LatticeParams,
) -> Result<Vec<Vec<PropagatorPair>>> {
    params.validate_massive()?;
    if x_lo > x_hi {
        return Err(Error::size(format!("empty window [{x_lo}, {x_hi}]")));
    }
    if t_steps < 0 {
        return Err(Error::domain("forward marching needs t ≥ 0"));
    }
    let lo = x_lo - t_steps;
    let hi = x_hi + t_steps;
    let eps = params.eps;
    let mut row: Vec<PropagatorPair> = (lo..=hi)
        .into_par_iter()
        .map(|x| propagate_quadrature(x as f64 * eps, 0.0, params))
        .collect::<Result<_>>()?;
    let norm = 1.0 / (1.0 + params.mu() * params.mu()).sqrt();
    let mu = params.mu();
    let inner = (t_steps as usize, (t_steps + x_hi - x_lo) as usize);
    let mut rows = vec![row[inner.0..=inner.1].to_vec()];
    for step in 1..=t_steps as usize {
        // Valid cells of the new row: indices step..=len-1-step.
        let len = row.len();
        let mut next = vec![PropagatorPair::default(); len];
        for i in step..len - step {
            let a1 = (row[i + 1].a1 + row[i].a2 * mu) * norm;
            let a2 = (row[i - 1].a2 - row[i].a1 * mu) * norm;
            next[i] = PropagatorPair::new(a1, a2);
        }
        row = next;
        rows.push(row[inner.0..=inner.1].to_vec());
    }
    Ok(rows)
}

/// Dirac-marching evaluation of a grid request; negative times come from
/// `Ã₁(x,t) = Ã₁(x,−t)` and `Ã₂(x,t) = −Ã₂(−x,−t)`.
pub fn propagate_dp(req: &GridRequest) -> Result<Vec<PropagatorPair>> {
    let p = &req.params;
    let lo = p.steps(req.x_min)?;
    let hi = p.steps(req.x_max)?;
    let ts = p.steps(req.t)?;
    if lo > hi {
        return Err(Error::size(format!(
            "empty x range [{}, {}]",
            req.x_min, req.x_max
        )));
    }
    if ts >= 0 {
        return Ok(propagate_dp_rows(lo, hi, ts, p)?
            .pop()
            .expect("at least one row"));
    }
    let (wlo, whi) = (lo.min(-hi), hi.max(-lo));
    let row = propagate_dp_rows(wlo, whi, -ts, p)?
        .pop()
        .expect("at least one row");
    let at = |x: i64| row[(x - wlo) as usize];
    Ok((lo..=hi)
        .map(|x| PropagatorPair::new(at(x).a1, -at(-x).a2))
        .collect())
}

/// The value of `Ã₂(0,0)` predicted by the source-free Dirac step from the row below.
pub fn marched_origin_a2(params: &LatticeParams) -> Result<Complex64> {
    let eps = params.eps;
    let below_left = propagate_quadrature(-eps, -eps, params)?;
    let below = propagate_quadrature(0.0, -eps, params)?;
    let norm = 1.0 / (1.0 + params.mu() * params.mu()).sqrt();
    Ok((below_left.a2 - below.a1 * params.mu()) * norm)
}
