//! Two species (electron and muon) on the same torus, coupled through the
//! edges their configurations share: each common edge contributes `1 + g`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::LatticeParams;
use crate::torus::{loop_configurations, EdgeId, LoopConfig, TorusLattice};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FermiParams {
    pub g: f64,
    pub m_e: f64,
    pub m_mu: f64,
    pub eps: f64,
    pub delta: f64,
    pub size: usize,
}

impl FermiParams {
    fn lattices(&self) -> Result<(TorusLattice, TorusLattice)> {
        let species = |m: f64| {
            TorusLattice::new(
                self.size,
                LatticeParams::new(m, self.eps).with_delta(self.delta),
            )
        };
        Ok((species(self.m_e)?, species(self.m_mu)?))
    }

    pub fn with_g(self, g: f64) -> Self {
        FermiParams { g, ..self }
    }
}

/// Source and sink of each species.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FermiEdges {
    pub a_e: EdgeId,
    pub a_mu: EdgeId,
    pub f_e: EdgeId,
    pub f_mu: EdgeId,
}

fn coupled_sum(electron: &[LoopConfig], muon: &[LoopConfig], g: f64, edges: usize) -> Complex64 {
    let powers: Vec<f64> = (0..=edges as i32).map(|k| (1.0 + g).powi(k)).collect();
    electron
        .par_iter()
        .map(|se| {
            muon.iter()
                .map(|sm| se.arrow * sm.arrow * powers[(se.edges & sm.edges).count_ones() as usize])
                .sum::<Complex64>()
        })
        .sum()
}

/// Denominator of the coupled arrow: the double sum over all configuration pairs.
pub fn fermi_denominator(fp: &FermiParams) -> Result<Complex64> {
    let (le, lm) = fp.lattices()?;
    let (se, sm) = (
        loop_configurations(&le, &[], &[])?,
        loop_configurations(&lm, &[], &[])?,
    );
    Ok(coupled_sum(&se, &sm, fp.g, le.num_edges()))
}

/// Exact coupled arrow by double enumeration (`T ≤ 2`).
pub fn fermi_arrow(fp: &FermiParams, edges: &FermiEdges) -> Result<Complex64> {
    let (le, lm) = fp.lattices()?;
    let num = coupled_sum(
        &loop_configurations(&le, &[edges.a_e], &[edges.f_e])?,
        &loop_configurations(&lm, &[edges.a_mu], &[edges.f_mu])?,
        fp.g,
        le.num_edges(),
    );
    let den = fermi_denominator(fp)?;
    if den.norm() < 1e-300 || !den.is_finite() {
        return Err(Error::Degenerate(format!(
            "coupled denominator vanishes at g = {}",
            fp.g
        )));
    }
    Ok(num / den)
}

/// The three first-order families summed over the interaction edge: both
/// particles pass it; the muon passes it while the electron closes a loop
/// through it; the electron passes it while the muon closes a loop.
pub fn first_order_terms(fp: &FermiParams, edges: &FermiEdges) -> Result<[Complex64; 3]> {
    let (le, lm) = fp.lattices()?;
    let (ae, am) = (le.arrows()?, lm.arrows()?);
    let mut terms = [Complex64::new(0.0, 0.0); 3];
    for e in le.edges() {
        let through_e = ae.get(edges.a_e, e) * ae.get(e, edges.f_e);
        let through_mu = am.get(edges.a_mu, e) * am.get(e, edges.f_mu);
        terms[0] += through_e * through_mu;
        terms[1] += ae.get(edges.a_e, edges.f_e) * ae.get(e, e) * through_mu;
        terms[2] += through_e * am.get(edges.a_mu, edges.f_mu) * am.get(e, e);
    }
    Ok(terms)
}

/// Free product plus the first-order correction at coupling `fp.g`.
pub fn perturbation_expansion(fp: &FermiParams, edges: &FermiEdges) -> Result<Complex64> {
    let (le, lm) = fp.lattices()?;
    let free = le.arrow(edges.a_e, edges.f_e)? * lm.arrow(edges.a_mu, edges.f_mu)?;
    let terms = first_order_terms(fp, edges)?;
    Ok(free + (terms[0] + terms[1] + terms[2]) * fp.g)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerturbationReport {
    pub couplings: Vec<f64>,
    pub remainders: Vec<f64>,
    /// Least-squares slope of `log remainder` against `log g`.
    pub slope: f64,
    /// `|fermi_arrow − expansion|` at `g = 0`.
    pub zero_coupling_gap: f64,
    /// Relative error of `d(denominator)/dg` at 0 against `Z_e·Z_μ·(edges)/4`.
    pub denominator_derivative_error: f64,
    pub min_slope: f64,
    pub pass: bool,
}

/// Compares the exact coupled arrow with its first-order expansion on a grid
/// of couplings; the remainder should shrink like `g²`.
pub fn perturbation_check(
    fp: &FermiParams,
    edges: &FermiEdges,
    couplings: &[f64],
    min_slope: f64,
) -> Result<PerturbationReport> {
    if couplings.len() < 2 || couplings.iter().any(|&g| !(g > 0.0)) {
        return Err(Error::domain("need at least two positive couplings"));
    }
    let remainders: Vec<f64> = couplings
        .iter()
        .map(|&g| {
            let p = fp.with_g(g);
            Ok((fermi_arrow(&p, edges)? - perturbation_expansion(&p, edges)?).norm())
        })
        .collect::<Result<_>>()?;
    let lx: Vec<f64> = couplings.iter().map(|g| g.ln()).collect();
    let ly: Vec<f64> = remainders
        .iter()
        .map(|r| r.max(f64::MIN_POSITIVE).ln())
        .collect();
    let n = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let cov: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let var: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    let slope = cov / var;

    let zero = fp.with_g(0.0);
    let zero_coupling_gap =
        (fermi_arrow(&zero, edges)? - perturbation_expansion(&zero, edges)?).norm();

    let (le, lm) = fp.lattices()?;
    let h = 1e-4;
    let derivative =
        (fermi_denominator(&fp.with_g(h))? - fermi_denominator(&fp.with_g(-h))?) / (2.0 * h);
    let want = le.partition_function()? * lm.partition_function()? * (le.num_edges() as f64 / 4.0);
    let denominator_derivative_error = (derivative - want).norm() / want.norm();

    Ok(PerturbationReport {
        couplings: couplings.to_vec(),
        remainders,
        slope,
        zero_coupling_gap,
        denominator_derivative_error,
        min_slope,
        pass: slope >= min_slope
            && zero_coupling_gap < 1e-12
            && denominator_derivative_error < 1e-6,
    })
}
