//! Arrows with several sources and sinks, and arrows constrained to pass
//! through a given edge.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::torus::{loop_configurations, EdgeId, TorusLattice};

/// `A(a₁,…,aₙ → f₁,…,fₙ) = det(A(a_k → f_l))`. Zero when two sources or two
/// sinks coincide.
pub fn det_arrow(lat: &TorusLattice, sources: &[EdgeId], sinks: &[EdgeId]) -> Result<Complex64> {
    if sources.len() != sinks.len() {
        return Err(Error::domain("need as many sinks as sources"));
    }
    let repeated = |v: &[EdgeId]| (0..v.len()).any(|i| v[i + 1..].contains(&v[i]));
    if repeated(sources) || repeated(sinks) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if sources.is_empty() {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let arrows = lat.arrows()?;
    let n = sources.len();
    let m = DMatrix::from_fn(n, n, |k, l| arrows.get(sources[k], sinks[l]));
    Ok(m.determinant())
}

/// `A(a → f pass e) = ½·A(a→f) + A(a→e)·A(e→f)`.
pub fn pass_arrow(lat: &TorusLattice, a: EdgeId, e: EdgeId, f: EdgeId) -> Result<Complex64> {
    let arrows = lat.arrows()?;
    Ok(arrows.get(a, f) * 0.5 + arrows.get(a, e) * arrows.get(e, f))
}

/// The same quantity written as `A(a→f)·A(e→e) + A(a→e)·A(e→f)`.
pub fn pass_arrow_loop_form(
    lat: &TorusLattice,
    a: EdgeId,
    e: EdgeId,
    f: EdgeId,
) -> Result<Complex64> {
    let arrows = lat.arrows()?;
    Ok(arrows.get(a, f) * arrows.get(e, e) + arrows.get(a, e) * arrows.get(e, f))
}

/// Direct sum over configurations from `a` to `f` that use `e`, over `Z`.
pub fn pass_arrow_bruteforce(
    lat: &TorusLattice,
    a: EdgeId,
    e: EdgeId,
    f: EdgeId,
) -> Result<Complex64> {
    let num: Complex64 = loop_configurations(lat, &[a], &[f])?
        .iter()
        .filter(|s| s.contains(lat, e))
        .map(|s| s.arrow)
        .sum();
    let den: Complex64 = loop_configurations(lat, &[], &[])?
        .iter()
        .map(|s| s.arrow)
        .sum();
    Ok(num / den)
}
