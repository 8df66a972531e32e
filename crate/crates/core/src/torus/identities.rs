//! Exact identities of the finite-lattice propagator, checked numerically.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::{EdgeId, TorusLattice};
use crate::error::Result;
use crate::propagator::IdentityCheck;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiniteIdentityReport {
    pub size: usize,
    pub tol: f64,
    pub checks: Vec<IdentityCheck>,
}

impl FiniteIdentityReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn record(name: &str, residuals: impl Iterator<Item = f64>, tol: f64) -> IdentityCheck {
    let (mut max, mut points) = (0.0f64, 0);
    for r in residuals {
        max = max.max(if r.is_nan() { f64::INFINITY } else { r });
        points += 1;
    }
    IdentityCheck {
        name: name.to_string(),
        max_residual: max,
        points,
        excluded: Vec::new(),
        pass: max <= tol,
    }
}

/// `P[f][e]` = sum of arrows of the paths of exactly `len` edges from `e` to
/// `f`, found by depth-first search over distinct edges.
fn path_sums(lat: &TorusLattice, len: usize) -> Result<DMatrix<Complex64>> {
    let n = lat.num_edges();
    let mut out = DMatrix::zeros(n, n);
    fn walk(
        lat: &TorusLattice,
        path: &mut Vec<EdgeId>,
        weight: Complex64,
        len: usize,
        out: &mut DMatrix<Complex64>,
    ) -> Result<()> {
        let last = *path.last().unwrap();
        if path.len() == len {
            out[(lat.edge_index(last), lat.edge_index(path[0]))] += weight;
            return Ok(());
        }
        for next in lat.successors(last) {
            if path.contains(&next) {
                continue;
            }
            let w = weight * lat.node_weight(last, next)?;
            path.push(next);
            walk(lat, path, w, len, out)?;
            path.pop();
        }
        Ok(())
    }
    for e in lat.edges() {
        walk(lat, &mut vec![e], Complex64::new(1.0, 0.0), len, &mut out)?;
    }
    Ok(out)
}

/// Initial value, skew-symmetry, Dirac, adjoint Dirac and Huygens for every
/// `n ≤ 2T`, plus `det(I−U)·det(A) = 1`. Path sums are enumerated explicitly
/// for `T ≤ 2` and taken from powers of `U` otherwise (walks of at most `2T`
/// edges cannot repeat an edge, so the two agree).
pub fn finite_identity_suite(lat: &TorusLattice, tol: f64) -> Result<FiniteIdentityReport> {
    let arrows = lat.arrows()?;
    let a = arrows.matrix();
    let u = lat.transfer_matrix()?;
    let n = lat.num_edges();
    let edges: Vec<EdgeId> = lat.edges().collect();
    let at = |from: EdgeId, to: EdgeId| arrows.get(from, to);
    let kron = |p: EdgeId, q: EdgeId| if p == q { 1.0 } else { 0.0 };
    let mut checks = Vec::new();

    checks.push(record(
        "initial-value",
        edges.iter().map(|&e| (at(e, e) - 0.5).norm()),
        tol,
    ));

    let skew = edges.iter().flat_map(|&p| {
        edges.iter().filter(move |&&q| q != p).map(move |&q| {
            let sign = if p.dir == q.dir { -1.0 } else { 1.0 };
            (at(p, q) - at(q, p) * sign).norm()
        })
    });
    checks.push(record("skew-symmetry", skew, tol));

    let mut dirac = Vec::with_capacity(n * n);
    let mut adjoint = Vec::with_capacity(n * n);
    for &f in &edges {
        let [p, q] = lat.predecessors(f);
        let (e, e_perp) = if p.dir == f.dir { (p, q) } else { (q, p) };
        let (w, w_perp) = (lat.node_weight(e, f)?, lat.node_weight(e_perp, f)?);
        for &src in &edges {
            let rhs = at(src, e) * w + at(src, e_perp) * w_perp + kron(src, f);
            dirac.push((at(src, f) - rhs).norm());
            let rhs =
                w * (at(e, src) - kron(e, src)) - w_perp * (at(e_perp, src) - kron(e_perp, src));
            adjoint.push((at(f, src) - rhs).norm());
        }
    }
    checks.push(record("dirac", dirac.into_iter(), tol));
    checks.push(record("adjoint-dirac", adjoint.into_iter(), tol));

    let explicit = lat.size() <= 2;
    let mut sums: Vec<DMatrix<Complex64>> = Vec::with_capacity(2 * lat.size());
    let mut power = DMatrix::identity(n, n);
    for len in 1..=2 * lat.size() {
        if explicit {
            sums.push(path_sums(lat, len)?);
        } else {
            sums.push(power.clone());
            power = &u * power;
        }
    }
    let mut huygens = Vec::new();
    for len in 1..=2 * lat.size() {
        let mut rhs = &sums[len - 1] * a;
        for shorter in &sums[..len - 1] {
            rhs += shorter;
        }
        huygens.push((a - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max));
    }
    checks.push(record("huygens", huygens.into_iter(), tol));

    let det_product = lat.partition_function_det()? * a.clone().lu().determinant();
    checks.push(record(
        "inverse-determinant",
        std::iter::once((det_product - 1.0).norm()),
        tol,
    ));

    Ok(FiniteIdentityReport {
        size: lat.size(),
        tol,
        checks,
    })
}
