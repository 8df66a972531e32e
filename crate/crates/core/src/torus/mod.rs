//! The finite `T×T` torus lattice and its loop expansion.
//!
//! Points are stored in half-step units `(2x/ε, 2t/ε)` reduced mod `2T`, so
//! integer points have both coordinates even and dual points both odd. Each
//! point emits an up-left and an up-right edge. Edges are indexed
//! lexicographically by (time row, column, direction bit):
//! `index = (t2·T + ⌊x2/2⌋)·2 + dir`, with up-left = 0 and up-right = 1.
//!
//! Mass turns sit on the dual (odd) points and regulator turns on the integer
//! (even) points; the Table-of-configurations tests pin this.

mod enumerate;
mod fourier;
mod identities;
mod limit;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::params::LatticeParams;

pub use enumerate::{
    bruteforce_currents, bruteforce_loop_configs, complement_current, currents,
    loop_configurations, parallel, Current, LoopConfig, ENUMERATION_MAX,
};
pub use fourier::{arrow_dft, arrow_dft_direct, arrows_dft};
pub use identities::{finite_identity_suite, FiniteIdentityReport};
pub use limit::{infinite_limit, infinite_limit_trace, LimitSchedule, LimitStep, LimitTrace};

/// Largest size handled by dense LU on the `4T²` edges.
pub const DENSE_MAX: usize = 8;
/// Largest size accepted by the product formula for `Z`.
pub const PRODUCT_MAX: usize = 64;
/// Largest size accepted by the Fourier evaluation of single arrows.
pub const DFT_MAX: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dir {
    UpLeft,
    UpRight,
}

impl Dir {
    /// Propagator component index: up-left edges carry `k = 1`.
    pub fn component(self) -> u8 {
        match self {
            Dir::UpLeft => 1,
            Dir::UpRight => 2,
        }
    }

    pub fn from_component(k: u8) -> Result<Dir> {
        match k {
            1 => Ok(Dir::UpLeft),
            2 => Ok(Dir::UpRight),
            _ => Err(Error::domain(format!("component must be 1 or 2, got {k}"))),
        }
    }

    fn dx(self) -> i64 {
        match self {
            Dir::UpLeft => -1,
            Dir::UpRight => 1,
        }
    }

    fn bit(self) -> usize {
        match self {
            Dir::UpLeft => 0,
            Dir::UpRight => 1,
        }
    }

    pub fn flip(self) -> Dir {
        match self {
            Dir::UpLeft => Dir::UpRight,
            Dir::UpRight => Dir::UpLeft,
        }
    }
}

/// Lattice point in half-step units, already reduced mod `2T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x2: i64,
    pub t2: i64,
}

impl Point {
    pub fn is_even(&self) -> bool {
        self.x2 % 2 == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeId {
    pub start: Point,
    pub dir: Dir,
}

/// Deliberate corruption of the node weights, used to show that the
/// verification suite notices a wrong sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mutation {
    OddTurnSign,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorusLattice {
    size: usize,
    params: LatticeParams,
    mutation: Option<Mutation>,
}

impl TorusLattice {
    /// `delta = 0` is accepted so that the degenerate sizes can be exhibited;
    /// the combinatorial model itself needs `0 < δ < 1`.
    pub fn new(size: usize, params: LatticeParams) -> Result<Self> {
        params.validate()?;
        if size == 0 || size > DFT_MAX {
            return Err(Error::size(format!(
                "torus size must lie in 1..={DFT_MAX}, got {size}"
            )));
        }
        if !(params.delta >= 0.0 && params.delta < 1.0) {
            return Err(Error::domain(format!(
                "regulator must lie in [0,1), got {}",
                params.delta
            )));
        }
        Ok(TorusLattice {
            size,
            params,
            mutation: None,
        })
    }

    #[doc(hidden)]
    pub fn with_mutation(self, mutation: Mutation) -> Self {
        TorusLattice {
            mutation: Some(mutation),
            ..self
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn params(&self) -> &LatticeParams {
        &self.params
    }

    pub fn num_edges(&self) -> usize {
        4 * self.size * self.size
    }

    pub fn num_points(&self) -> usize {
        2 * self.size * self.size
    }

    fn modulus(&self) -> i64 {
        2 * self.size as i64
    }

    /// Point with half-step coordinates `(x2, t2)`, which must have equal parity.
    pub fn point(&self, x2: i64, t2: i64) -> Result<Point> {
        if (x2 + t2).rem_euclid(2) != 0 {
            return Err(Error::domain(format!(
                "({x2}, {t2}) half-steps is not a lattice point"
            )));
        }
        let n = self.modulus();
        Ok(Point {
            x2: x2.rem_euclid(n),
            t2: t2.rem_euclid(n),
        })
    }

    /// Integer point `(x, t) = (xs·ε, ts·ε)`.
    pub fn lattice_point(&self, xs: i64, ts: i64) -> Point {
        let n = self.modulus();
        Point {
            x2: (2 * xs).rem_euclid(n),
            t2: (2 * ts).rem_euclid(n),
        }
    }

    pub fn edge(&self, start: Point, dir: Dir) -> EdgeId {
        EdgeId { start, dir }
    }

    pub fn end(&self, e: EdgeId) -> Point {
        let n = self.modulus();
        Point {
            x2: (e.start.x2 + e.dir.dx()).rem_euclid(n),
            t2: (e.start.t2 + 1).rem_euclid(n),
        }
    }

    pub fn edge_index(&self, e: EdgeId) -> usize {
        let (x2, t2) = (e.start.x2 as usize, e.start.t2 as usize);
        (t2 * self.size + x2 / 2) * 2 + e.dir.bit()
    }

    pub fn edge_at(&self, index: usize) -> EdgeId {
        let dir = if index % 2 == 0 {
            Dir::UpLeft
        } else {
            Dir::UpRight
        };
        let cell = index / 2;
        let t2 = (cell / self.size) as i64;
        let x2 = 2 * (cell % self.size) as i64 + t2 % 2;
        EdgeId {
            start: Point { x2, t2 },
            dir,
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.num_edges()).map(move |i| self.edge_at(i))
    }

    pub fn point_index(&self, p: Point) -> usize {
        p.t2 as usize * self.size + p.x2 as usize / 2
    }

    /// The two edges leaving the endpoint of `e`, up-left first.
    pub fn successors(&self, e: EdgeId) -> [EdgeId; 2] {
        self.outgoing(self.end(e))
    }

    /// The two edges entering the start of `f`, up-left first.
    pub fn predecessors(&self, f: EdgeId) -> [EdgeId; 2] {
        self.incoming(f.start)
    }

    pub fn outgoing(&self, p: Point) -> [EdgeId; 2] {
        [self.edge(p, Dir::UpLeft), self.edge(p, Dir::UpRight)]
    }

    pub fn incoming(&self, p: Point) -> [EdgeId; 2] {
        let from = |dx: i64| Point {
            x2: (p.x2 + dx).rem_euclid(self.modulus()),
            t2: (p.t2 - 1).rem_euclid(self.modulus()),
        };
        [
            self.edge(from(1), Dir::UpLeft),
            self.edge(from(-1), Dir::UpRight),
        ]
    }

    /// `a₀`: the up-right edge leaving the origin.
    pub fn a0(&self) -> EdgeId {
        self.edge(self.lattice_point(0, 0), Dir::UpRight)
    }

    /// `f_k(x,t)`: the edge of direction `k` leaving the integer point.
    pub fn f_edge(&self, k: u8, xs: i64, ts: i64) -> Result<EdgeId> {
        Ok(self.edge(self.lattice_point(xs, ts), Dir::from_component(k)?))
    }

    /// `e_k` ending at the point with half-step coordinates `(x2, t2)`.
    pub fn e_edge_half(&self, k: u8, x2: i64, t2: i64) -> Result<EdgeId> {
        let dir = Dir::from_component(k)?;
        self.point(x2, t2)?;
        self.point(x2 - dir.dx(), t2 - 1).map(|s| self.edge(s, dir))
    }

    /// `e_k(x,t)` for an integer point; `b_k = e_k(0,0)`.
    pub fn e_edge(&self, k: u8, xs: i64, ts: i64) -> Result<EdgeId> {
        self.e_edge_half(k, 2 * xs, 2 * ts)
    }

    pub fn b_edge(&self, k: u8) -> Result<EdgeId> {
        self.e_edge(k, 0, 0)
    }

    /// Weight `A(ef)` of the node formed by consecutive edges `e, f`.
    pub fn node_weight(&self, e: EdgeId, f: EdgeId) -> Result<Complex64> {
        if self.end(e) != f.start {
            return Err(Error::domain(format!(
                "{e:?} does not end where {f:?} starts"
            )));
        }
        Ok(self.weight_at(f.start.is_even(), e.dir == f.dir))
    }

    fn weight_at(&self, even: bool, straight: bool) -> Complex64 {
        let mu = self.params.mu();
        let delta = self.params.delta;
        if even {
            let norm = (1.0 - delta * delta).sqrt();
            Complex64::new(if straight { 1.0 } else { -delta } / norm, 0.0)
        } else {
            let norm = (1.0 + mu * mu).sqrt();
            if straight {
                Complex64::new(1.0 / norm, 0.0)
            } else {
                let sign = if self.mutation == Some(Mutation::OddTurnSign) {
                    1.0
                } else {
                    -1.0
                };
                Complex64::new(0.0, sign * mu / norm)
            }
        }
    }

    /// `U` with `U[f][e] = A(ef)` for consecutive edges and 0 otherwise.
    pub fn transfer_matrix(&self) -> Result<DMatrix<Complex64>> {
        if self.size > DENSE_MAX {
            return Err(Error::size(format!(
                "dense transfer matrix limited to T <= {DENSE_MAX}, got {}",
                self.size
            )));
        }
        let n = self.num_edges();
        let mut u = DMatrix::zeros(n, n);
        for e in self.edges() {
            for f in self.successors(e) {
                u[(self.edge_index(f), self.edge_index(e))] = self.node_weight(e, f)?;
            }
        }
        Ok(u)
    }

    /// `√(1−δ²)·√(1+m²ε²)`.
    pub fn alpha(&self) -> f64 {
        let d = self.params.delta;
        (1.0 - d * d).sqrt() * (1.0 + self.params.mu().powi(2)).sqrt()
    }

    /// Smallest `|α cos ωε − cos pε − imεδ|` over the dual torus; zero exactly
    /// when the loop expansion is degenerate.
    pub fn spectral_gap(&self) -> f64 {
        let (alpha, mu, d) = (self.alpha(), self.params.mu(), self.params.delta);
        let n = self.size;
        let mut gap = f64::INFINITY;
        for j in 0..n {
            let cp = (2.0 * PI * j as f64 / n as f64).cos();
            for l in 0..n {
                let cw = (2.0 * PI * l as f64 / n as f64).cos();
                gap = gap.min(Complex64::new(alpha * cw - cp, -mu * d).norm());
            }
        }
        gap
    }

    fn ensure_nondegenerate(&self) -> Result<()> {
        let gap = self.spectral_gap();
        if gap < 1e-12 {
            return Err(Error::Degenerate(format!(
                "Z = 0 on the torus of size {} (m={}, eps={}, delta={})",
                self.size, self.params.m, self.params.eps, self.params.delta
            )));
        }
        Ok(())
    }

    /// Sum of arrows of all loop configurations, as `det(I − U)` for
    /// `T ≤ 8` and by the product over the dual torus up to `T = 64`.
    pub fn partition_function(&self) -> Result<Complex64> {
        if self.size <= DENSE_MAX {
            Ok(self.partition_function_det()?)
        } else {
            self.partition_function_product()
        }
    }

    pub fn partition_function_det(&self) -> Result<Complex64> {
        let u = self.transfer_matrix()?;
        let n = u.nrows();
        Ok((DMatrix::identity(n, n) - u).lu().determinant())
    }

    /// `2^{T²} ∏_{p,ω} (cos ωε − (cos pε + imεδ)/α)`.
    pub fn partition_function_product(&self) -> Result<Complex64> {
        if self.size > PRODUCT_MAX {
            return Err(Error::size(format!(
                "product formula limited to T <= {PRODUCT_MAX}"
            )));
        }
        let (alpha, mu, d) = (self.alpha(), self.params.mu(), self.params.delta);
        let n = self.size;
        let mut z = Complex64::new(1.0, 0.0);
        for j in 0..n {
            let cp = (2.0 * PI * j as f64 / n as f64).cos();
            for l in 0..n {
                let cw = (2.0 * PI * l as f64 / n as f64).cos();
                z *= (Complex64::new(cw, 0.0) - Complex64::new(cp, mu * d) / alpha) * 2.0;
            }
        }
        if !z.is_finite() {
            return Err(Error::numeric("partition function overflows f64", z));
        }
        Ok(z)
    }

    /// All arrows `A(a→f)` at once, as `(I − U)⁻¹`.
    pub fn arrows(&self) -> Result<ArrowMatrix> {
        self.ensure_nondegenerate()?;
        let u = self.transfer_matrix()?;
        let n = u.nrows();
        let inv = (DMatrix::identity(n, n) - u)
            .lu()
            .try_inverse()
            .ok_or_else(|| Error::Degenerate("I - U is singular".into()))?;
        Ok(ArrowMatrix {
            lattice: *self,
            inverse: inv,
        })
    }

    pub fn arrow(&self, a: EdgeId, f: EdgeId) -> Result<Complex64> {
        Ok(self.arrows()?.get(a, f))
    }
}

/// `(I − U)⁻¹`; entry `[f][a]` is the arrow from `a` to `f`.
#[derive(Debug, Clone)]
pub struct ArrowMatrix {
    lattice: TorusLattice,
    inverse: DMatrix<Complex64>,
}

impl ArrowMatrix {
    pub fn get(&self, a: EdgeId, f: EdgeId) -> Complex64 {
        self.inverse[(self.lattice.edge_index(f), self.lattice.edge_index(a))]
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.inverse
    }

    pub fn lattice(&self) -> &TorusLattice {
        &self.lattice
    }
}
