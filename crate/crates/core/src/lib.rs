//! Feynman anticheckers: a lattice model of free electrons and positrons in
//! 1+1 dimensions.
//!
//! The propagator `Ã₁, Ã₂` is computed several independent ways (Fourier
//! quadrature, hypergeometric closed form, lattice Dirac marching, and the
//! loop expansion on a finite torus), and compared against the continuum
//! spin-1/2 Feynman propagator and its large-time asymptotics.

pub mod checkers;
pub mod continuum;
pub mod error;
pub mod multiparticle;
pub mod numerics;
pub mod params;
pub mod propagator;
pub mod torus;

pub use error::{Error, Result};
pub use numerics::Complex;
pub use params::LatticeParams;
