use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical knobs of the lattice model.
///
/// `delta` is the small imaginary mass; only the torus model uses it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeParams {
    pub m: f64,
    pub eps: f64,
    pub delta: f64,
}

impl LatticeParams {
    pub fn new(m: f64, eps: f64) -> Self {
        LatticeParams { m, eps, delta: 0.0 }
    }

    pub fn with_delta(self, delta: f64) -> Self {
        LatticeParams { delta, ..self }
    }

    /// Dimensionless mass `mε`.
    pub fn mu(&self) -> f64 {
        self.m * self.eps
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return Err(Error::domain(format!(
                "lattice step must be positive, got {}",
                self.eps
            )));
        }
        if !(self.m >= 0.0 && self.m.is_finite()) {
            return Err(Error::domain(format!(
                "mass must be nonnegative, got {}",
                self.m
            )));
        }
        Ok(())
    }

    pub fn validate_massive(&self) -> Result<()> {
        self.validate()?;
        if self.m <= 0.0 {
            return Err(Error::domain("this evaluation path requires m > 0"));
        }
        Ok(())
    }

    pub fn validate_regulated(&self) -> Result<()> {
        self.validate()?;
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::domain(format!(
                "regulator must lie in (0,1), got {}",
                self.delta
            )));
        }
        Ok(())
    }

    /// Converts a coordinate to a whole number of lattice steps.
    pub fn steps(&self, coord: f64) -> Result<i64> {
        let s = coord / self.eps;
        let r = s.round();
        if (s - r).abs() > 1e-9 * (1.0 + r.abs()) {
            return Err(Error::domain(format!(
                "coordinate {coord} is not a multiple of the lattice step {}",
                self.eps
            )));
        }
        Ok(r as i64)
    }
}
