//! Two identical right electrons in the checkers model with `m = ε = 1`.
//!
//! Each electron starts with a move up-right; the amplitude to find them
//! arriving at `F` via `E` and at `F′` via `E′` is the antisymmetrized
//! product of single-electron path sums. A path sum with a fixed last move is
//! one component of the checkers amplitude: `a₁` for a last move up-left,
//! `i·a₂` for a last move up-right.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::checkers::dp_row;
use crate::error::{Error, Result};

/// Largest time for which two-electron amplitudes are evaluated.
pub const MAX_TWO_ELECTRON_STEPS: i64 = 12;

/// Direction of the final move into the point `F = (x, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LastMove {
    /// From `E = (x − 1, t − 1)`.
    UpRight,
    /// From `E = (x + 1, t − 1)`.
    UpLeft,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinalMove {
    pub x: i64,
    pub last: LastMove,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoElectronQuery {
    /// Start of the second electron, `A′ = (x0, 0)`; the first starts at the origin.
    pub x0: i64,
    pub t: i64,
    pub first: FinalMove,
    pub second: FinalMove,
}

impl TwoElectronQuery {
    /// Final states that differ only by exchanging the two electrons are the
    /// same state; it is counted once, with `x′ ≥ x` when both last moves agree.
    pub fn validate(&self) -> Result<()> {
        if self.x0 == 0 {
            return Err(Error::domain(
                "the two electrons must start at different points",
            ));
        }
        check_time(self.t)?;
        if self.first.last == self.second.last && self.second.x < self.first.x {
            return Err(Error::domain(
                "with equal last moves the final points must satisfy x' >= x",
            ));
        }
        Ok(())
    }
}

fn check_time(t: i64) -> Result<()> {
    if t < 1 {
        return Err(Error::domain(format!("time must be positive, got {t}")));
    }
    if t > MAX_TWO_ELECTRON_STEPS {
        return Err(Error::size(format!(
            "two-electron amplitudes limited to t <= {MAX_TWO_ELECTRON_STEPS}, got {t}"
        )));
    }
    Ok(())
}

/// Sum of `a(s)` over checker paths starting at `(start, 0)` with the move to
/// `(start + 1, 1)` and ending with the given move at time `t`.
pub fn path_sum(start: i64, mv: FinalMove, t: i64) -> Result<Complex64> {
    check_time(t)?;
    let rel = mv.x - start;
    if rel.abs() > t {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let a = dp_row(t, 1.0)[(rel + t) as usize];
    Ok(match mv.last {
        LastMove::UpLeft => Complex64::new(a.a1, 0.0),
        LastMove::UpRight => Complex64::new(0.0, a.a2),
    })
}

/// The antisymmetrized amplitude without the ordering convention; it changes
/// sign when `first` and `second` are exchanged.
pub fn antisymmetrized_amplitude(
    x0: i64,
    t: i64,
    first: FinalMove,
    second: FinalMove,
) -> Result<Complex64> {
    let direct = path_sum(0, first, t)? * path_sum(x0, second, t)?;
    let exchanged = path_sum(0, second, t)? * path_sum(x0, first, t)?;
    Ok(direct - exchanged)
}

pub fn two_electron_amplitude(q: &TwoElectronQuery) -> Result<Complex64> {
    q.validate()?;
    antisymmetrized_amplitude(q.x0, q.t, q.first, q.second)
}

pub fn probability(q: &TwoElectronQuery) -> Result<f64> {
    Ok(two_electron_amplitude(q)?.norm_sqr())
}

/// Sum of the probabilities of all distinguishable final states at time `t`.
/// With different last moves, `(EF, E'F')` and `(E'F', EF)` are the same
/// state, so only one order of the two moves is summed.
pub fn total_probability(x0: i64, t: i64) -> Result<f64> {
    let pairs = [
        (LastMove::UpRight, LastMove::UpRight),
        (LastMove::UpLeft, LastMove::UpLeft),
        (LastMove::UpRight, LastMove::UpLeft),
    ];
    let (lo, hi) = ((-t).min(x0 - t), t.max(x0 + t));
    let mut total = 0.0;
    for &(l1, l2) in &pairs {
        for x in lo..=hi {
            for xp in lo..=hi {
                let q = TwoElectronQuery {
                    x0,
                    t,
                    first: FinalMove { x, last: l1 },
                    second: FinalMove { x: xp, last: l2 },
                };
                if q.validate().is_ok() {
                    total += probability(&q)?;
                }
            }
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_move_paths() {
        let mv = FinalMove {
            x: 1,
            last: LastMove::UpRight,
        };
        assert_eq!(path_sum(0, mv, 1).unwrap(), Complex64::new(0.0, 1.0));
        let mv = FinalMove {
            x: 1,
            last: LastMove::UpLeft,
        };
        assert_eq!(path_sum(0, mv, 1).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn ordering_convention() {
        let mv = |x| FinalMove {
            x,
            last: LastMove::UpRight,
        };
        let q = TwoElectronQuery {
            x0: 2,
            t: 3,
            first: mv(3),
            second: mv(1),
        };
        assert!(two_electron_amplitude(&q).is_err());
        let q = TwoElectronQuery {
            x0: 0,
            t: 3,
            first: mv(1),
            second: mv(3),
        };
        assert!(two_electron_amplitude(&q).is_err());
        let q = TwoElectronQuery {
            x0: 2,
            t: 13,
            first: mv(1),
            second: mv(3),
        };
        assert!(matches!(two_electron_amplitude(&q), Err(Error::Size(_))));
    }
}
