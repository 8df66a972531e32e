//! Feynman's original checkers model.
//!
//! A checker path moves by (±ε, ε) per step. Its amplitude is
//! `(1+m²ε²)^{1−n/2} · i · (−imε)^{turns}` with `n` the number of visited
//! points, and `a(x,t)` sums this over all paths from the origin to `(x,t)`
//! whose first move goes to `(ε,ε)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::LatticeParams;

/// Largest `t/ε` accepted by [`a_bruteforce`] (2^{t/ε−1} paths).
pub const MAX_BRUTEFORCE_STEPS: i64 = 22;

/// `a = a1 + i·a2`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CheckerAmplitude {
    pub a1: f64,
    pub a2: f64,
}

impl CheckerAmplitude {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.a1, self.a2)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.a1 * self.a1 + self.a2 * self.a2
    }
}

fn grid(x: f64, t: f64, params: &LatticeParams) -> Result<(i64, i64)> {
    params.validate()?;
    let xs = params.steps(x)?;
    let ts = params.steps(t)?;
    if ts <= 0 {
        return Err(Error::domain(format!(
            "checker amplitude needs t > 0, got {t}"
        )));
    }
    Ok((xs, ts))
}

/// Sum over all paths, each encoded as a bitmask of moves (bit set = move right).
pub fn a_bruteforce(x: f64, t: f64, params: &LatticeParams) -> Result<CheckerAmplitude> {
    let (xs, ts) = grid(x, t, params)?;
    if ts > MAX_BRUTEFORCE_STEPS {
        return Err(Error::size(format!(
            "path enumeration limited to t/ε ≤ {MAX_BRUTEFORCE_STEPS}, got {ts}"
        )));
    }
    let mu = params.mu();
    let steps = ts as u32;
    let mut sum = Complex64::new(0.0, 0.0);
    let turn_mask: u64 = (1u64 << (steps - 1)) - 1;
    // Bit 0 is the first move and is always to the right.
    for rest in 0..(1u64 << (steps - 1)) {
        let moves = (rest << 1) | 1;
        let rights = moves.count_ones() as i64;
        if 2 * rights - ts != xs {
            continue;
        }
        let turns = ((moves ^ (moves >> 1)) & turn_mask).count_ones() as i32;
        sum += Complex64::new(0.0, -mu).powi(turns);
    }
    let points = ts as f64 + 1.0;
    let amp = Complex64::i() * sum * (1.0 + mu * mu).powf(1.0 - points / 2.0);
    Ok(CheckerAmplitude {
        a1: amp.re,
        a2: amp.im,
    })
}

/// Marches the lattice Dirac equation
/// `a1(x,t) = (a1(x+ε,t−ε) + mε·a2(x+ε,t−ε))/√(1+m²ε²)`,
/// `a2(x,t) = (a2(x−ε,t−ε) − mε·a1(x−ε,t−ε))/√(1+m²ε²)`
/// from the single-path row `a(ε,ε) = i`.
pub fn a_dp(x: f64, t: f64, params: &LatticeParams) -> Result<CheckerAmplitude> {
    let (xs, ts) = grid(x, t, params)?;
    if xs.abs() > ts {
        return Ok(CheckerAmplitude::default());
    }
    let row = dp_row(ts, params.mu());
    Ok(row[(xs + ts) as usize])
}

/// Amplitudes at time `t_steps·ε` for `x/ε = −t_steps, …, t_steps`.
pub fn dp_row(t_steps: i64, mu: f64) -> Vec<CheckerAmplitude> {
    assert!(t_steps >= 1);
    let width = (2 * t_steps + 1) as usize;
    let centre = t_steps;
    let mut a1 = vec![0.0; width + 2];
    let mut a2 = vec![0.0; width + 2];
    // Stored with one cell of padding on each side: index = x + centre + 1.
    a2[(1 + centre + 1) as usize] = 1.0;
    let norm = 1.0 / (1.0 + mu * mu).sqrt();
    for _ in 2..=t_steps {
        let mut n1 = vec![0.0; width + 2];
        let mut n2 = vec![0.0; width + 2];
        for i in 1..=width {
            n1[i] = (a1[i + 1] + mu * a2[i + 1]) * norm;
            n2[i] = (a2[i - 1] - mu * a1[i - 1]) * norm;
        }
        a1 = n1;
        a2 = n2;
    }
    (1..=width)
        .map(|i| CheckerAmplitude {
            a1: a1[i],
            a2: a2[i],
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn unit() -> LatticeParams {
        LatticeParams::new(1.0, 1.0)
    }

    #[test]
    fn single_path_values() {
        let a = a_bruteforce(1.0, 1.0, &unit()).unwrap();
        assert_eq!((a.a1, a.a2), (0.0, 1.0));
        let a = a_bruteforce(0.0, 2.0, &unit()).unwrap();
        assert!((a.a1 - FRAC_1_SQRT_2).abs() < 1e-15 && a.a2.abs() < 1e-15);
        let a = a_dp(2.0, 2.0, &unit()).unwrap();
        assert!(a.a1.abs() < 1e-15 && (a.a2 - FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(
            a_bruteforce(3.0, 1.0, &unit()).unwrap(),
            CheckerAmplitude::default()
        );
    }

    #[test]
    fn leftmost_path() {
        // Right, then one turn, then straight left: amplitude i·(−imε)·(1+m²ε²)^{(1−t)/2}.
        for &m in &[0.5, 1.0, 2.0] {
            let p = LatticeParams::new(m, 1.0);
            for t in 2..10 {
                let tf = t as f64;
                let want = Complex64::new(0.0, 1.0)
                    * Complex64::new(0.0, -m)
                    * (1.0 + m * m).powf((1.0 - tf) / 2.0);
                let got = a_dp(-(tf - 2.0), tf, &p).unwrap().value();
                assert!((got - want).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn domain_and_size_errors() {
        assert!(a_bruteforce(0.0, 0.0, &unit()).is_err());
        assert!(a_dp(0.0, -2.0, &unit()).is_err());
        assert!(matches!(
            a_bruteforce(0.0, 24.0, &unit()),
            Err(Error::Size(_))
        ));
        assert!(a_dp(0.5, 2.0, &unit()).is_err());
    }

    #[test]
    fn dp_matches_enumeration() {
        for &m in &[0.5, 1.0, 2.0] {
            let p = LatticeParams::new(m, 1.0);
            for t in 1..=12 {
                for x in -t..=t {
                    let a = a_bruteforce(x as f64, t as f64, &p).unwrap();
                    let b = a_dp(x as f64, t as f64, &p).unwrap();
                    assert!((a.value() - b.value()).norm() < 1e-13, "m={m} x={x} t={t}");
                }
            }
        }
    }

    #[test]
    fn probability_is_conserved() {
        let p = LatticeParams::new(1.3, 0.7);
        for t in 1..=12 {
            let total: f64 = dp_row(t, p.mu()).iter().map(|a| a.norm_sqr()).sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn odd_parity_vanishes() {
        let p = LatticeParams::new(0.8, 1.0);
        let row = dp_row(7, p.mu());
        for (i, a) in row.iter().enumerate() {
            let x = i as i64 - 7;
            if (x + 7) % 2 != 0 {
                assert_eq!(a.norm_sqr(), 0.0);
            }
        }
    }
}
