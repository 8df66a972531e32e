pub mod figure;
pub mod propagate;
pub mod torus;
pub mod verify;

use std::io::Write;
use std::str::FromStr;

use crate::output::{self, Format, Table};
use crate::{Common, Failure};

/// `a..b` or a single value `a`, in physical units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Span {
    pub lo: f64,
    pub hi: f64,
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |v: &str| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| format!("not a number: {v:?}"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b)?),
            None => {
                let v = num(s)?;
                (v, v)
            }
        };
        if !lo.is_finite() || !hi.is_finite() {
            return Err(format!("range must be finite: {s}"));
        }
        Ok(Span { lo, hi })
    }
}

impl Span {
    /// Lattice steps `j` with `jε` in the span; empty spans are an error.
    pub fn steps(&self, eps: f64, what: &str) -> Result<Vec<i64>, Failure> {
        let lo = (self.lo / eps - 1e-9).ceil() as i64;
        let hi = (self.hi / eps + 1e-9).floor() as i64;
        if lo > hi {
            return Err(Failure::Usage(format!(
                "{what} range {}..{} contains no multiple of the lattice step {eps}",
                self.lo, self.hi
            )));
        }
        Ok((lo..=hi).collect())
    }
}

pub fn emit(table: &Table, common: &Common, default: Format) -> Result<(), Failure> {
    let mut w = output::open(&common.out)?;
    output::write_table(table, common.format.unwrap_or(default), &mut *w)?;
    w.flush()?;
    Ok(())
}
