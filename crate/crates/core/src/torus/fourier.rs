//! Discrete Fourier evaluation of `A(b₂ → e_k)` on the torus.
//!
//! The double sum over the dual torus is the reference (`arrow_dft_direct`).
//! `arrow_dft` does the frequency sum in closed form: for fixed momentum the
//! denominator is `α(z − z₁)(z − z₂)/2z` in `z = e^{iωε}`, and
//! `(1/T) Σ_{z^T=1} z^K/(z − c)` equals `c^r/(1 − c^T)` with `r = (K−1) mod T`.
//! That leaves one sum of length `T`.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{EdgeId, TorusLattice};
use crate::error::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Which of the four closed forms applies, and the integer exponents.
#[derive(Debug, Clone, Copy)]
struct Target {
    k: u8,
    even: bool,
    xi: i64,
    tau: i64,
    at_origin: bool,
}

fn classify(lat: &TorusLattice, target: EdgeId) -> Target {
    let end = lat.end(target);
    let k = target.dir.component();
    if end.is_even() {
        Target {
            k,
            even: true,
            xi: end.x2 / 2,
            tau: end.t2 / 2,
            at_origin: end.x2 == 0 && end.t2 == 0,
        }
    } else {
        Target {
            k,
            even: false,
            xi: (end.x2 + 1) / 2,
            tau: (end.t2 + 1) / 2,
            at_origin: false,
        }
    }
}

struct Constants {
    n: usize,
    mu: f64,
    delta: f64,
    alpha: f64,
    root_mass: f64,
    root_reg: f64,
}

impl Constants {
    fn of(lat: &TorusLattice) -> Self {
        let p = lat.params();
        Constants {
            n: lat.size(),
            mu: p.mu(),
            delta: p.delta,
            alpha: lat.alpha(),
            root_mass: (1.0 + p.mu() * p.mu()).sqrt(),
            root_reg: (1.0 - p.delta * p.delta).sqrt(),
        }
    }

    fn angle(&self, j: i64) -> f64 {
        2.0 * PI * j.rem_euclid(self.n as i64) as f64 / self.n as f64
    }

    fn unit(&self, j: i64) -> Complex64 {
        Complex64::from_polar(1.0, self.angle(j))
    }
}

/// `A(b₂ → target)` by the double sum over the dual torus; `O(T²)`.
pub fn arrow_dft_direct(lat: &TorusLattice, target: EdgeId) -> Result<Complex64> {
    let c = Constants::of(lat);
    let tg = classify(lat, target);
    let n = c.n as i64;
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let (sp, cp) = c.angle(j).sin_cos();
        let ep = c.unit(j);
        for l in 0..n {
            let (sw, cw) = c.angle(l).sin_cos();
            let ew = c.unit(l);
            let den = Complex64::new(c.alpha * cw - cp, -c.mu * c.delta);
            if den.norm() < 1e-12 {
                return Err(Error::Degenerate(format!(
                    "Fourier denominator vanishes at torus size {}",
                    c.n
                )));
            }
            let num = match (tg.even, tg.k) {
                (true, 1) => c.mu - I * c.delta * ep,
                (true, _) => Complex64::new(c.alpha * sw + sp, 0.0),
                (false, 1) => c.mu * c.root_reg * ew - I * (c.delta * c.root_mass),
                (false, _) => c.root_mass * ep.conj() - c.root_reg * ew,
            };
            sum += num / den * c.unit(j * tg.xi - l * tg.tau);
        }
    }
    let scale = 1.0 / (2.0 * (n * n) as f64);
    let mut value = if !tg.even && tg.k == 2 {
        sum * scale
    } else {
        -I * sum * scale
    };
    if tg.even && tg.k == 2 && tg.at_origin {
        value += 0.5;
    }
    Ok(value)
}

/// `(1/T) Σ_{z^T=1} z^K/(z − c)` for one pole `c` and any `K`.
///
/// With `|c| ≤ 1` this is `c^r/(1 − c^T)`, `r = (K−1) mod T`; otherwise
/// `−c^{−s−1}/(1 − c^{−T})`, `s = (−K) mod T`. The exponents are reduced to
/// `|e| ≤ T/2` using the stored `T`-th power, which keeps `powi` cheap for
/// the small `|K|` that occur.
struct RootSum {
    base: Complex64,
    full: Complex64,
    den: Complex64,
    inside: bool,
    n: i64,
}

impl RootSum {
    fn new(c: Complex64, n: usize) -> Result<Self> {
        let inside = c.norm() <= 1.0;
        let base = if inside { c } else { c.inv() };
        let full = base.powi(n as i32);
        let den = Complex64::new(1.0, 0.0) - full;
        if den.norm() < 1e-13 {
            return Err(Error::Degenerate(format!(
                "frequency pole on the unit circle at torus size {n}"
            )));
        }
        Ok(RootSum {
            base,
            full,
            den,
            inside,
            n: n as i64,
        })
    }

    fn power(&self, r: i64) -> Complex64 {
        if 2 * r <= self.n {
            self.base.powi(r as i32)
        } else {
            self.full * self.base.powi((r - self.n) as i32)
        }
    }

    fn at(&self, power: i64) -> Complex64 {
        if self.inside {
            self.power((power - 1).rem_euclid(self.n)) / self.den
        } else {
            -self.power((-power).rem_euclid(self.n)) * self.base / self.den
        }
    }
}

#[cfg(test)]
fn root_sum(power: i64, c: Complex64, n: usize) -> Result<Complex64> {
    Ok(RootSum::new(c, n)?.at(power))
}

/// `A(b₂ → target)` with the frequency sum done in closed form; `O(T)`.
pub fn arrow_dft(lat: &TorusLattice, target: EdgeId) -> Result<Complex64> {
    Ok(arrows_dft(lat, &[target])?[0])
}

/// Several targets sharing one pass over the momenta.
pub fn arrows_dft(lat: &TorusLattice, targets: &[EdgeId]) -> Result<Vec<Complex64>> {
    let c = Constants::of(lat);
    let tgs: Vec<Target> = targets.iter().map(|&t| classify(lat, t)).collect();
    let mut sums = vec![Complex64::new(0.0, 0.0); tgs.len()];
    let n = c.n as i64;
    for j in 0..n {
        let (sp, cp) = c.angle(j).sin_cos();
        let ep = c.unit(j);
        let beta = Complex64::new(cp, c.mu * c.delta);
        let disc = (beta * beta - c.alpha * c.alpha).sqrt();
        let (z1, z2) = ((beta + disc) / c.alpha, (beta - disc) / c.alpha);
        if (z1 - z2).norm() < 1e-7 {
            // double root; sum the frequencies one by one
            for (s, tg) in sums.iter_mut().zip(&tgs) {
                *s += momentum_term_direct(&c, tg, j)?;
            }
            continue;
        }
        let (r1, r2) = (RootSum::new(z1, c.n)?, RootSum::new(z2, c.n)?);
        let front = 2.0 / (c.alpha * (z1 - z2));
        let w =
            |power: i64| -> Result<Complex64> { Ok(front * (r1.at(power + 1) - r2.at(power + 1))) };
        for (s, tg) in sums.iter_mut().zip(&tgs) {
            let tau = tg.tau;
            let inner = match (tg.even, tg.k) {
                (true, 1) => (c.mu - I * c.delta * ep) * w(-tau)?,
                (true, _) => (w(1 - tau)? - w(-1 - tau)?) * (c.alpha / (2.0 * I)) + w(-tau)? * sp,
                (false, 1) => {
                    w(1 - tau)? * (c.mu * c.root_reg) - I * (c.delta * c.root_mass) * w(-tau)?
                }
                (false, _) => ep.conj() * c.root_mass * w(-tau)? - w(1 - tau)? * c.root_reg,
            };
            *s += inner * c.unit(j * tg.xi);
        }
    }
    let scale = 1.0 / (2.0 * n as f64);
    Ok(sums
        .into_iter()
        .zip(&tgs)
        .map(|(s, tg)| {
            let mut v = if !tg.even && tg.k == 2 {
                s * scale
            } else {
                -I * s * scale
            };
            if tg.even && tg.k == 2 && tg.at_origin {
                v += 0.5;
            }
            v
        })
        .collect())
}

/// `(1/T) Σ_ω` of one momentum's summand, including `e^{ipx}`.
fn momentum_term_direct(c: &Constants, tg: &Target, j: i64) -> Result<Complex64> {
    let n = c.n as i64;
    let (sp, cp) = c.angle(j).sin_cos();
    let ep = c.unit(j);
    let mut sum = Complex64::new(0.0, 0.0);
    for l in 0..n {
        let (sw, cw) = c.angle(l).sin_cos();
        let ew = c.unit(l);
        let den = Complex64::new(c.alpha * cw - cp, -c.mu * c.delta);
        if den.norm() < 1e-12 {
            return Err(Error::Degenerate(format!(
                "Fourier denominator vanishes at torus size {n}"
            )));
        }
        let num = match (tg.even, tg.k) {
            (true, 1) => c.mu - I * c.delta * ep,
            (true, _) => Complex64::new(c.alpha * sw + sp, 0.0),
            (false, 1) => c.mu * c.root_reg * ew - I * (c.delta * c.root_mass),
            (false, _) => c.root_mass * ep.conj() - c.root_reg * ew,
        };
        sum += num / den * c.unit(-l * tg.tau);
    }
    Ok(sum / n as f64 * c.unit(j * tg.xi))
}
