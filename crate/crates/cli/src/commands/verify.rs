use std::io::Write;

use anticheckers::multiparticle::{
    det_arrow, pass_arrow, pass_arrow_bruteforce, pass_arrow_loop_form, perturbation_check,
    total_probability, FermiEdges, FermiParams,
};
use anticheckers::propagator::{
    charge_conservation, identity_suite, propagate_grid, propagate_hypergeometric,
    propagate_quadrature, GridRequest, Method,
};
use anticheckers::torus::{
    arrow_dft, bruteforce_loop_configs, finite_identity_suite, loop_configurations, EdgeId,
    Mutation, TorusLattice,
};
use anticheckers::{Complex, LatticeParams};
use clap::{Args, ValueEnum};
use serde::Serialize;

use crate::output::{self, Cell, Format, Table};
use crate::{Common, Failure};

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Flip the sign of the turn weight at odd points.
    OddTurnSign,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Run only the named checks (repeatable).
    #[arg(long)]
    pub only: Vec<String>,
    /// Corrupt the torus node weights to confirm that the suite notices.
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<Fault>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    /// `value ≤ limit`.
    Max,
    /// `value ≥ limit`.
    Min,
}

#[derive(Debug, Clone, Serialize)]
struct Check {
    name: String,
    kind: Kind,
    value: f64,
    limit: f64,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

impl Check {
    fn max(name: &str, value: f64, limit: f64) -> Self {
        Check {
            name: name.into(),
            kind: Kind::Max,
            value,
            limit,
            pass: value <= limit,
            note: None,
        }
    }

    fn min(name: &str, value: f64, limit: f64) -> Self {
        Check {
            name: name.into(),
            kind: Kind::Min,
            value,
            limit,
            pass: value >= limit,
            note: None,
        }
    }

    fn errored(name: &str, kind: Kind, limit: f64, e: impl std::fmt::Display) -> Self {
        Check {
            name: name.into(),
            kind,
            value: f64::NAN,
            limit,
            pass: false,
            note: Some(e.to_string()),
        }
    }
}

#[derive(Serialize)]
struct Report {
    tolerance: f64,
    fault: Option<Fault>,
    pass: bool,
    checks: Vec<Check>,
}

const IDENTITIES: &[&str] = &[
    "dirac-1",
    "dirac-2",
    "klein-gordon-1",
    "klein-gordon-2",
    "skew-symmetry",
    "initial-value",
    "charge-conservation",
    "huygens-sum",
    "huygens-finite",
    "mixed-recurrence-1",
    "mixed-recurrence-2",
    "three-term-1",
    "three-term-2",
];
const TORUS_IDENTITIES: &[&str] = &[
    "torus-initial-value",
    "torus-skew-symmetry",
    "torus-dirac",
    "torus-adjoint-dirac",
    "torus-huygens",
    "torus-inverse-determinant",
];

struct Ctx {
    tol: f64,
    fault: Option<Fault>,
}

impl Ctx {
    fn torus(
        &self,
        size: usize,
        m: f64,
        eps: f64,
        delta: f64,
    ) -> anticheckers::Result<TorusLattice> {
        let lat = TorusLattice::new(size, LatticeParams::new(m, eps).with_delta(delta))?;
        Ok(match self.fault {
            Some(Fault::OddTurnSign) => lat.with_mutation(Mutation::OddTurnSign),
            None => lat,
        })
    }
}

type Group = (&'static [&'static str], fn(&Ctx) -> Vec<Check>);

const GROUPS: &[Group] = &[
    (IDENTITIES, identities),
    (&["charge-sweep"], charge_sweep),
    (&["cross-method"], cross_method),
    (&["table-2"], table_two),
    (TORUS_IDENTITIES, torus_identities),
    (&["torus-routes"], torus_routes),
    (&["two-electron-conservation"], two_electrons),
    (&["determinant-formula", "pass-or-loop"], sources),
    (&["perturbation-slope"], perturbation),
];

const PARAMETER_SETS: [(f64, f64); 3] = [(1.0, 1.0), (0.5, 1.0), (2.0, 0.5)];

fn identities(ctx: &Ctx) -> Vec<Check> {
    let mut worst = vec![0.0f64; IDENTITIES.len()];
    for (m, eps) in PARAMETER_SETS {
        let report = match identity_suite(&LatticeParams::new(m, eps), 6, ctx.tol) {
            Ok(r) => r,
            Err(e) => {
                return IDENTITIES
                    .iter()
                    .map(|n| Check::errored(n, Kind::Max, ctx.tol, &e))
                    .collect()
            }
        };
        for (w, name) in worst.iter_mut().zip(IDENTITIES) {
            let r = report.check(name).map_or(f64::NAN, |c| c.max_residual);
            *w = if r.is_nan() { f64::NAN } else { w.max(r) };
        }
    }
    IDENTITIES
        .iter()
        .zip(worst)
        .map(|(n, w)| Check::max(n, w, ctx.tol))
        .collect()
}

fn charge_sweep(_: &Ctx) -> Vec<Check> {
    let mut worst = 0.0f64;
    for (m, eps) in PARAMETER_SETS {
        match charge_conservation(&LatticeParams::new(m, eps), 32, 0) {
            Ok(r) => worst = worst.max(r.max_residual),
            Err(e) => return vec![Check::errored("charge-sweep", Kind::Max, 1e-8, e)],
        }
    }
    vec![Check::max("charge-sweep", worst, 1e-8)]
}

fn cross_method(_: &Ctx) -> Vec<Check> {
    let run = || -> anticheckers::Result<f64> {
        let mut worst = 0.0f64;
        for (m, eps) in [(1.0, 0.5), (1.0, 1.0)] {
            let p = LatticeParams::new(m, eps);
            for ts in -4i64..=4 {
                let t = ts as f64 * eps;
                let req = GridRequest {
                    x_min: -4.0 * eps,
                    x_max: 4.0 * eps,
                    t,
                    params: p,
                    method: Method::Dp,
                };
                for e in propagate_grid(&req)? {
                    let q = propagate_quadrature(e.x, t, &p)?;
                    let h = propagate_hypergeometric(e.x, t, &p)?;
                    worst = worst
                        .max(q.max_diff(&h))
                        .max(q.max_diff(&e.value))
                        .max(h.max_diff(&e.value));
                }
            }
        }
        Ok(worst)
    };
    vec![match run() {
        Ok(w) => Check::max("cross-method", w, 1e-8),
        Err(e) => Check::errored("cross-method", Kind::Max, 1e-8, e),
    }]
}

/// Arrows of the nine loop configurations on the smallest torus.
fn table_two(ctx: &Ctx) -> Vec<Check> {
    let (m, eps, delta): (f64, f64, f64) = (1.3, 0.8, 0.35);
    let mu = m * eps;
    let n = (1.0 - delta * delta).sqrt() * (1.0 + mu * mu).sqrt();
    let c = Complex::new;
    let want = [
        c(1.0, 0.0),
        c(0.0, -mu * delta / n),
        c(0.0, -mu * delta / n),
        c(-1.0 / n, 0.0),
        c(-1.0 / n, 0.0),
        c(mu * mu / (n * n), 0.0),
        c(-delta * delta / (n * n), 0.0),
        c(-mu * mu * delta * delta / (n * n), 0.0),
        c(1.0 / (n * n), 0.0),
    ];
    let run = || -> anticheckers::Result<f64> {
        let lat = ctx.torus(1, m, eps, delta)?;
        let configs = loop_configurations(&lat, &[], &[])?;
        if configs.len() != want.len() {
            return Ok(f64::INFINITY);
        }
        Ok(configs
            .iter()
            .zip(want)
            .map(|(s, w)| (s.arrow - w).norm())
            .fold(0.0, f64::max))
    };
    vec![match run() {
        Ok(w) => Check::max("table-2", w, 1e-12),
        Err(e) => Check::errored("table-2", Kind::Max, 1e-12, e),
    }]
}

fn torus_identities(ctx: &Ctx) -> Vec<Check> {
    let mut worst = vec![0.0f64; TORUS_IDENTITIES.len()];
    for size in 1..=3 {
        let report = match ctx
            .torus(size, 1.1, 0.9, 0.3)
            .and_then(|lat| finite_identity_suite(&lat, ctx.tol))
        {
            Ok(r) => r,
            Err(e) => {
                return TORUS_IDENTITIES
                    .iter()
                    .map(|n| Check::errored(n, Kind::Max, ctx.tol, &e))
                    .collect();
            }
        };
        for (w, name) in worst.iter_mut().zip(TORUS_IDENTITIES) {
            let r = report
                .check(&name["torus-".len()..])
                .map_or(f64::NAN, |c| c.max_residual);
            *w = if r.is_nan() { f64::NAN } else { w.max(r) };
        }
    }
    TORUS_IDENTITIES
        .iter()
        .zip(worst)
        .map(|(n, w)| Check::max(n, w, ctx.tol))
        .collect()
}

/// Enumeration against the inverse matrix, and the Fourier sum against both.
fn torus_routes(ctx: &Ctx) -> Vec<Check> {
    let run = || -> anticheckers::Result<f64> {
        let mut worst = 0.0f64;
        for size in 1..=2 {
            let lat = ctx.torus(size, 1.1, 0.9, 0.3)?;
            let arrows = lat.arrows()?;
            let z = bruteforce_loop_configs(&lat, &[], &[])?.1;
            let b2 = lat.b_edge(2)?;
            let sources: Vec<EdgeId> = if size == 1 {
                lat.edges().collect()
            } else {
                vec![lat.a0(), b2]
            };
            for f in lat.edges() {
                for &a in &sources {
                    let num = bruteforce_loop_configs(&lat, &[a], &[f])?.0;
                    worst = worst.max((num / z - arrows.get(a, f)).norm());
                }
                worst = worst.max((arrow_dft(&lat, f)? - arrows.get(b2, f)).norm());
            }
        }
        Ok(worst)
    };
    vec![match run() {
        Ok(w) => Check::max("torus-routes", w, 1e-10),
        Err(e) => Check::errored("torus-routes", Kind::Max, 1e-10, e),
    }]
}

fn two_electrons(_: &Ctx) -> Vec<Check> {
    let mut worst = 0.0f64;
    for t in 1..=5 {
        for x0 in [1, 3, 7] {
            match total_probability(x0, t) {
                Ok(p) => worst = worst.max((p - 1.0).abs()),
                Err(e) => {
                    return vec![Check::errored(
                        "two-electron-conservation",
                        Kind::Max,
                        1e-12,
                        e,
                    )]
                }
            }
        }
    }
    vec![Check::max("two-electron-conservation", worst, 1e-12)]
}

fn sources(ctx: &Ctx) -> Vec<Check> {
    let run = || -> anticheckers::Result<(f64, f64)> {
        let lat = ctx.torus(2, 1.1, 0.9, 0.3)?;
        let e: Vec<EdgeId> = lat.edges().collect();
        let mut det = 0.0f64;
        for (a, b, f, g) in [(0, 5, 9, 14), (3, 12, 1, 7), (15, 6, 8, 4)] {
            let (src, snk) = ([e[a], e[b]], [e[f], e[g]]);
            let (num, z) = bruteforce_loop_configs(&lat, &src, &snk)?;
            det = det.max((num / z - det_arrow(&lat, &src, &snk)?).norm());
        }
        let mut pass = 0.0f64;
        for (a, m, f) in [(0, 3, 9), (4, 4, 12), (7, 1, 1), (10, 13, 2)] {
            let (a, m, f) = (e[a], e[m], e[f]);
            let explicit = pass_arrow(&lat, a, m, f)?;
            pass = pass
                .max((explicit - pass_arrow_loop_form(&lat, a, m, f)?).norm())
                .max((explicit - pass_arrow_bruteforce(&lat, a, m, f)?).norm());
        }
        Ok((det, pass))
    };
    match run() {
        Ok((d, p)) => vec![
            Check::max("determinant-formula", d, 1e-10),
            Check::max("pass-or-loop", p, 1e-12),
        ],
        Err(e) => vec![
            Check::errored("determinant-formula", Kind::Max, 1e-10, &e),
            Check::errored("pass-or-loop", Kind::Max, 1e-12, &e),
        ],
    }
}

fn perturbation(_: &Ctx) -> Vec<Check> {
    let run = || -> anticheckers::Result<f64> {
        let lat = TorusLattice::new(1, LatticeParams::new(1.0, 1.0).with_delta(0.3))?;
        let e: Vec<EdgeId> = lat.edges().collect();
        let fp = FermiParams {
            g: 0.0,
            m_e: 1.0,
            m_mu: 2.0,
            eps: 1.0,
            delta: 0.3,
            size: 1,
        };
        let edges = FermiEdges {
            a_e: e[1],
            a_mu: e[0],
            f_e: e[3],
            f_mu: e[2],
        };
        let report = perturbation_check(&fp, &edges, &[1e-2, 1e-3, 1e-4], 1.8)?;
        Ok(if report.pass {
            report.slope
        } else {
            report.slope.min(0.0)
        })
    };
    vec![match run() {
        Ok(s) => Check::min("perturbation-slope", s, 1.8),
        Err(e) => Check::errored("perturbation-slope", Kind::Min, 1.8, e),
    }]
}

pub fn tolerance() -> Result<f64, Failure> {
    match std::env::var("ANTICHECKERS_TOL") {
        Err(_) => Ok(DEFAULT_TOL),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
            _ => Err(Failure::Usage(format!(
                "ANTICHECKERS_TOL must be a positive number, got {s:?}"
            ))),
        },
    }
}

pub fn run(args: &VerifyArgs, common: &Common) -> Result<(), Failure> {
    let tol = tolerance()?;
    let known: Vec<&str> = GROUPS.iter().flat_map(|g| g.0.iter().copied()).collect();
    if let Some(bad) = args.only.iter().find(|n| !known.contains(&n.as_str())) {
        return Err(Failure::Usage(format!(
            "unknown check {bad:?}; known checks: {}",
            known.join(", ")
        )));
    }
    let ctx = Ctx {
        tol,
        fault: args.inject_fault,
    };
    let selected = |name: &str| args.only.is_empty() || args.only.iter().any(|n| n == name);
    let mut checks = Vec::new();
    for (names, run) in GROUPS {
        if names.iter().any(|n| selected(n)) {
            checks.extend(run(&ctx).into_iter().filter(|c| selected(&c.name)));
        }
    }
    let report = Report {
        tolerance: tol,
        fault: args.inject_fault,
        pass: checks.iter().all(|c| c.pass),
        checks,
    };

    let mut w = output::open(&common.out)?;
    match common.format.unwrap_or(Format::Json) {
        Format::Json => output::write_json(&report, &mut *w)?,
        Format::Csv => {
            let mut table = Table::new(&["name", "kind", "value", "limit", "pass", "note"]);
            for c in &report.checks {
                table.push(vec![
                    c.name.clone().into(),
                    if c.kind == Kind::Max { "max" } else { "min" }.into(),
                    c.value.into(),
                    c.limit.into(),
                    c.pass.to_string().into(),
                    c.note.clone().map_or(Cell::Empty, Cell::Text),
                ]);
            }
            output::write_table(&table, Format::Csv, &mut *w)?;
        }
    }
    w.flush()?;
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
