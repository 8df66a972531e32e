use anticheckers::torus::{
    arrows_dft, infinite_limit_trace, loop_configurations, EdgeId, LimitSchedule, TorusLattice,
    DENSE_MAX, ENUMERATION_MAX,
};
use anticheckers::LatticeParams;
use clap::Args;

use super::emit;
use crate::output::{Cell, Format, Table};
use crate::{Common, Failure};

#[derive(Args, Debug)]
pub struct TorusArgs {
    /// Torus size: `T×T` lattice points and as many dual points.
    #[arg(long = "T", short = 'T')]
    pub size: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,
    #[arg(long, default_value_t = 1.0)]
    pub eps: f64,
    /// Regulator (imaginary mass) in `[0, 1)`.
    #[arg(long, default_value_t = 0.3)]
    pub delta: f64,
    /// List every loop configuration with its arrow (`T ≤ 2`).
    #[arg(long, conflicts_with = "limit")]
    pub enumerate: bool,
    /// Approximate the infinite-lattice propagator at `(x, t)`: `T → ∞`
    /// first, then `δ → 0`.
    #[arg(long)]
    pub limit: bool,
    #[arg(
        long,
        default_value_t = 0.0,
        allow_hyphen_values = true,
        requires = "limit"
    )]
    pub x: f64,
    #[arg(
        long,
        default_value_t = 0.0,
        allow_hyphen_values = true,
        requires = "limit"
    )]
    pub t: f64,
    /// Regulators for `--limit`, decreasing.
    #[arg(long, value_delimiter = ',', requires = "limit")]
    pub deltas: Option<Vec<f64>>,
    /// Fixed torus sizes for `--limit`; `--T` alone means a single size.
    #[arg(long, value_delimiter = ',', requires = "limit")]
    pub sizes: Option<Vec<usize>>,
}

pub fn run(args: &TorusArgs, common: &Common) -> Result<(), Failure> {
    let params = LatticeParams::new(args.m, args.eps).with_delta(args.delta);
    let table = if args.limit {
        limit(args, params)?
    } else {
        let size = args
            .size
            .ok_or_else(|| Failure::Usage("--T is required unless --limit is given".into()))?;
        let lat = TorusLattice::new(size, params)?;
        if args.enumerate {
            enumerate(&lat)?
        } else {
            arrows(&lat)?
        }
    };
    emit(&table, common, Format::Csv)
}

fn direction(e: EdgeId) -> i64 {
    e.dir.component() as i64
}

/// `Z` first, then the arrows out of `a₀` (`T ≤ 8`, inverse matrix) or out of
/// `b₂` (larger sizes, Fourier sum).
fn arrows(lat: &TorusLattice) -> Result<Table, Failure> {
    let mut table = Table::new(&["quantity", "source", "x2", "t2", "dir", "re", "im"]);
    let z = lat.partition_function()?;
    table.push(vec![
        "Z".into(),
        Cell::Empty,
        Cell::Empty,
        Cell::Empty,
        Cell::Empty,
        z.re.into(),
        z.im.into(),
    ]);
    let targets: Vec<EdgeId> = lat.edges().collect();
    let (source, values) = if lat.size() <= DENSE_MAX {
        let m = lat.arrows()?;
        (
            "a0",
            targets
                .iter()
                .map(|&f| m.get(lat.a0(), f))
                .collect::<Vec<_>>(),
        )
    } else {
        ("b2", arrows_dft(lat, &targets)?)
    };
    for (f, v) in targets.iter().zip(values) {
        table.push(vec![
            "arrow".into(),
            source.into(),
            f.start.x2.into(),
            f.start.t2.into(),
            direction(*f).into(),
            v.re.into(),
            v.im.into(),
        ]);
    }
    Ok(table)
}

fn enumerate(lat: &TorusLattice) -> Result<Table, Failure> {
    if lat.size() > ENUMERATION_MAX {
        return Err(Failure::Usage(format!(
            "enumeration is limited to T <= {ENUMERATION_MAX}, got {}",
            lat.size()
        )));
    }
    let mut table = Table::new(&[
        "configuration",
        "edges",
        "loops",
        "turns",
        "re_arrow",
        "im_arrow",
    ]);
    for s in loop_configurations(lat, &[], &[])? {
        let name = s.name(lat).unwrap_or_else(|| format!("{:#x}", s.edges));
        table.push(vec![
            name.into(),
            format!("{:#x}", s.edges).into(),
            (s.loops.len() as i64).into(),
            (s.turns as i64).into(),
            s.arrow.re.into(),
            s.arrow.im.into(),
        ]);
    }
    Ok(table)
}

fn limit(args: &TorusArgs, params: LatticeParams) -> Result<Table, Failure> {
    let mut schedule = LimitSchedule::default();
    if let Some(d) = &args.deltas {
        schedule.deltas = d.clone();
    }
    schedule.sizes = match (&args.sizes, args.size) {
        (Some(s), _) => Some(s.clone()),
        (None, Some(t)) => Some(vec![t]),
        (None, None) => None,
    };
    let trace = infinite_limit_trace(args.x, args.t, &params, &schedule)?;
    let mut table = Table::new(&[
        "delta",
        "size",
        "re_A1",
        "im_A1",
        "re_A2",
        "im_A2",
        "saturation",
    ]);
    for (i, s) in trace.steps.iter().enumerate() {
        let last_of_delta = trace.steps.get(i + 1).is_none_or(|n| n.delta != s.delta);
        let sat = if last_of_delta {
            let k = schedule
                .deltas
                .iter()
                .position(|&d| d == s.delta)
                .expect("delta from schedule");
            Cell::Num(trace.saturation[k])
        } else {
            Cell::Empty
        };
        table.push(vec![
            s.delta.into(),
            (s.size as i64).into(),
            s.value.a1.re.into(),
            s.value.a1.im.into(),
            s.value.a2.re.into(),
            s.value.a2.im.into(),
            sat,
        ]);
    }
    let e = trace.estimate;
    table.push(vec![
        0.0.into(),
        Cell::Empty,
        e.a1.re.into(),
        e.a1.im.into(),
        e.a2.re.into(),
        e.a2.im.into(),
        Cell::Empty,
    ]);
    Ok(table)
}
