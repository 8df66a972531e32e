use anticheckers::continuum::{density_profile, propagator_profile, FigureSpec};
use clap::{Args, ValueEnum};

use super::emit;
use crate::output::{Format, Table};
use crate::{Common, Failure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    /// Normalized charge density against its continuum limit.
    Fig1,
    /// `Im Ã_k/4ε` against `Im G₁ₖ` and the Airy-zone approximation.
    Fig4,
}

#[derive(Args, Debug)]
pub struct FigureArgs {
    #[arg(value_enum)]
    pub which: Which,
    #[arg(long)]
    pub m: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub t: Option<f64>,
    /// Samples cover `|x| ≤ x-max`.
    #[arg(long)]
    pub x_max: Option<f64>,
    /// Propagator component shown by fig4.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub component: u8,
}

pub fn run(args: &FigureArgs, common: &Common) -> Result<(), Failure> {
    let base = match args.which {
        Which::Fig1 => FigureSpec::charge_density(),
        Which::Fig4 => FigureSpec::propagator(),
    };
    let spec = FigureSpec {
        m: args.m.unwrap_or(base.m),
        eps: args.eps.unwrap_or(base.eps),
        t: args.t.unwrap_or(base.t),
        x_max: args.x_max.unwrap_or(base.x_max),
    };
    if !(spec.x_max >= 0.0 && spec.x_max.is_finite()) {
        return Err(Failure::Usage(format!(
            "x-max must be nonnegative, got {}",
            spec.x_max
        )));
    }
    let mut rows = match args.which {
        Which::Fig1 => density_profile(&spec)?,
        Which::Fig4 => propagator_profile(&spec)?
            .into_iter()
            .filter(|r| r.component == args.component)
            .collect(),
    };
    rows.sort_by(|a, b| a.x.total_cmp(&b.x));
    let mut table = Table::new(&["x", "lattice_value", "continuum_value", "asymptotic_value"]);
    for r in rows {
        table.push(vec![
            r.x.into(),
            r.lattice_value.into(),
            r.continuum_value.into(),
            r.asymptotic_value.into(),
        ]);
    }
    emit(&table, common, Format::Csv)
}
