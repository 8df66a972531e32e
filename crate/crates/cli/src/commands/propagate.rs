use anticheckers::propagator::{propagate_grid, GridRequest, Method as Route};
use anticheckers::LatticeParams;
use clap::{Args, ValueEnum};

use super::{emit, Span};
use crate::output::{Format, Table};
use crate::{Common, Failure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Quadrature,
    Hypergeometric,
    Dp,
}

impl From<Method> for Route {
    fn from(m: Method) -> Self {
        match m {
            Method::Quadrature => Route::Quadrature,
            Method::Hypergeometric => Route::Hypergeometric,
            Method::Dp => Route::Dp,
        }
    }
}

#[derive(Args, Debug)]
pub struct PropagateArgs {
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,
    #[arg(long, default_value_t = 1.0)]
    pub eps: f64,
    /// Time or time range `a..b`; every lattice time inside is evaluated.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Span,
    /// Position range `a..b`.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Span,
    #[arg(long, value_enum, default_value_t = Method::Quadrature)]
    pub method: Method,
}

pub fn run(args: &PropagateArgs, common: &Common) -> Result<(), Failure> {
    let params = LatticeParams::new(args.m, args.eps);
    params.validate_massive()?;
    let xs = args.x.steps(args.eps, "x")?;
    let ts = args.t.steps(args.eps, "t")?;
    let (x_min, x_max) = (xs[0] as f64 * args.eps, xs[xs.len() - 1] as f64 * args.eps);
    let method: Route = args.method.into();
    let mut table = Table::new(&["x", "t", "re_A1", "im_A1", "re_A2", "im_A2", "Q", "method"]);
    for t in ts {
        let req = GridRequest {
            x_min,
            x_max,
            t: t as f64 * args.eps,
            params,
            method,
        };
        for e in propagate_grid(&req)? {
            let v = e.value;
            table.push(vec![
                e.x.into(),
                e.t.into(),
                v.a1.re.into(),
                v.a1.im.into(),
                v.a2.re.into(),
                v.a2.im.into(),
                v.charge().into(),
                method.name().into(),
            ]);
        }
    }
    emit(&table, common, Format::Csv)
}
