//! The three table-producing commands; `verify` lives in its own module.

use std::path::Path;

use relbound_core::bounds::min_delta_epsilon;
use relbound_core::kinematics::{lorentz_gamma, momentum_modulus, position_modulus};
use relbound_core::montecarlo::sample_function;
use relbound_core::propagation::propagate_sigma;
use relbound_core::{BoundReport, DifferentiableFn, Error};

use crate::config::{BoundBuiltin, Builtin, PropagateSpec, RunConfig};
use crate::error::CliError;
use crate::output::{Cell, Table};

/// Uniform beta grid; the endpoints land exactly on beta_min and beta_max.
pub fn zeta_sweep(
    beta_min: f64,
    beta_max: f64,
    steps: usize,
    config: &RunConfig,
) -> Result<Table, CliError> {
    if !(beta_min.is_finite() && beta_max.is_finite())
        || beta_min < 0.0
        || beta_min >= beta_max
        || beta_max >= 1.0
    {
        return Err(CliError::Usage(format!(
            "sweep range must satisfy 0 <= beta-min < beta-max < 1, got {beta_min}..{beta_max}"
        )));
    }
    if steps < 2 {
        return Err(CliError::Usage(format!(
            "--steps must be at least 2, got {steps}"
        )));
    }
    let mut rows = Vec::with_capacity(steps);
    let width = beta_max - beta_min;
    for i in 0..steps {
        let beta = if i == steps - 1 {
            beta_max
        } else {
            beta_min + width * (i as f64 / (steps - 1) as f64)
        };
        let report = BoundReport::evaluate(beta, &config.constants)?;
        rows.push(vec![
            Cell::Num(report.beta),
            Cell::Num(report.gamma),
            Cell::Num(report.zeta),
            Cell::Num(report.bound_xp),
            Cell::Num(report.bound_et),
        ]);
    }
    Ok(Table {
        columns: vec!["beta", "gamma", "zeta", "bound_xp", "bound_et"],
        rows,
    })
}

/// One-row report of every bound at a single speed; adds the minimum energy
/// spread when a timing window is given.
pub fn bounds(beta: f64, dt: Option<f64>, config: &RunConfig) -> Result<Table, CliError> {
    let report = BoundReport::evaluate(beta, &config.constants)?;
    let mut columns = vec![
        "beta",
        "gamma",
        "zeta",
        "bound_xp",
        "bound_xp_ultra",
        "bound_et",
        "bound_et_ultra",
    ];
    let mut row = vec![
        Cell::Num(report.beta),
        Cell::Num(report.gamma),
        Cell::Num(report.zeta),
        Cell::Num(report.bound_xp),
        Cell::Num(report.bound_xp_ultra),
        Cell::Num(report.bound_et),
        Cell::Num(report.bound_et_ultra),
    ];
    if let Some(dt) = dt {
        columns.push("min_delta_epsilon");
        row.push(Cell::Num(min_delta_epsilon(
            dt,
            report.gamma,
            config.constants.hbar(),
        )?));
    }
    Ok(Table {
        columns,
        rows: vec![row],
    })
}

/// Reject inputs outside the builtin's domain with a precise error before
/// the engine sees them, so exit code 2 carries a useful message.
fn validate_domain(spec: &PropagateSpec, c: f64) -> Result<(), CliError> {
    match spec.function {
        Builtin::VectorNorm => {
            let v = &spec.values;
            if v[0] == 0.0 && v[1] == 0.0 && v[2] == 0.0 {
                return Err(Error::ZeroModulus.into());
            }
        }
        Builtin::Gamma => {
            lorentz_gamma(spec.values[0], c)?;
        }
        Builtin::Momentum => {
            momentum_modulus(spec.values[0], spec.values[1], c)?;
        }
        Builtin::PositionX => {
            position_modulus(spec.values[0], spec.values[1], c)?;
        }
    }
    Ok(())
}

/// Evaluate a config-file function, propagate its sigma, and (optionally)
/// cross-check the sigma by Monte Carlo.
pub fn propagate(path: &Path, mc: bool, config: &RunConfig) -> Result<Table, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let spec = crate::config::parse_propagate_spec(&text)?;
    validate_domain(&spec, config.constants.c())?;

    let f = BoundBuiltin {
        kind: spec.function,
        c: config.constants.c(),
    };
    let value: f64 = f.eval(&spec.values);
    let sigma = propagate_sigma(&f, &spec.values, &spec.sigmas)?;

    let mut columns = vec!["function", "value", "sigma"];
    let mut row = vec![
        Cell::Text(spec.function.name()),
        Cell::Num(value),
        Cell::Num(sigma),
    ];
    if mc {
        let summary = sample_function(&f, &spec.values, &spec.sigmas, config.samples, config.seed)?;
        columns.push("mc_sigma");
        columns.push("mc_rel_dev");
        row.push(Cell::Num(summary.std));
        row.push(if sigma == 0.0 {
            Cell::Missing
        } else {
            Cell::Num((summary.std - sigma) / sigma)
        });
    }
    Ok(Table {
        columns,
        rows: vec![row],
    })
}
