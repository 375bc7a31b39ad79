//! Run configuration resolved from global flags, plus the propagate-command
//! config file: a flat `key = value` text format with `#` comments.
//!
//! ```text
//! # delta-method input
//! function = vector_norm
//! values   = 3, 4, 0
//! sigmas   = 0.1, 0.2, 0.3
//! ```

use std::path::PathBuf;

use relbound_core::dual::Scalar;
use relbound_core::propagation::{
    DifferentiableFn, LorentzFactorFn, MomentumFn, Norm3, PositionFn,
};
use relbound_core::{PhysicalConstants, UnitMode};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub constants: PhysicalConstants,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub seed: u64,
    pub samples: usize,
}

impl RunConfig {
    pub fn resolve(
        units: UnitMode,
        hbar_override: Option<f64>,
        c_override: Option<f64>,
        format: Format,
        output: Option<PathBuf>,
        seed: u64,
        samples: usize,
    ) -> Result<Self, CliError> {
        let base = match units {
            UnitMode::Si => PhysicalConstants::si(),
            UnitMode::Natural => PhysicalConstants::natural(),
        };
        let hbar = hbar_override.unwrap_or_else(|| base.hbar());
        let c = c_override.unwrap_or_else(|| base.c());
        let constants = PhysicalConstants::with_values(hbar, c, units)?;
        if samples < 2 {
            return Err(CliError::Validation(format!(
                "--samples must be at least 2, got {samples}"
            )));
        }
        Ok(Self {
            constants,
            format,
            output,
            seed,
            samples,
        })
    }
}

/// The functions the propagate command knows how to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    VectorNorm,
    Gamma,
    Momentum,
    PositionX,
}

impl Builtin {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "vector_norm" => Some(Builtin::VectorNorm),
            "gamma" => Some(Builtin::Gamma),
            "momentum" => Some(Builtin::Momentum),
            "position_x" => Some(Builtin::PositionX),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Builtin::VectorNorm => "vector_norm",
            Builtin::Gamma => "gamma",
            Builtin::Momentum => "momentum",
            Builtin::PositionX => "position_x",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Builtin::VectorNorm => 3,
            Builtin::Gamma => 1,
            Builtin::Momentum | Builtin::PositionX => 2,
        }
    }
}

/// A builtin bound to a speed of light, evaluable by the propagation engine.
pub struct BoundBuiltin {
    pub kind: Builtin,
    pub c: f64,
}

impl DifferentiableFn for BoundBuiltin {
    fn arity(&self) -> usize {
        self.kind.arity()
    }

    fn eval<S: Scalar>(&self, x: &[S]) -> S {
        match self.kind {
            Builtin::VectorNorm => Norm3.eval(x),
            Builtin::Gamma => LorentzFactorFn { c: self.c }.eval(x),
            Builtin::Momentum => MomentumFn { c: self.c }.eval(x),
            Builtin::PositionX => PositionFn { c: self.c }.eval(x),
        }
    }
}

/// Parsed propagate config file.
#[derive(Debug, Clone, PartialEq)]
pub struct PropagateSpec {
    pub function: Builtin,
    pub values: Vec<f64>,
    pub sigmas: Vec<f64>,
}

fn parse_list(raw: &str, key: &str, line_no: usize) -> Result<Vec<f64>, CliError> {
    raw.split(',')
        .map(|item| {
            item.trim().parse::<f64>().map_err(|_| {
                CliError::Usage(format!(
                    "config line {line_no}: cannot parse `{}` in `{key}` as a number",
                    item.trim()
                ))
            })
        })
        .collect()
}

pub fn parse_propagate_spec(text: &str) -> Result<PropagateSpec, CliError> {
    let mut function: Option<(Builtin, usize)> = None;
    let mut values: Option<Vec<f64>> = None;
    let mut sigmas: Option<Vec<f64>> = None;

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Usage(format!(
                "config line {line_no}: expected `key = value`, got `{line}`"
            )));
        };
        let (key, value) = (key.trim(), value.trim());
        match key {
            "function" => {
                if function.is_some() {
                    return Err(CliError::Usage(format!(
                        "config line {line_no}: duplicate key `function`"
                    )));
                }
                let builtin = Builtin::from_name(value).ok_or_else(|| {
                    CliError::Usage(format!(
                        "config line {line_no}: unknown function `{value}` \
                         (expected vector_norm, gamma, momentum, or position_x)"
                    ))
                })?;
                function = Some((builtin, line_no));
            }
            "values" => {
                if values.is_some() {
                    return Err(CliError::Usage(format!(
                        "config line {line_no}: duplicate key `values`"
                    )));
                }
                values = Some(parse_list(value, "values", line_no)?);
            }
            "sigmas" => {
                if sigmas.is_some() {
                    return Err(CliError::Usage(format!(
                        "config line {line_no}: duplicate key `sigmas`"
                    )));
                }
                sigmas = Some(parse_list(value, "sigmas", line_no)?);
            }
            _ => {
                return Err(CliError::Usage(format!(
                    "config line {line_no}: unknown key `{key}`"
                )));
            }
        }
    }

    let (function, _) =
        function.ok_or_else(|| CliError::Usage("config is missing `function`".into()))?;
    let values = values.ok_or_else(|| CliError::Usage("config is missing `values`".into()))?;
    let sigmas = sigmas.ok_or_else(|| CliError::Usage("config is missing `sigmas`".into()))?;

    if values.len() != function.arity() {
        return Err(CliError::Usage(format!(
            "function `{}` takes {} values, config lists {}",
            function.name(),
            function.arity(),
            values.len()
        )));
    }
    if sigmas.len() != function.arity() {
        return Err(CliError::Usage(format!(
            "function `{}` takes {} sigmas, config lists {}",
            function.name(),
            function.arity(),
            sigmas.len()
        )));
    }
    Ok(PropagateSpec {
        function,
        values,
        sigmas,
    })
}
