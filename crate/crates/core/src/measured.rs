//! Value-with-uncertainty carriers.
//!
//! A measured quantity is a central value plus a one-standard-deviation
//! uncertainty (sigma). Sigmas are validated to be finite and non-negative at
//! construction; the propagation routines rely on that.

use std::fmt;

use crate::error::{Error, Result};

fn check_sigma(sigma: f64, what: &str) -> Result<()> {
    if !(sigma.is_finite() && sigma >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "{what} must be finite and non-negative, got {sigma}"
        )));
    }
    Ok(())
}

fn check_finite(value: f64, what: &str) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::InvalidInput(format!(
            "{what} must be finite, got {value}"
        )));
    }
    Ok(())
}

/// A scalar with a one-sigma uncertainty and an optional unit label.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasuredScalar {
    value: f64,
    sigma: f64,
    unit: String,
}

impl MeasuredScalar {
    pub fn new(value: f64, sigma: f64) -> Result<Self> {
        check_finite(value, "value")?;
        check_sigma(sigma, "sigma")?;
        Ok(Self {
            value,
            sigma,
            unit: String::new(),
        })
    }

    pub fn with_unit(mut self, unit: &str) -> Self {
        self.unit = unit.to_owned();
        self
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn unit(&self) -> &str {
        &self.unit
    }
}

impl fmt::Display for MeasuredScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {}", self.value, self.sigma)?;
        if !self.unit.is_empty() {
            write!(f, " {}", self.unit)?;
        }
        Ok(())
    }
}

/// Three components with per-component sigmas, sharing one unit label.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasuredVector3 {
    components: [f64; 3],
    sigmas: [f64; 3],
    unit: String,
}

impl MeasuredVector3 {
    pub fn new(components: [f64; 3], sigmas: [f64; 3]) -> Result<Self> {
        for (i, &x) in components.iter().enumerate() {
            check_finite(x, &format!("component {i}"))?;
        }
        for (i, &s) in sigmas.iter().enumerate() {
            check_sigma(s, &format!("sigma {i}"))?;
        }
        Ok(Self {
            components,
            sigmas,
            unit: String::new(),
        })
    }

    pub fn with_unit(mut self, unit: &str) -> Self {
        self.unit = unit.to_owned();
        self
    }

    pub fn components(&self) -> [f64; 3] {
        self.components
    }

    pub fn sigmas(&self) -> [f64; 3] {
        self.sigmas
    }

    pub fn unit(&self) -> &str {
        &self.unit
    }

    /// Euclidean modulus of the central values.
    pub fn norm(&self) -> f64 {
        vec_norm(&self.components)
    }

    /// Dot product of the central values with another vector's.
    pub fn dot(&self, other: &MeasuredVector3) -> f64 {
        vec_dot(&self.components, &other.components)
    }
}

impl fmt::Display for MeasuredVector3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} ± {}, {} ± {}, {} ± {})",
            self.components[0],
            self.sigmas[0],
            self.components[1],
            self.sigmas[1],
            self.components[2],
            self.sigmas[2],
        )?;
        if !self.unit.is_empty() {
            write!(f, " {}", self.unit)?;
        }
        Ok(())
    }
}

pub fn vec_norm(v: &[f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

pub fn vec_dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// One relativistic measurement setup: a particle of rest mass `m0` moving at
/// speed `v`, observed at lab time `t`, with measurement uncertainties on the
/// time (`dt`), the speed (`dv`), and the position modulus (`dq`).
///
/// The superluminal check `v < c` is deferred to the kinematics routines,
/// which know the speed of light in use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KinematicState {
    pub m0: f64,
    pub v: f64,
    pub t: f64,
    pub dt: f64,
    pub dv: f64,
    pub dq: f64,
}

impl KinematicState {
    pub fn new(m0: f64, v: f64, t: f64, dt: f64, dv: f64, dq: f64) -> Result<Self> {
        if !(m0.is_finite() && m0 > 0.0) {
            return Err(Error::InvalidInput(format!(
                "rest mass must be finite and positive, got {m0}"
            )));
        }
        if !(v.is_finite() && v >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "speed must be finite and non-negative, got {v}"
            )));
        }
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::NonpositiveTime(t));
        }
        check_sigma(dt, "dt")?;
        check_sigma(dv, "dv")?;
        check_sigma(dq, "dq")?;
        Ok(Self {
            m0,
            v,
            t,
            dt,
            dv,
            dq,
        })
    }
}
