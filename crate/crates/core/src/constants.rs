//! Physical constants and unit-system selection.
//!
//! Every formula in this crate takes `hbar` and `c` as explicit inputs, so the
//! same code serves SI and natural units. [`PhysicalConstants`] bundles the two
//! values together with the mode they came from.

use crate::error::{Error, Result};

/// Reduced Planck constant in J*s (2018 CODATA, exact by definition).
pub const HBAR_SI: f64 = 1.054_571_817e-34;

/// Speed of light in vacuum in m/s (exact by definition).
pub const SPEED_OF_LIGHT_SI: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitMode {
    Si,
    Natural,
}

impl UnitMode {
    /// Lowercase name used in serialized output.
    pub fn name(self) -> &'static str {
        match self {
            UnitMode::Si => "si",
            UnitMode::Natural => "natural",
        }
    }
}

/// An `hbar`/`c` pair tagged with the unit system it belongs to.
///
/// Values are validated at construction (finite and positive) so downstream
/// formulas never have to re-check them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    hbar: f64,
    c: f64,
    mode: UnitMode,
}

impl PhysicalConstants {
    /// CODATA SI values.
    pub fn si() -> Self {
        Self {
            hbar: HBAR_SI,
            c: SPEED_OF_LIGHT_SI,
            mode: UnitMode::Si,
        }
    }

    /// Natural units: hbar = c = 1 exactly.
    pub fn natural() -> Self {
        Self {
            hbar: 1.0,
            c: 1.0,
            mode: UnitMode::Natural,
        }
    }

    /// Custom values tagged with the given mode. Both must be finite and positive.
    pub fn with_values(hbar: f64, c: f64, mode: UnitMode) -> Result<Self> {
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::InvalidInput(format!(
                "hbar must be finite and positive, got {hbar}"
            )));
        }
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::InvalidInput(format!(
                "c must be finite and positive, got {c}"
            )));
        }
        Ok(Self { hbar, c, mode })
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Unreduced Planck constant, h = 2*pi*hbar.
    pub fn h(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.hbar
    }

    pub fn mode(&self) -> UnitMode {
        self.mode
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::si()
    }
}
