//! Special-relativistic kinematics: Lorentz factor, position and momentum
//! moduli, and the first-order square uncertainties they inherit from
//! measured time, speed, and position-modulus errors.
//!
//! Formulas (speed of light c explicit everywhere):
//!
//! ```text
//! gamma   = (1 - v^2/c^2)^(-1/2)
//! x       = sqrt(c^2 t^2 - q^2) = c t / gamma   when q = v t
//! p       = gamma m0 v
//! (dx)^2  = gamma^2 c^2 dt^2 + gamma^2 (v/c)^2 dq^2
//! (dp)^2  = m0^2 gamma^6 dv^2
//! ```

use crate::error::{Error, Result};
use crate::measured::KinematicState;

fn check_light_speed(c: f64) -> Result<()> {
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::InvalidInput(format!(
            "speed of light must be finite and positive, got {c}"
        )));
    }
    Ok(())
}

/// Lorentz factor for speed `v` and light speed `c`.
///
/// Uses (1 - beta)(1 + beta) rather than 1 - beta^2: for beta in [1/2, 1) the
/// subtraction 1 - beta is exact, which keeps gamma accurate right up to the
/// superluminal guard.
pub fn lorentz_gamma(v: f64, c: f64) -> Result<f64> {
    check_light_speed(c)?;
    if !v.is_finite() || v < 0.0 {
        return Err(Error::InvalidInput(format!(
            "speed must be finite and non-negative, got {v}"
        )));
    }
    if v >= c {
        return Err(Error::SuperluminalSpeed { v, c });
    }
    let beta = v / c;
    Ok(1.0 / ((1.0 - beta) * (1.0 + beta)).sqrt())
}

/// Lorentz factor from the dimensionless speed beta = v/c.
pub fn lorentz_gamma_from_beta(beta: f64) -> Result<f64> {
    lorentz_gamma(beta, 1.0)
}

/// Inverse of [`lorentz_gamma_from_beta`]: beta = sqrt((gamma-1)(gamma+1))/gamma.
///
/// The factored radicand keeps full precision near gamma = 1, where the naive
/// 1 - 1/gamma^2 cancels.
pub fn beta_from_gamma(gamma: f64) -> Result<f64> {
    if !gamma.is_finite() || gamma < 1.0 {
        return Err(Error::GammaBelowOne(gamma));
    }
    Ok(((gamma - 1.0) * (gamma + 1.0)).sqrt() / gamma)
}

/// Position modulus sqrt(c^2 t^2 - q^2) of an event inside the light cone.
///
/// Equals c t / gamma when q = v t. Computed as sqrt((ct - q)(ct + q)), which
/// loses less precision than squaring first when q approaches ct.
pub fn position_modulus(t: f64, q: f64, c: f64) -> Result<f64> {
    check_light_speed(c)?;
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::NonpositiveTime(t));
    }
    if !q.is_finite() || q < 0.0 {
        return Err(Error::InvalidInput(format!(
            "spatial modulus must be finite and non-negative, got {q}"
        )));
    }
    let ct = c * t;
    if q >= ct {
        return Err(Error::SpacelikeInput { q, ct });
    }
    Ok(((ct - q) * (ct + q)).sqrt())
}

/// Relativistic momentum modulus gamma m0 v.
pub fn momentum_modulus(m0: f64, v: f64, c: f64) -> Result<f64> {
    if !(m0.is_finite() && m0 > 0.0) {
        return Err(Error::InvalidInput(format!(
            "rest mass must be finite and positive, got {m0}"
        )));
    }
    Ok(lorentz_gamma(v, c)? * m0 * v)
}

/// Square uncertainty of the position modulus:
/// gamma^2 c^2 dt^2 + gamma^2 (v/c)^2 dq^2. Reduces to c^2 dt^2 at v = 0.
pub fn delta_x_sq(state: &KinematicState, c: f64) -> Result<f64> {
    let gamma = lorentz_gamma(state.v, c)?;
    let beta = state.v / c;
    let g2 = gamma * gamma;
    Ok(g2 * (c * state.dt) * (c * state.dt) + g2 * (beta * state.dq) * (beta * state.dq))
}

/// Square uncertainty of the momentum modulus: m0^2 gamma^6 dv^2.
/// Reduces to m0^2 dv^2 at v = 0.
pub fn delta_p_sq(state: &KinematicState, c: f64) -> Result<f64> {
    let gamma = lorentz_gamma(state.v, c)?;
    let g3 = gamma.powi(3);
    let s = state.m0 * g3 * state.dv;
    Ok(s * s)
}

/// Which reading of "proper interval" to apply to a lab-frame duration.
///
/// Both conventions are in circulation, differing in which frame the given
/// interval `t` belongs to, so the choice is explicit rather than implied:
/// a moving clock's own elapsed time is the lab interval divided by gamma
/// ([`LabOverGamma`](ProperTimeConvention::LabOverGamma)); mapping the other
/// way multiplies by gamma
/// ([`GammaTimesLab`](ProperTimeConvention::GammaTimesLab)).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProperTimeConvention {
    LabOverGamma,
    GammaTimesLab,
}

/// Proper-time interval for a lab duration `t` under the chosen convention.
pub fn proper_time(t: f64, gamma: f64, convention: ProperTimeConvention) -> Result<f64> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::NonpositiveTime(t));
    }
    if !gamma.is_finite() || gamma < 1.0 {
        return Err(Error::GammaBelowOne(gamma));
    }
    Ok(match convention {
        ProperTimeConvention::LabOverGamma => t / gamma,
        ProperTimeConvention::GammaTimesLab => gamma * t,
    })
}

/// Smallest resolvable position-modulus uncertainty for momentum `p`:
/// dq >= hbar / (2 p).
pub fn de_broglie_min_dq(p: f64, hbar: f64) -> Result<f64> {
    if !(hbar.is_finite() && hbar > 0.0) {
        return Err(Error::InvalidInput(format!(
            "hbar must be finite and positive, got {hbar}"
        )));
    }
    if !p.is_finite() || p <= 0.0 {
        return Err(Error::ZeroMomentum);
    }
    Ok(hbar / (2.0 * p))
}

/// The propagated square uncertainties of one kinematic state, together with
/// the Lorentz factor they share.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelativisticUncertainties {
    pub delta_x_sq: f64,
    pub delta_p_sq: f64,
    pub gamma: f64,
}

impl RelativisticUncertainties {
    pub fn from_state(state: &KinematicState, c: f64) -> Result<Self> {
        Ok(Self {
            delta_x_sq: delta_x_sq(state, c)?,
            delta_p_sq: delta_p_sq(state, c)?,
            gamma: lorentz_gamma(state.v, c)?,
        })
    }
}
