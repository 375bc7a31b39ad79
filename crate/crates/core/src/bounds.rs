//! Uncertainty-product lower bounds for relativistic measurements.
//!
//! The central object is the dimensionless coefficient
//!
//! ```text
//! zeta(gamma) = gamma^4 sqrt(2 - 1/gamma^2)
//! ```
//!
//! which multiplies hbar/2 in the position-momentum product bound for a
//! particle at Lorentz factor gamma. Its gamma^3 sibling bounds the
//! energy-time product, and each comes in an exact form and an
//! ultra-relativistic simplification (sqrt(2 - 1/gamma^2) -> sqrt(2)).
//! Alongside these live the Landau-style single-measurement floors and the
//! two vector-sigma checks that connect component-wise floors to the modulus
//! product.

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::kinematics::{delta_p_sq, delta_x_sq, lorentz_gamma, lorentz_gamma_from_beta};
use crate::measured::{vec_dot, vec_norm, KinematicState};
use std::f64::consts::FRAC_1_SQRT_2;

/// Relative slack for >= checks: rounding can leave an exactly saturated
/// product a few ulps under its floor, so satisfaction is judged against
/// rhs - 1e-12 * max(1, |rhs|). Exact saturation therefore counts as satisfied.
pub const INEQUALITY_REL_TOL: f64 = 1e-12;

/// Relative convergence tolerance of [`zeta_inverse`]'s bisection.
pub const ZETA_INVERSE_REL_TOL: f64 = 1e-10;

/// Outcome of a single lhs >= rhs comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
    /// lhs - rhs; negative when the inequality fails outright.
    pub slack: f64,
}

impl InequalityCheck {
    /// Judge lhs >= rhs with the standard rounding slack
    /// ([`INEQUALITY_REL_TOL`], floored at absolute scale 1).
    pub fn at_least(lhs: f64, rhs: f64) -> Self {
        let satisfied = lhs >= rhs - INEQUALITY_REL_TOL * rhs.abs().max(1.0);
        Self {
            lhs,
            rhs,
            satisfied,
            slack: lhs - rhs,
        }
    }

    /// Judge lhs >= rhs with a caller-chosen relative margin on rhs. Used for
    /// sampled quantities, where the margin reflects statistical noise rather
    /// than rounding.
    pub fn at_least_rel(lhs: f64, rhs: f64, rel_tol: f64) -> Self {
        let satisfied = lhs >= rhs - rel_tol * rhs.abs();
        Self {
            lhs,
            rhs,
            satisfied,
            slack: lhs - rhs,
        }
    }
}

fn check_hbar(hbar: f64) -> Result<()> {
    if !(hbar.is_finite() && hbar > 0.0) {
        return Err(Error::InvalidInput(format!(
            "hbar must be finite and positive, got {hbar}"
        )));
    }
    Ok(())
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !gamma.is_finite() || gamma < 1.0 {
        return Err(Error::GammaBelowOne(gamma));
    }
    Ok(())
}

/// The bound coefficient zeta(gamma) = gamma^4 sqrt(2 - 1/gamma^2).
///
/// zeta(1) = 1 exactly, and zeta grows like sqrt(2) gamma^4 once gamma is a
/// few units.
pub fn zeta(gamma: f64) -> Result<f64> {
    check_gamma(gamma)?;
    Ok(gamma.powi(4) * (2.0 - 1.0 / (gamma * gamma)).sqrt())
}

/// The gamma at which [`zeta`] reaches `target`, by bisection on [1, 1e6].
///
/// Converges to [`ZETA_INVERSE_REL_TOL`] relative on gamma; combine with
/// `beta_from_gamma` to express the answer as a speed.
pub fn zeta_inverse(target: f64) -> Result<f64> {
    const GAMMA_HI: f64 = 1e6;
    if !target.is_finite() || target < 1.0 {
        return Err(Error::InvalidInput(format!(
            "zeta target must be at least zeta(1) = 1, got {target}"
        )));
    }
    let max = zeta(GAMMA_HI)?;
    if target > max {
        return Err(Error::InvalidInput(format!(
            "zeta target {target} exceeds zeta(1e6) = {max}"
        )));
    }
    let (mut lo, mut hi) = (1.0_f64, GAMMA_HI);
    let mut mid = 0.5 * (lo + hi);
    while hi - lo > ZETA_INVERSE_REL_TOL * mid {
        if zeta(mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
        mid = 0.5 * (lo + hi);
    }
    Ok(mid)
}

/// Position-momentum product floor (hbar/2) zeta(gamma); hbar/2 at gamma = 1.
pub fn bound_xp_rel(gamma: f64, hbar: f64) -> Result<f64> {
    check_hbar(hbar)?;
    Ok(0.5 * hbar * zeta(gamma)?)
}

/// Ultra-relativistic simplification (sqrt(2)/2) hbar gamma^4; an upper
/// envelope of [`bound_xp_rel`] that it approaches from above as gamma grows.
pub fn bound_xp_ultra(gamma: f64, hbar: f64) -> Result<f64> {
    check_hbar(hbar)?;
    check_gamma(gamma)?;
    Ok(FRAC_1_SQRT_2 * hbar * gamma.powi(4))
}

/// Energy-time product floor (hbar/2) gamma^3 sqrt(2 - 1/gamma^2); equals
/// [`bound_xp_rel`] divided by gamma.
pub fn bound_et_rel(gamma: f64, hbar: f64) -> Result<f64> {
    check_hbar(hbar)?;
    check_gamma(gamma)?;
    Ok(0.5 * hbar * gamma.powi(3) * (2.0 - 1.0 / (gamma * gamma)).sqrt())
}

/// Ultra-relativistic energy-time floor (sqrt(2)/2) gamma^3 hbar; always at
/// or above [`bound_et_rel`].
pub fn bound_et_ultra(gamma: f64, hbar: f64) -> Result<f64> {
    check_hbar(hbar)?;
    check_gamma(gamma)?;
    Ok(FRAC_1_SQRT_2 * hbar * gamma.powi(3))
}

/// Smallest resolvable energy spread over a timing window dt:
/// [`bound_et_ultra`] divided by dt.
pub fn min_delta_epsilon(dt: f64, gamma: f64, hbar: f64) -> Result<f64> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::NonpositiveTime(dt));
    }
    Ok(bound_et_ultra(gamma, hbar)? / dt)
}

/// Momentum floor hbar / (2 dt (v' - v)) for a measurement of duration dt
/// that changes the speed from v to v'.
pub fn landau_dp_bound(dt: f64, v: f64, v_prime: f64, hbar: f64) -> Result<f64> {
    check_hbar(hbar)?;
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::NonpositiveTime(dt));
    }
    if !v.is_finite() || !v_prime.is_finite() || v_prime <= v {
        return Err(Error::DegenerateVelocities { v, v_prime });
    }
    Ok(hbar / (2.0 * dt * (v_prime - v)))
}

/// Position floor hbar c / (2 dE) for an energy resolution dE.
pub fn landau_dq_bound(de: f64, c: f64, hbar: f64) -> Result<f64> {
    check_hbar(hbar)?;
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::InvalidInput(format!(
            "speed of light must be finite and positive, got {c}"
        )));
    }
    if !de.is_finite() || de <= 0.0 {
        return Err(Error::NonpositiveEnergy(de));
    }
    Ok(hbar * c / (2.0 * de))
}

/// Energy floor hbar / (2 dt) for a measurement of duration dt.
pub fn landau_de_bound(dt: f64, hbar: f64) -> Result<f64> {
    check_hbar(hbar)?;
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::NonpositiveTime(dt));
    }
    Ok(hbar / (2.0 * dt))
}

fn check_sigma_triple(s: &[f64; 3], what: &str) -> Result<()> {
    for (i, &x) in s.iter().enumerate() {
        if !(x.is_finite() && x >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "{what}[{i}] must be finite and non-negative, got {x}"
            )));
        }
    }
    Ok(())
}

/// Each component product must sit at or above hbar/2 for the sum argument
/// to apply; judged with the same rounding slack as the checks themselves.
fn check_component_floors(dq: &[f64; 3], dp: &[f64; 3], hbar: f64) -> Result<()> {
    check_hbar(hbar)?;
    check_sigma_triple(dq, "dq")?;
    check_sigma_triple(dp, "dp")?;
    let floor = 0.5 * hbar;
    let tol = INEQUALITY_REL_TOL * floor.abs().max(1.0);
    for i in 0..3 {
        let product = dq[i] * dp[i];
        if product < floor - tol {
            return Err(Error::ComponentFloorViolated {
                index: i,
                product,
                floor,
            });
        }
    }
    Ok(())
}

/// Component-wise uncertainty sum: given per-component floors
/// dq_i dp_i >= hbar/2, verifies sum_i dq_i dp_i >= 3 hbar / 2.
///
/// The floors are a precondition, not part of the verdict — inputs below a
/// floor are outside the statement's hypothesis and error out.
pub fn check_component_hup(dq: &[f64; 3], dp: &[f64; 3], hbar: f64) -> Result<InequalityCheck> {
    check_component_floors(dq, dp, hbar)?;
    let sum = vec_dot(dq, dp);
    Ok(InequalityCheck::at_least(sum, 1.5 * hbar))
}

/// Modulus uncertainty product: under the same per-component floors, the
/// sigma-vector norms obey the chain
///
/// ```text
/// |dq| |dp|  >=  <dq, dp>  >=  3 hbar / 2  ( > hbar/2 )
/// ```
///
/// (the first step is Cauchy-Schwarz, the second the component sum).
/// Returns the tightest link — the comparison with the least slack — so a
/// near-failure is visible rather than averaged away.
pub fn check_modulus_hup(dq: &[f64; 3], dp: &[f64; 3], hbar: f64) -> Result<InequalityCheck> {
    check_component_floors(dq, dp, hbar)?;
    let dot = vec_dot(dq, dp);
    let norms = vec_norm(dq) * vec_norm(dp);
    let links = [
        InequalityCheck::at_least(norms, dot),
        InequalityCheck::at_least(dot, 1.5 * hbar),
        InequalityCheck::at_least(norms, 0.5 * hbar),
    ];
    Ok(links
        .into_iter()
        .min_by(|a, b| a.slack.total_cmp(&b.slack))
        .expect("three links"))
}

/// The exact decomposition of the uncertainty product (dx)^2 (dp)^2 into
/// time and space parts:
///
/// ```text
/// (dx)^2 (dp)^2 = gamma^8 (dE dt)^2 + gamma^8 beta^2 (dq dp)^2
/// ```
///
/// with dp = m0 dv and dE = c dp. Returns (product, decomposition): the left
/// side multiplies the propagated square uncertainties, the right side is
/// assembled independently, and the two agree to rounding because the
/// relation is an algebraic identity.
pub fn uncertainty_product_identity(state: &KinematicState, c: f64) -> Result<(f64, f64)> {
    let gamma = lorentz_gamma(state.v, c)?;
    let beta = state.v / c;
    let lhs = delta_x_sq(state, c)? * delta_p_sq(state, c)?;
    let dp = state.m0 * state.dv;
    let de = c * dp;
    let g8 = gamma.powi(8);
    let time_part = g8 * (de * state.dt) * (de * state.dt);
    let space_part = g8 * (beta * beta) * (state.dq * dp) * (state.dq * dp);
    Ok((lhs, time_part + space_part))
}

/// All bound values for one speed, in one unit system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub beta: f64,
    pub gamma: f64,
    pub zeta: f64,
    pub bound_xp: f64,
    pub bound_xp_ultra: f64,
    pub bound_et: f64,
    pub bound_et_ultra: f64,
}

impl BoundReport {
    pub fn evaluate(beta: f64, constants: &PhysicalConstants) -> Result<Self> {
        let gamma = lorentz_gamma_from_beta(beta)?;
        let hbar = constants.hbar();
        Ok(Self {
            beta,
            gamma,
            zeta: zeta(gamma)?,
            bound_xp: bound_xp_rel(gamma, hbar)?,
            bound_xp_ultra: bound_xp_ultra(gamma, hbar)?,
            bound_et: bound_et_rel(gamma, hbar)?,
            bound_et_ultra: bound_et_ultra(gamma, hbar)?,
        })
    }
}
