//! First-order (delta-method) propagation of statistical uncertainties.
//!
//! For independent inputs x_i with standard deviations sigma_i, a smooth
//! function f inherits, to first order,
//!
//! ```text
//! sigma_f = sqrt( sum_i (df/dx_i * sigma_i)^2 )
//! ```
//!
//! Gradients come from forward-mode dual numbers ([`gradient`]), which are
//! exact to rounding; central finite differences ([`fd_gradient`]) are kept as
//! an independent cross-check of the same derivatives.

use crate::dual::{Dual, Scalar};
use crate::error::{Error, Result};
use crate::measured::MeasuredVector3;

/// Relative step factor for the automatic finite-difference step,
/// h_i = 1e-6 * max(1, |x_i|).
pub const FD_STEP_SCALE: f64 = 1e-6;

/// A scalar function of a fixed number of inputs, written once over the
/// [`Scalar`] carrier so it can be both evaluated and differentiated.
pub trait DifferentiableFn {
    /// Number of inputs the function expects.
    fn arity(&self) -> usize;

    /// Evaluate on any scalar carrier (plain values or dual numbers).
    fn eval<S: Scalar>(&self, x: &[S]) -> S;
}

/// Euclidean modulus of three components.
#[derive(Debug, Clone, Copy)]
pub struct Norm3;

impl DifferentiableFn for Norm3 {
    fn arity(&self) -> usize {
        3
    }

    fn eval<S: Scalar>(&self, x: &[S]) -> S {
        (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt()
    }
}

/// Lorentz factor of one speed input, for a fixed speed of light.
#[derive(Debug, Clone, Copy)]
pub struct LorentzFactorFn {
    pub c: f64,
}

impl DifferentiableFn for LorentzFactorFn {
    fn arity(&self) -> usize {
        1
    }

    fn eval<S: Scalar>(&self, x: &[S]) -> S {
        let beta = x[0] / S::constant(self.c);
        let one = S::constant(1.0);
        one / (one - beta * beta).sqrt()
    }
}

/// Relativistic momentum modulus of (rest mass, speed) inputs.
#[derive(Debug, Clone, Copy)]
pub struct MomentumFn {
    pub c: f64,
}

impl DifferentiableFn for MomentumFn {
    fn arity(&self) -> usize {
        2
    }

    fn eval<S: Scalar>(&self, x: &[S]) -> S {
        let (m, v) = (x[0], x[1]);
        let beta = v / S::constant(self.c);
        let one = S::constant(1.0);
        m * v / (one - beta * beta).sqrt()
    }
}

/// Position modulus sqrt(c^2 t^2 - q^2) of (lab time, spatial modulus) inputs.
#[derive(Debug, Clone, Copy)]
pub struct PositionFn {
    pub c: f64,
}

impl DifferentiableFn for PositionFn {
    fn arity(&self) -> usize {
        2
    }

    fn eval<S: Scalar>(&self, x: &[S]) -> S {
        let (t, q) = (x[0], x[1]);
        (S::constant(self.c * self.c) * t * t - q * q).sqrt()
    }
}

fn check_point<F: DifferentiableFn>(f: &F, x: &[f64]) -> Result<()> {
    if x.len() != f.arity() {
        return Err(Error::InvalidInput(format!(
            "expected {} inputs, got {}",
            f.arity(),
            x.len()
        )));
    }
    for (i, &xi) in x.iter().enumerate() {
        if !xi.is_finite() {
            return Err(Error::InvalidInput(format!(
                "input {i} must be finite, got {xi}"
            )));
        }
    }
    Ok(())
}

/// Exact gradient via one forward-mode pass per input.
pub fn gradient<F: DifferentiableFn>(f: &F, x: &[f64]) -> Result<Vec<f64>> {
    check_point(f, x)?;
    let mut grad = Vec::with_capacity(x.len());
    for i in 0..x.len() {
        let duals: Vec<Dual> = x
            .iter()
            .enumerate()
            .map(|(j, &xj)| {
                if j == i {
                    Dual::variable(xj)
                } else {
                    Dual::constant(xj)
                }
            })
            .collect();
        let out = f.eval(&duals);
        if !out.val.is_finite() || !out.der.is_finite() {
            return Err(Error::NotEvaluable(format!(
                "value {} / derivative {} in direction {i} at {x:?}",
                out.val, out.der
            )));
        }
        grad.push(out.der);
    }
    Ok(grad)
}

/// Central finite differences with an explicit step, the independent
/// cross-check for [`gradient`].
pub fn fd_gradient<F: DifferentiableFn>(f: &F, x: &[f64], h: f64) -> Result<Vec<f64>> {
    check_point(f, x)?;
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidInput(format!(
            "step must be finite and positive, got {h}"
        )));
    }
    let mut grad = Vec::with_capacity(x.len());
    let mut probe = x.to_vec();
    for i in 0..x.len() {
        probe[i] = x[i] + h;
        let fp: f64 = f.eval(&probe);
        probe[i] = x[i] - h;
        let fm: f64 = f.eval(&probe);
        probe[i] = x[i];
        if !fp.is_finite() || !fm.is_finite() {
            return Err(Error::NotEvaluable(format!(
                "probe values {fp} / {fm} in direction {i} at {x:?}"
            )));
        }
        grad.push((fp - fm) / (2.0 * h));
    }
    Ok(grad)
}

/// [`fd_gradient`] with the default per-coordinate step
/// h_i = 1e-6 * max(1, |x_i|).
pub fn fd_gradient_auto<F: DifferentiableFn>(f: &F, x: &[f64]) -> Result<Vec<f64>> {
    check_point(f, x)?;
    let mut grad = Vec::with_capacity(x.len());
    let mut probe = x.to_vec();
    for i in 0..x.len() {
        let h = FD_STEP_SCALE * x[i].abs().max(1.0);
        probe[i] = x[i] + h;
        let fp: f64 = f.eval(&probe);
        probe[i] = x[i] - h;
        let fm: f64 = f.eval(&probe);
        probe[i] = x[i];
        if !fp.is_finite() || !fm.is_finite() {
            return Err(Error::NotEvaluable(format!(
                "probe values {fp} / {fm} in direction {i} at {x:?}"
            )));
        }
        grad.push((fp - fm) / (2.0 * h));
    }
    Ok(grad)
}

/// Delta-method sigma of `f` at `x` for independent input sigmas.
pub fn propagate_sigma<F: DifferentiableFn>(f: &F, x: &[f64], sigmas: &[f64]) -> Result<f64> {
    if sigmas.len() != x.len() {
        return Err(Error::InvalidInput(format!(
            "got {} sigmas for {} inputs",
            sigmas.len(),
            x.len()
        )));
    }
    for (i, &s) in sigmas.iter().enumerate() {
        if !(s.is_finite() && s >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "sigma {i} must be finite and non-negative, got {s}"
            )));
        }
    }
    let grad = gradient(f, x)?;
    let sum: f64 = grad
        .iter()
        .zip(sigmas)
        .map(|(g, s)| (g * s) * (g * s))
        .sum();
    Ok(sum.sqrt())
}

/// Closed-form delta-method sigma of a vector modulus:
/// sqrt(sum (v_i sigma_i)^2) / |v|. Agrees with running [`Norm3`] through
/// [`propagate_sigma`]; singular at the zero vector.
pub fn modulus_sigma(v: &MeasuredVector3) -> Result<f64> {
    let x = v.components();
    let s = v.sigmas();
    let n = v.norm();
    if n == 0.0 {
        return Err(Error::ZeroModulus);
    }
    let sum = (x[0] * s[0]).powi(2) + (x[1] * s[1]).powi(2) + (x[2] * s[2]).powi(2);
    Ok(sum.sqrt() / n)
}
