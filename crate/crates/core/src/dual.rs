//! Forward-mode dual numbers and the scalar abstraction that lets one
//! function body serve both plain evaluation and exact differentiation.
//!
//! A dual number carries a value and the derivative of that value with respect
//! to one chosen input. Arithmetic on the value part uses exactly the same
//! f64 operations as plain arithmetic, so evaluating a function on duals with
//! zero derivative part is bitwise identical to evaluating it on f64 — the
//! derivative machinery can never perturb the primal result.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Numeric carrier for differentiable function bodies.
///
/// Implemented by `f64` (plain evaluation) and [`Dual`] (evaluation plus one
/// directional derivative). Function bodies written against this trait get
/// both behaviours from a single definition.
pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Lift a constant; its derivative with respect to anything is zero.
    fn constant(v: f64) -> Self;
    /// The value part.
    fn value(self) -> f64;
    fn sqrt(self) -> Self;
    fn powi(self, n: i32) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
}

impl Scalar for f64 {
    fn constant(v: f64) -> Self {
        v
    }
    fn value(self) -> f64 {
        self
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
}

/// Value plus derivative with respect to one input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual {
    pub val: f64,
    pub der: f64,
}

impl Dual {
    pub const fn new(val: f64, der: f64) -> Self {
        Self { val, der }
    }

    /// The input currently being differentiated: derivative one.
    pub const fn variable(val: f64) -> Self {
        Self { val, der: 1.0 }
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, rhs: Dual) -> Dual {
        Dual::new(self.val + rhs.val, self.der + rhs.der)
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, rhs: Dual) -> Dual {
        Dual::new(self.val - rhs.val, self.der - rhs.der)
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, rhs: Dual) -> Dual {
        Dual::new(self.val * rhs.val, self.der * rhs.val + self.val * rhs.der)
    }
}

impl Div for Dual {
    type Output = Dual;
    fn div(self, rhs: Dual) -> Dual {
        Dual::new(
            self.val / rhs.val,
            (self.der * rhs.val - self.val * rhs.der) / (rhs.val * rhs.val),
        )
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual::new(-self.val, -self.der)
    }
}

impl Scalar for Dual {
    fn constant(v: f64) -> Self {
        Dual::new(v, 0.0)
    }

    fn value(self) -> f64 {
        self.val
    }

    fn sqrt(self) -> Self {
        let r = self.val.sqrt();
        // der/(2r) is NaN or infinite at r = 0: the modulus derivative is
        // genuinely singular there and the caller reports it as such.
        Dual::new(r, self.der / (2.0 * r))
    }

    fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Dual::new(1.0, 0.0);
        }
        Dual::new(
            self.val.powi(n),
            f64::from(n) * self.val.powi(n - 1) * self.der,
        )
    }

    fn exp(self) -> Self {
        let e = self.val.exp();
        Dual::new(e, self.der * e)
    }

    fn ln(self) -> Self {
        Dual::new(self.val.ln(), self.der / self.val)
    }

    fn sin(self) -> Self {
        Dual::new(self.val.sin(), self.der * self.val.cos())
    }

    fn cos(self) -> Self {
        Dual::new(self.val.cos(), -self.der * self.val.sin())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn gnarly<S: Scalar>(x: S) -> S {
        // x^3*sin(x) + exp(x)/sqrt(x) - ln(x)*cos(x)
        x.powi(3) * x.sin() + x.exp() / x.sqrt() - x.ln() * x.cos()
    }

    #[test]
    fn zero_derivative_part_matches_f64_bitwise() {
        for &x in &[0.3, 1.0, 2.5, 17.0, 123.456] {
            let plain = gnarly(x);
            let dual = gnarly(Dual::constant(x));
            assert_eq!(dual.val.to_bits(), plain.to_bits());
            assert_eq!(dual.der, 0.0);
        }
    }

    #[test]
    fn product_rule() {
        let x = Dual::variable(1.7);
        let y = x * x;
        assert_relative_eq!(y.der, 2.0 * 1.7, max_relative = 1e-15);
    }

    #[test]
    fn quotient_rule() {
        // d/dx (x / (1 + x^2)) = (1 - x^2) / (1 + x^2)^2
        let x = Dual::variable(0.8);
        let y = x / (Dual::constant(1.0) + x * x);
        let expect = (1.0 - 0.64) / (1.64f64 * 1.64);
        assert_relative_eq!(y.der, expect, max_relative = 1e-15);
    }

    #[test]
    fn sqrt_derivative() {
        let x = Dual::variable(4.0);
        let y = x.sqrt();
        assert_eq!(y.val, 2.0);
        assert_eq!(y.der, 0.25);
    }

    #[test]
    fn sqrt_at_zero_is_singular() {
        let y = Dual::variable(0.0).sqrt();
        assert!(!y.der.is_finite());
    }

    #[test]
    fn powi_zero_is_constant_one() {
        let y = Dual::variable(0.0).powi(0);
        assert_eq!(y.val, 1.0);
        assert_eq!(y.der, 0.0);
    }

    #[test]
    fn negative_power() {
        // d/dx x^-2 = -2 x^-3
        let y = Dual::variable(2.0).powi(-2);
        assert_relative_eq!(y.val, 0.25, max_relative = 1e-15);
        assert_relative_eq!(y.der, -2.0 / 8.0, max_relative = 1e-15);
    }

    #[test]
    fn transcendental_chain() {
        // d/dx exp(sin(x)) = cos(x) exp(sin(x))
        let x = 0.6;
        let y = Dual::variable(x).sin().exp();
        assert_relative_eq!(y.der, x.cos() * x.sin().exp(), max_relative = 1e-15);
    }

    #[test]
    fn ln_derivative() {
        let y = Dual::variable(3.0).ln();
        assert_relative_eq!(y.der, 1.0 / 3.0, max_relative = 1e-15);
    }
}
