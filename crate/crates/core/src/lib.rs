//! Relativistic uncertainty bounds and first-order error propagation.
//!
//! The crate covers one chain of reasoning end to end:
//!
//! * [`propagation`] — delta-method sigmas for smooth functions of measured
//!   inputs, with exact forward-mode derivatives ([`dual`]) cross-checked by
//!   finite differences;
//! * [`kinematics`] — Lorentz factor, position/momentum moduli, and the
//!   square uncertainties a relativistic measurement inherits;
//! * [`bounds`] — the gamma-dependent Heisenberg-type floors those
//!   uncertainties must respect, the Landau single-measurement floors, and
//!   the checks connecting component floors to modulus products;
//! * [`montecarlo`] — a seeded, bitwise-reproducible Gaussian sampler that
//!   verifies the propagation and the bounds empirically.
//!
//! All formulas take `hbar` and `c` explicitly; [`PhysicalConstants`]
//! supplies SI or natural-unit values.

pub mod bounds;
pub mod constants;
pub mod dual;
pub mod error;
pub mod kinematics;
pub mod measured;
pub mod montecarlo;
pub mod propagation;

pub use bounds::{BoundReport, InequalityCheck};
pub use constants::{PhysicalConstants, UnitMode};
pub use dual::{Dual, Scalar};
pub use error::{Error, Result};
pub use kinematics::{ProperTimeConvention, RelativisticUncertainties};
pub use measured::{KinematicState, MeasuredScalar, MeasuredVector3};
pub use montecarlo::{BoundScenario, SampleSummary};
pub use propagation::DifferentiableFn;
