//! Shared fixtures for the criterion benches.

use relbound_core::{KinematicState, MeasuredVector3};

/// Mildly relativistic state with all three uncertainties set.
pub fn worked_state() -> KinematicState {
    KinematicState::new(1.0, 0.6, 1.0, 0.01, 0.01, 0.02).expect("valid state")
}

/// The 3-4-5 vector with asymmetric sigmas.
pub fn standard_vector() -> MeasuredVector3 {
    MeasuredVector3::new([3.0, 4.0, 0.0], [0.1, 0.2, 0.3]).expect("valid vector")
}
