//! Error type shared by every module in this crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("speed {v} is not below the speed of light {c}")]
    SuperluminalSpeed { v: f64, c: f64 },
    #[error("spacelike separation: spatial modulus {q} must stay below c*t = {ct}")]
    SpacelikeInput { q: f64, ct: f64 },
    #[error("vector modulus is zero; the modulus uncertainty is singular there")]
    ZeroModulus,
    #[error("momentum modulus must be positive")]
    ZeroMomentum,
    #[error("Lorentz factor must be at least 1, got {0}")]
    GammaBelowOne(f64),
    #[error("time interval must be positive, got {0}")]
    NonpositiveTime(f64),
    #[error("energy uncertainty must be positive, got {0}")]
    NonpositiveEnergy(f64),
    #[error("post-measurement speed {v_prime} must exceed pre-measurement speed {v}")]
    DegenerateVelocities { v: f64, v_prime: f64 },
    #[error("component product dq[{index}]*dp[{index}] = {product} is below the floor {floor}")]
    ComponentFloorViolated {
        index: usize,
        product: f64,
        floor: f64,
    },
    #[error("need at least 2 samples, got {0}")]
    InsufficientSamples(usize),
    #[error("function is not evaluable at the requested point: {0}")]
    NotEvaluable(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
