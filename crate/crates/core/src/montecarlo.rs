//! Seeded Monte Carlo oracle for the propagation formulas and bound checks.
//!
//! Measurement errors are modelled as independent Gaussians: input i is drawn
//! as x_i + sigma_i * z with z ~ Normal(0, 1). Summaries are deterministic
//! functions of (inputs, seed, n):
//!
//! * the stream is split into fixed chunks of [`CHUNK_SIZE`] samples;
//! * chunk k is generated by its own ChaCha12 generator seeded with
//!   seed + k (wrapping), drawing one normal variate per input in input
//!   order within each trial;
//! * per-chunk moments are merged in chunk order.
//!
//! Chunks may be processed on any number of threads — the decomposition and
//! the merge order are fixed, so the result is bitwise identical from one
//! thread to a full pool, and run to run.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::bounds::InequalityCheck;
use crate::error::{Error, Result};
use crate::kinematics::lorentz_gamma;
use crate::measured::{KinematicState, MeasuredVector3};
use crate::propagation::{DifferentiableFn, Norm3};

/// Samples per RNG chunk; part of the reproducibility contract.
pub const CHUNK_SIZE: usize = 1 << 14;

/// Relative margin applied when a sampled product is compared against an
/// analytic bound: covers std-estimator noise (about 1/sqrt(2n) per factor)
/// plus the first-order method's curvature bias at small relative sigmas.
pub const MC_REL_TOL: f64 = 0.02;

/// Moments of one sampled scalar: unbiased (n-1) standard deviation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleSummary {
    pub n: usize,
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub max: f64,
    pub seed: u64,
}

#[derive(Clone, Copy)]
struct Welford {
    n: u64,
    mean: f64,
    m2: f64,
    min: f64,
    max: f64,
}

impl Welford {
    fn new() -> Self {
        Self {
            n: 0,
            mean: 0.0,
            m2: 0.0,
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
        }
    }

    fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
        self.min = self.min.min(x);
        self.max = self.max.max(x);
    }

    fn merge(self, other: Self) -> Self {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        Self {
            n,
            mean: self.mean + delta * (other.n as f64 / n as f64),
            m2: self.m2 + other.m2 + delta * delta * (self.n as f64 * other.n as f64 / n as f64),
            min: self.min.min(other.min),
            max: self.max.max(other.max),
        }
    }

    fn std(&self) -> f64 {
        (self.m2 / (self.n - 1) as f64).sqrt()
    }
}

/// Run `n` trials in fixed chunks, each trial producing `K` tracked scalars.
/// `scratch` is per-chunk workspace for trials that need a point buffer.
fn sample_stats<const K: usize>(
    n: usize,
    seed: u64,
    trial: impl Fn(&mut ChaCha12Rng, &mut Vec<f64>) -> [f64; K] + Sync,
) -> [Welford; K] {
    let chunks = n.div_ceil(CHUNK_SIZE);
    let per_chunk: Vec<[Welford; K]> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha12Rng::seed_from_u64(seed.wrapping_add(k as u64));
            let mut scratch = Vec::new();
            let len = CHUNK_SIZE.min(n - k * CHUNK_SIZE);
            let mut acc = [Welford::new(); K];
            for _ in 0..len {
                let values = trial(&mut rng, &mut scratch);
                for (slot, &v) in acc.iter_mut().zip(values.iter()) {
                    slot.push(v);
                }
            }
            acc
        })
        .collect();
    per_chunk
        .into_iter()
        .fold([Welford::new(); K], |merged, chunk| {
            let mut out = [Welford::new(); K];
            for (o, (m, c)) in out.iter_mut().zip(merged.into_iter().zip(chunk)) {
                *o = m.merge(c);
            }
            out
        })
}

fn summarize(w: Welford, seed: u64) -> Result<SampleSummary> {
    let summary = SampleSummary {
        n: w.n as usize,
        mean: w.mean,
        std: w.std(),
        min: w.min,
        max: w.max,
        seed,
    };
    if !summary.mean.is_finite() || !summary.std.is_finite() {
        return Err(Error::NotEvaluable(
            "a sampled trial produced a non-finite value".into(),
        ));
    }
    Ok(summary)
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InsufficientSamples(n));
    }
    Ok(())
}

fn check_sigmas(sigmas: &[f64]) -> Result<()> {
    for (i, &s) in sigmas.iter().enumerate() {
        if !(s.is_finite() && s >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "sigma {i} must be finite and non-negative, got {s}"
            )));
        }
    }
    Ok(())
}

/// Sample any differentiable function under Gaussian input errors.
///
/// Inputs with sigma = 0 are passed through exactly, so a fully zero-sigma
/// ensemble has std exactly 0.
pub fn sample_function<F: DifferentiableFn + Sync>(
    f: &F,
    x: &[f64],
    sigmas: &[f64],
    n: usize,
    seed: u64,
) -> Result<SampleSummary> {
    check_n(n)?;
    if x.len() != f.arity() || sigmas.len() != x.len() {
        return Err(Error::InvalidInput(format!(
            "expected {} values and sigmas, got {} and {}",
            f.arity(),
            x.len(),
            sigmas.len()
        )));
    }
    for (i, &xi) in x.iter().enumerate() {
        if !xi.is_finite() {
            return Err(Error::InvalidInput(format!(
                "input {i} must be finite, got {xi}"
            )));
        }
    }
    check_sigmas(sigmas)?;

    let dim = x.len();
    let [w] = sample_stats::<1>(n, seed, |rng, point| {
        point.clear();
        for i in 0..dim {
            let z: f64 = StandardNormal.sample(rng);
            point.push(x[i] + sigmas[i] * z);
        }
        [f.eval::<f64>(point)]
    });
    summarize(w, seed)
}

/// Sample the Euclidean modulus of a measured vector; the empirical std is
/// the quantity the delta method approximates.
pub fn sample_modulus(v: &MeasuredVector3, n: usize, seed: u64) -> Result<SampleSummary> {
    sample_function(&Norm3, &v.components(), &v.sigmas(), n, seed)
}

/// A sampled experiment whose per-trial outputs form an uncertainty product
/// to hold against an analytic floor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundScenario {
    /// Zero-mean Gaussian component errors with the given sigma vectors; the
    /// product under test is |empirical sigma of dq| * |empirical sigma of dp|
    /// (norms over components).
    SigmaNormProduct { dq: [f64; 3], dp: [f64; 3] },
    /// Full relativistic chain: per trial, lab time, position modulus, and
    /// speed are drawn around the state's central values, the position and
    /// momentum moduli are recomputed, and the product of their empirical
    /// stds is tested.
    RelativisticProduct { state: KinematicState, c: f64 },
}

/// Empirically verify `product >= bound` for a sampled scenario, judged with
/// the [`MC_REL_TOL`] sampling margin.
pub fn mc_verify_bound(
    scenario: &BoundScenario,
    bound: f64,
    n: usize,
    seed: u64,
) -> Result<InequalityCheck> {
    check_n(n)?;
    if !(bound.is_finite() && bound >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "bound must be finite and non-negative, got {bound}"
        )));
    }
    let lhs = match scenario {
        BoundScenario::SigmaNormProduct { dq, dp } => {
            check_sigmas(dq)?;
            check_sigmas(dp)?;
            let stats = sample_stats::<6>(n, seed, |rng, _| {
                let mut out = [0.0_f64; 6];
                for (slot, sigma) in out.iter_mut().zip(dq.iter().chain(dp.iter())) {
                    let z: f64 = StandardNormal.sample(rng);
                    *slot = sigma * z;
                }
                out
            });
            for w in &stats {
                if !w.mean.is_finite() || !w.std().is_finite() {
                    return Err(Error::NotEvaluable("non-finite sample".into()));
                }
            }
            let sq: [f64; 3] = [stats[0].std(), stats[1].std(), stats[2].std()];
            let sp: [f64; 3] = [stats[3].std(), stats[4].std(), stats[5].std()];
            crate::measured::vec_norm(&sq) * crate::measured::vec_norm(&sp)
        }
        BoundScenario::RelativisticProduct { state, c } => {
            // central values must themselves be valid
            lorentz_gamma(state.v, *c)?;
            let q = state.v * state.t;
            let (c, m0) = (*c, state.m0);
            let (t0, q0, v0) = (state.t, q, state.v);
            let (dt, dq, dv) = (state.dt, state.dq, state.dv);
            let stats = sample_stats::<2>(n, seed, |rng, _| {
                let zt: f64 = StandardNormal.sample(rng);
                let zq: f64 = StandardNormal.sample(rng);
                let zv: f64 = StandardNormal.sample(rng);
                let t = t0 + dt * zt;
                let q = q0 + dq * zq;
                let v = v0 + dv * zv;
                let ct = c * t;
                let x = ((ct - q) * (ct + q)).sqrt();
                let beta = v / c;
                let gamma = 1.0 / ((1.0 - beta) * (1.0 + beta)).sqrt();
                let p = gamma * m0 * v;
                [x, p]
            });
            for w in &stats {
                if !w.mean.is_finite() || !w.std().is_finite() {
                    return Err(Error::NotEvaluable(
                        "a trial left the light cone or crossed the speed of light".into(),
                    ));
                }
            }
            stats[0].std() * stats[1].std()
        }
    };
    Ok(InequalityCheck::at_least_rel(lhs, bound, MC_REL_TOL))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn vector() -> MeasuredVector3 {
        MeasuredVector3::new([3.0, 4.0, 0.0], [0.1, 0.2, 0.3]).unwrap()
    }

    #[test]
    fn zero_sigmas_sample_exactly() {
        let v = MeasuredVector3::new([3.0, 4.0, 0.0], [0.0; 3]).unwrap();
        let s = sample_modulus(&v, 1000, 42).unwrap();
        assert_eq!(s.std, 0.0);
        assert_eq!(s.mean, 5.0);
        assert_eq!(s.min, 5.0);
        assert_eq!(s.max, 5.0);
    }

    #[test]
    fn identical_seeds_are_bitwise_identical() {
        let a = sample_modulus(&vector(), 50_000, 42).unwrap();
        let b = sample_modulus(&vector(), 50_000, 42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn different_seeds_differ() {
        let a = sample_modulus(&vector(), 10_000, 42).unwrap();
        let b = sample_modulus(&vector(), 10_000, 43).unwrap();
        assert_ne!(a.std, b.std);
    }

    #[test]
    fn summary_orders_min_mean_max() {
        let s = sample_modulus(&vector(), 10_000, 7).unwrap();
        assert!(s.min <= s.mean && s.mean <= s.max);
        assert!(s.std > 0.0);
        assert_eq!(s.n, 10_000);
        assert_eq!(s.seed, 7);
    }

    #[test]
    fn gaussian_passthrough_at_negligible_curvature() {
        let v = MeasuredVector3::new([1000.0, 0.0, 0.0], [1.0, 0.0, 0.0]).unwrap();
        let s = sample_modulus(&v, 100_000, 42).unwrap();
        assert_relative_eq!(s.std, 1.0, max_relative = 0.03);
        assert_relative_eq!(s.mean, 1000.0, max_relative = 2e-4);
    }

    #[test]
    fn too_few_samples_is_an_error() {
        assert_eq!(
            sample_modulus(&vector(), 1, 42).unwrap_err(),
            Error::InsufficientSamples(1)
        );
    }

    #[test]
    fn modulus_delegates_to_generic_sampler() {
        let v = vector();
        let a = sample_modulus(&v, 20_000, 9).unwrap();
        let b = sample_function(&Norm3, &v.components(), &v.sigmas(), 20_000, 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn saturating_scenario_clears_the_floor() {
        let scenario = BoundScenario::SigmaNormProduct {
            dq: [1.0; 3],
            dp: [0.5; 3],
        };
        let check = mc_verify_bound(&scenario, 0.5, 100_000, 42).unwrap();
        assert!(check.satisfied);
        // empirical norms product should sit near sqrt(3) * sqrt(3)/2
        assert_relative_eq!(check.lhs, 1.5, max_relative = 0.02);
    }

    #[test]
    fn tenfold_sigmas_square_the_product() {
        let base = BoundScenario::SigmaNormProduct {
            dq: [1.0; 3],
            dp: [0.5; 3],
        };
        let scaled = BoundScenario::SigmaNormProduct {
            dq: [10.0; 3],
            dp: [5.0; 3],
        };
        let a = mc_verify_bound(&base, 0.5, 50_000, 42).unwrap();
        let b = mc_verify_bound(&scaled, 0.5, 50_000, 42).unwrap();
        // product is homogeneous of degree 2 in the sigmas
        assert_relative_eq!(b.lhs, 100.0 * a.lhs, max_relative = 1e-9);
        assert_relative_eq!(b.slack, 100.0 * a.lhs - 0.5, max_relative = 1e-9);
    }

    #[test]
    fn scenario_validates_inputs() {
        let bad = BoundScenario::SigmaNormProduct {
            dq: [-1.0, 1.0, 1.0],
            dp: [0.5; 3],
        };
        assert!(mc_verify_bound(&bad, 0.5, 100, 42).is_err());
        let ok = BoundScenario::SigmaNormProduct {
            dq: [1.0; 3],
            dp: [0.5; 3],
        };
        assert!(mc_verify_bound(&ok, f64::NAN, 100, 42).is_err());
        assert!(matches!(
            mc_verify_bound(&ok, 0.5, 1, 42).unwrap_err(),
            Error::InsufficientSamples(1)
        ));
    }

    #[test]
    fn superluminal_scenario_center_is_rejected() {
        let state = KinematicState::new(1.0, 2.0, 1.0, 0.0, 0.0, 0.0).unwrap();
        let scenario = BoundScenario::RelativisticProduct { state, c: 1.0 };
        assert!(matches!(
            mc_verify_bound(&scenario, 0.5, 100, 42).unwrap_err(),
            Error::SuperluminalSpeed { .. }
        ));
    }
}
