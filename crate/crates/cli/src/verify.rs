//! The `verify` command: named checks, one pass/fail line each, exit 3 when
//! any fail. Random sweeps derive from the run seed, so failures reproduce.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use relbound_core::bounds::{
    bound_et_rel, bound_et_ultra, bound_xp_rel, bound_xp_ultra, check_component_hup,
    check_modulus_hup, landau_de_bound, landau_dp_bound, landau_dq_bound, min_delta_epsilon,
    uncertainty_product_identity, zeta,
};
use relbound_core::kinematics::{de_broglie_min_dq, lorentz_gamma_from_beta};
use relbound_core::measured::{vec_dot, vec_norm, MeasuredVector3};
use relbound_core::montecarlo::sample_modulus;
use relbound_core::propagation::{
    fd_gradient_auto, gradient, modulus_sigma, propagate_sigma, DifferentiableFn, LorentzFactorFn,
    MomentumFn, Norm3, PositionFn,
};
use relbound_core::KinematicState;

use crate::config::RunConfig;
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Propagation,
    Inequalities,
    Identity,
    Limits,
    All,
}

type Check = (&'static str, fn(&RunConfig) -> Result<(), String>);

const PROPAGATION: &[Check] = &[
    (
        "dual-number gradients match finite differences on builtins",
        gradients_match_fd,
    ),
    (
        "closed-form modulus sigma matches the engine on 1000 random vectors",
        closed_form_matches_engine,
    ),
    (
        "sampled modulus std matches the delta-method sigma within 2%",
        sampling_matches_delta_method,
    ),
];

const INEQUALITIES: &[Check] = &[
    (
        "component sums clear 3*hbar/2 on 1000 floor-saturating ensembles",
        component_sums_hold,
    ),
    (
        "norm products clear the chain floor on the same ensembles",
        norm_products_hold,
    ),
    (
        "Cauchy-Schwarz holds on 10000 random sigma pairs",
        cauchy_schwarz_holds,
    ),
];

const IDENTITY: &[Check] = &[
    (
        "product identity holds on 1000 random states to 1e-12",
        identity_on_random_states,
    ),
    (
        "product identity worked instance reproduces its frozen value",
        identity_worked_instance,
    ),
];

const LIMITS: &[Check] = &[
    (
        "gamma->1 reduces the position-momentum bound to hbar/2",
        bound_reduces_at_rest,
    ),
    (
        "ultra-relativistic forms converge onto the exact forms",
        ultra_forms_converge,
    ),
    (
        "energy-time bound equals position-momentum bound over gamma",
        et_is_xp_over_gamma,
    ),
    ("bound orderings hold across the gamma grid", orderings_hold),
    (
        "Landau floors agree at their saturation points",
        landau_floors_agree,
    ),
];

fn checks_for(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::Propagation => PROPAGATION.to_vec(),
        Suite::Inequalities => INEQUALITIES.to_vec(),
        Suite::Identity => IDENTITY.to_vec(),
        Suite::Limits => LIMITS.to_vec(),
        Suite::All => {
            let mut all = PROPAGATION.to_vec();
            all.extend_from_slice(INEQUALITIES);
            all.extend_from_slice(IDENTITY);
            all.extend_from_slice(LIMITS);
            all
        }
    }
}

pub fn run_suite(suite: Suite, config: &RunConfig) -> Result<(), CliError> {
    let mut failures = 0;
    for (name, check) in checks_for(suite) {
        match check(config) {
            Ok(()) => println!("{name}: PASS"),
            Err(why) => {
                println!("{name}: FAIL ({why})");
                failures += 1;
            }
        }
    }
    if failures > 0 {
        Err(CliError::Verification(failures))
    } else {
        Ok(())
    }
}

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn gradients_match_fd(_: &RunConfig) -> Result<(), String> {
    fn compare<F: DifferentiableFn>(f: &F, x: &[f64]) -> Result<(), String> {
        let exact = gradient(f, x).map_err(|e| e.to_string())?;
        let fd = fd_gradient_auto(f, x).map_err(|e| e.to_string())?;
        for (i, (e, d)) in exact.iter().zip(&fd).enumerate() {
            let scale = e.abs().max(d.abs());
            ensure((e - d).abs() <= 1e-6_f64.max(1e-6 * scale), || {
                format!("direction {i} at {x:?}: dual {e} vs fd {d}")
            })?;
        }
        Ok(())
    }
    for point in [[3.0, 4.0, 0.0], [1.0, -2.0, 2.0], [0.3, 0.4, 0.5]] {
        compare(&Norm3, &point)?;
    }
    for beta in [0.0, 0.3, 0.6, 0.9, 0.985] {
        compare(&LorentzFactorFn { c: 1.0 }, &[beta])?;
        compare(&MomentumFn { c: 1.0 }, &[1.5, beta])?;
        compare(&PositionFn { c: 1.0 }, &[2.0, 2.0 * beta])?;
    }
    Ok(())
}

fn closed_form_matches_engine(config: &RunConfig) -> Result<(), String> {
    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
    let mut done = 0;
    while done < 1000 {
        let comps = [
            rng.random_range(-50.0..50.0),
            rng.random_range(-50.0..50.0),
            rng.random_range(-50.0..50.0),
        ];
        if vec_norm(&comps) < 1e-3 {
            continue;
        }
        let sigmas = [
            rng.random_range(0.0..5.0),
            rng.random_range(0.0..5.0),
            rng.random_range(0.0..5.0),
        ];
        let v = MeasuredVector3::new(comps, sigmas).map_err(|e| e.to_string())?;
        let closed = modulus_sigma(&v).map_err(|e| e.to_string())?;
        let engine = propagate_sigma(&Norm3, &comps, &sigmas).map_err(|e| e.to_string())?;
        ensure(
            (closed - engine).abs() <= 1e-12 * closed.abs().max(1.0),
            || format!("at {comps:?}/{sigmas:?}: closed {closed} vs engine {engine}"),
        )?;
        done += 1;
    }
    Ok(())
}

fn sampling_matches_delta_method(config: &RunConfig) -> Result<(), String> {
    let v = MeasuredVector3::new([3.0, 4.0, 0.0], [0.1, 0.2, 0.3]).expect("valid vector");
    let target = modulus_sigma(&v).map_err(|e| e.to_string())?;
    let summary = sample_modulus(&v, config.samples, config.seed).map_err(|e| e.to_string())?;
    ensure(rel_close(summary.std, target, 0.02), || {
        format!(
            "sampled std {} vs delta-method {} at n = {}",
            summary.std, target, summary.n
        )
    })
}

/// Ensembles whose component products sit at or just above hbar/2.
fn saturating_ensembles(
    seed: u64,
    hbar: f64,
    count: usize,
) -> impl Iterator<Item = ([f64; 3], [f64; 3])> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    std::iter::repeat_with(move || {
        let dq = [
            rng.random_range(0.01..100.0),
            rng.random_range(0.01..100.0),
            rng.random_range(0.01..100.0),
        ];
        let dp = [
            rng.random_range(1.0..3.0) * hbar / (2.0 * dq[0]),
            rng.random_range(1.0..3.0) * hbar / (2.0 * dq[1]),
            rng.random_range(1.0..3.0) * hbar / (2.0 * dq[2]),
        ];
        (dq, dp)
    })
    .take(count)
}

fn component_sums_hold(config: &RunConfig) -> Result<(), String> {
    let hbar = config.constants.hbar();
    for (dq, dp) in saturating_ensembles(config.seed, hbar, 1000) {
        let check = check_component_hup(&dq, &dp, hbar).map_err(|e| e.to_string())?;
        ensure(check.satisfied, || format!("{check:?} for {dq:?}/{dp:?}"))?;
    }
    Ok(())
}

fn norm_products_hold(config: &RunConfig) -> Result<(), String> {
    let hbar = config.constants.hbar();
    for (dq, dp) in saturating_ensembles(config.seed, hbar, 1000) {
        let check = check_modulus_hup(&dq, &dp, hbar).map_err(|e| e.to_string())?;
        ensure(check.satisfied, || format!("{check:?} for {dq:?}/{dp:?}"))?;
    }
    Ok(())
}

fn cauchy_schwarz_holds(config: &RunConfig) -> Result<(), String> {
    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
    for _ in 0..10_000 {
        let a = [
            rng.random_range(-100.0..100.0),
            rng.random_range(-100.0..100.0),
            rng.random_range(-100.0..100.0),
        ];
        let b = [
            rng.random_range(-100.0..100.0),
            rng.random_range(-100.0..100.0),
            rng.random_range(-100.0..100.0),
        ];
        let dot = vec_dot(&a, &b).abs();
        let norms = vec_norm(&a) * vec_norm(&b);
        ensure(norms >= dot - 1e-12 * dot.abs().max(1.0), || {
            format!("|<a,b>| = {dot} exceeds |a||b| = {norms} for {a:?}/{b:?}")
        })?;
    }
    Ok(())
}

fn identity_on_random_states(config: &RunConfig) -> Result<(), String> {
    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
    for _ in 0..1000 {
        let c = rng.random_range(0.5..2.0);
        let state = KinematicState::new(
            rng.random_range(0.1..10.0),
            rng.random_range(0.0..0.999) * c,
            rng.random_range(0.1..10.0),
            rng.random_range(0.0..0.1),
            rng.random_range(0.0..0.1),
            rng.random_range(0.0..0.1),
        )
        .map_err(|e| e.to_string())?;
        let (lhs, rhs) = uncertainty_product_identity(&state, c).map_err(|e| e.to_string())?;
        ensure(
            (lhs - rhs).abs() <= 1e-12 * lhs.abs().max(rhs.abs()),
            || format!("lhs {lhs} vs rhs {rhs} for {state:?} at c = {c}"),
        )?;
    }
    Ok(())
}

fn identity_worked_instance(_: &RunConfig) -> Result<(), String> {
    let state = KinematicState::new(1.0, 0.6, 1.0, 0.01, 0.01, 0.02).expect("valid state");
    let (lhs, rhs) = uncertainty_product_identity(&state, 1.0).map_err(|e| e.to_string())?;
    let frozen = 1.4543533325195311e-7;
    ensure(rel_close(lhs, frozen, 1e-10), || {
        format!("lhs {lhs} vs frozen {frozen}")
    })?;
    ensure(rel_close(rhs, frozen, 1e-10), || {
        format!("rhs {rhs} vs frozen {frozen}")
    })
}

fn bound_reduces_at_rest(config: &RunConfig) -> Result<(), String> {
    let hbar = config.constants.hbar();
    let floor = 0.5 * hbar;
    let at_rest = bound_xp_rel(1.0, hbar).map_err(|e| e.to_string())?;
    ensure(at_rest == floor, || {
        format!("bound at gamma = 1 is {at_rest}, floor {floor}")
    })?;
    let gamma = lorentz_gamma_from_beta(1e-6).map_err(|e| e.to_string())?;
    let near_rest = bound_xp_rel(gamma, hbar).map_err(|e| e.to_string())?;
    ensure(rel_close(near_rest, floor, 1e-8), || {
        format!("bound at beta = 1e-6 is {near_rest}, floor {floor}")
    })
}

fn ultra_forms_converge(config: &RunConfig) -> Result<(), String> {
    let hbar = config.constants.hbar();
    let r_xp = bound_xp_ultra(100.0, hbar).map_err(|e| e.to_string())?
        / bound_xp_rel(100.0, hbar).map_err(|e| e.to_string())?;
    ensure((r_xp - 1.0).abs() < 1e-4, || {
        format!("xp ratio at gamma = 100 is {r_xp}")
    })?;
    let r_et = bound_et_ultra(100.0, hbar).map_err(|e| e.to_string())?
        / bound_et_rel(100.0, hbar).map_err(|e| e.to_string())?;
    ensure((r_et - 1.0).abs() < 1e-4, || {
        format!("et ratio at gamma = 100 is {r_et}")
    })
}

fn gamma_grid() -> impl Iterator<Item = f64> {
    (0..10_000).map(|i| 1.0 + 99.0 * (i as f64 / 9999.0))
}

fn et_is_xp_over_gamma(config: &RunConfig) -> Result<(), String> {
    let hbar = config.constants.hbar();
    for gamma in gamma_grid() {
        let et = bound_et_rel(gamma, hbar).map_err(|e| e.to_string())?;
        let xp = bound_xp_rel(gamma, hbar).map_err(|e| e.to_string())?;
        ensure(rel_close(et, xp / gamma, 1e-12), || {
            format!("at gamma = {gamma}: et {et} vs xp/gamma {}", xp / gamma)
        })?;
    }
    Ok(())
}

fn orderings_hold(config: &RunConfig) -> Result<(), String> {
    let hbar = config.constants.hbar();
    let floor = 0.5 * hbar;
    let mut prev_zeta = 0.0;
    for gamma in gamma_grid() {
        let z = zeta(gamma).map_err(|e| e.to_string())?;
        let xp = bound_xp_rel(gamma, hbar).map_err(|e| e.to_string())?;
        let xp_u = bound_xp_ultra(gamma, hbar).map_err(|e| e.to_string())?;
        let et = bound_et_rel(gamma, hbar).map_err(|e| e.to_string())?;
        let et_u = bound_et_ultra(gamma, hbar).map_err(|e| e.to_string())?;
        ensure(xp >= floor - 1e-12 * floor, || {
            format!("xp bound {xp} under the floor {floor} at gamma = {gamma}")
        })?;
        ensure(xp_u >= xp - 1e-12 * xp, || {
            format!("ultra xp {xp_u} under exact {xp} at gamma = {gamma}")
        })?;
        ensure(et_u >= et - 1e-12 * et, || {
            format!("ultra et {et_u} under exact {et} at gamma = {gamma}")
        })?;
        ensure(z > prev_zeta, || {
            format!("zeta not increasing at gamma = {gamma}")
        })?;
        prev_zeta = z;
    }
    Ok(())
}

fn landau_floors_agree(config: &RunConfig) -> Result<(), String> {
    let hbar = config.constants.hbar();
    let floor = 0.5 * hbar;
    // speed change saturating at c = 1 turns the momentum floor into hbar/2
    let dp = landau_dp_bound(1.0, 0.0, 1.0, hbar).map_err(|e| e.to_string())?;
    ensure(dp == floor, || format!("momentum floor {dp} vs {floor}"))?;
    // an energy resolution of one natural unit pins the position floor
    let dq = landau_dq_bound(1.0, 1.0, hbar).map_err(|e| e.to_string())?;
    ensure(dq == floor, || format!("position floor {dq} vs {floor}"))?;
    // and it must agree with the matter-wave floor at unit momentum
    let wave = de_broglie_min_dq(1.0, hbar).map_err(|e| e.to_string())?;
    ensure(dq == wave, || {
        format!("position floor {dq} vs matter-wave {wave}")
    })?;
    let de = landau_de_bound(1.0, hbar).map_err(|e| e.to_string())?;
    ensure(de == floor, || format!("energy floor {de} vs {floor}"))?;
    // halving the window doubles the minimum energy spread
    let a = min_delta_epsilon(1.0, 1.0, hbar).map_err(|e| e.to_string())?;
    let b = min_delta_epsilon(0.5, 1.0, hbar).map_err(|e| e.to_string())?;
    ensure(rel_close(b, 2.0 * a, 1e-15), || {
        format!("halving dt gave {b}, expected {}", 2.0 * a)
    })
}
