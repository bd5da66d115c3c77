//! The oracle suite behind `ccs verify`.

use rayon::prelude::*;

use crate::cli::config::RunConfig;
use crate::cli::report::{CheckResult, VerifyReport};
use crate::error::Result;
use crate::moments;
use crate::oracle::{self, GridWavefunction, QuadratureConfig};
use crate::states::{
    alpha_from_tau, alpha_from_temperature, tau_from_alpha, temperature_from_alpha, AlphaState,
    GaussianProfile, ThermalSpec, Wavefunction,
};

pub const GAMMAS: [f64; 3] = [0.5, 1.0, 2.0];
pub const ALPHA_STEPS: usize = 15;
pub const EQUIVALENCE_POINTS: usize = 1000;

/// Default tolerance for each check.
pub const TOLERANCES: [(&str, f64); 13] = [
    ("normalization", 1e-9),
    ("variance_q", 1e-8),
    ("variance_p", 1e-8),
    ("correlator", 1e-8),
    ("sur_closed_form", 1e-14),
    ("sur_quadrature", 1e-6),
    ("fourier_variance_p", 1e-6),
    ("fourier_parseval", 1e-8),
    ("annihilation_residual", 1e-6),
    ("equivalence_modulus", 1e-10),
    ("equivalence_complex", 1e-10),
    ("roundtrips", 1e-12),
    ("thermal_consistency", 1e-12),
];

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Worst errors of the α-only checks for one state.
fn alpha_checks(state: &AlphaState, cfg: &QuadratureConfig) -> Result<[f64; 8]> {
    let closed = moments::moment_set(state);
    let norm = oracle::quad_norm(state, cfg)?;
    let vq = oracle::quad_variance_q(state, cfg)?;
    let vp = oracle::quad_variance_p(state, cfg)?;
    let c = oracle::quad_correlator(state, cfg)?;
    let half_hbar = 0.5 * state.hbar();
    let correlator = rel(c.norm(), closed.correlator_mag)
        .max((c.im + half_hbar).abs() / half_hbar)
        .max((c.re - closed.cov_pq).abs() / closed.correlator_mag);
    let sur_closed = moments::sur_report(state).saturation_defect.abs();
    let sur_quad = rel((vq * vp).sqrt(), c.norm());

    let grid = GridWavefunction::sample(state, cfg)?;
    let momentum = oracle::momentum_distribution(&grid)?;
    Ok([
        (norm - 1.0).abs(),
        rel(vq, closed.var_q),
        rel(vp, closed.var_p),
        correlator,
        sur_closed,
        sur_quad,
        rel(momentum.variance(), closed.var_p),
        (momentum.norm() - 1.0).abs(),
    ])
}

/// Worst errors of the cross-parametrization checks at `alpha` with `gamma = omega`.
fn equivalence_checks(alpha: f64, run: &RunConfig, cfg: &QuadratureConfig) -> Result<[f64; 5]> {
    let state = AlphaState::new(alpha, run.omega, run.constants)?;
    let bog = state.to_bogoliubov(run.omega)?;
    let residual = oracle::annihilation_residual(&bog, cfg);
    let mut normalization = (oracle::quad_norm(&bog, cfg)? - 1.0).abs();

    let pa = state.profile();
    let pb = bog.profile();
    let thermal: Option<GaussianProfile> = if alpha > 0.0 {
        let t = temperature_from_alpha(&state, run.omega)?;
        let profile = ThermalSpec::new(t, run.omega, run.constants)?.profile()?;
        normalization = normalization.max((oracle::quad_norm(&profile, cfg)? - 1.0).abs());
        Some(profile)
    } else {
        None
    };

    let half = 8.0 * state.spread();
    let mut modulus: f64 = 0.0;
    let mut complex: f64 = 0.0;
    for i in 0..EQUIVALENCE_POINTS {
        let q = -half + 2.0 * half * i as f64 / (EQUIVALENCE_POINTS - 1) as f64;
        let a = pa.amplitude(q);
        let b = pb.amplitude(q);
        modulus = modulus.max((a.norm() - b.norm()).abs());
        complex = complex.max((pa.exponent(q).im.abs() - pb.exponent(q).im.abs()).abs());
        if let Some(t) = &thermal {
            modulus = modulus.max((a.norm() - t.amplitude(q).norm()).abs());
            complex = complex.max((a - t.amplitude(q)).norm());
        }
    }

    let mut roundtrip = (alpha_from_tau(tau_from_alpha(alpha)?) - alpha).abs();
    if alpha > 0.0 {
        let t = temperature_from_alpha(&state, run.omega)?;
        let spec = ThermalSpec::new(t, run.omega, run.constants)?;
        roundtrip = roundtrip.max((alpha_from_temperature(&spec) - alpha).abs());
    }
    Ok([residual, normalization, modulus, complex, roundtrip])
}

/// T -> alpha -> T roundtrip and thermal identities over a log grid.
fn thermal_checks(run: &RunConfig) -> Result<(f64, f64)> {
    let mut roundtrip: f64 = 0.0;
    let mut consistency: f64 = 0.0;
    // Temperatures in units of hbar omega / k_B.
    let scale = run.constants.hbar() * run.omega / run.constants.k_b();
    for i in 0..=60 {
        let t = scale * 10f64.powf(-3.0 + 0.1 * i as f64);
        let spec = ThermalSpec::new(t, run.omega, run.constants)?;
        let state = AlphaState::from_thermal(&spec)?;
        roundtrip = roundtrip.max(rel(temperature_from_alpha(&state, run.omega)?, t));
        let (vq, vp) = moments::thermal_variances(&spec);
        let energy = 0.5 * vp + 0.5 * run.omega * run.omega * vq;
        consistency = consistency
            .max(rel(vq, moments::variance_q(&state)))
            .max(rel(vp, moments::variance_p(&state)))
            .max(rel(energy, moments::planck_energy(&spec)));
    }
    Ok((roundtrip, consistency))
}

pub fn alpha_grid(alpha_max: f64) -> Vec<f64> {
    (0..ALPHA_STEPS).map(|i| alpha_max * i as f64 / (ALPHA_STEPS - 1) as f64).collect()
}

pub fn run_suite(run: &RunConfig, alpha_max: f64) -> Result<VerifyReport> {
    let cfg = QuadratureConfig::default();
    let alphas = alpha_grid(alpha_max);

    let pairs: Vec<(f64, f64)> =
        alphas.iter().flat_map(|&a| GAMMAS.iter().map(move |&g| (a, g))).collect();
    let per_state = pairs
        .par_iter()
        .map(|&(a, g)| alpha_checks(&AlphaState::new(a, g, run.constants)?, &cfg))
        .collect::<Result<Vec<_>>>()?;
    let per_alpha = alphas
        .par_iter()
        .map(|&a| equivalence_checks(a, run, &cfg))
        .collect::<Result<Vec<_>>>()?;
    let (t_roundtrip, consistency) = thermal_checks(run)?;

    let worst = |rows: &[[f64; 8]], k: usize| rows.iter().map(|r| r[k]).fold(0.0, f64::max);
    let worst5 = |rows: &[[f64; 5]], k: usize| rows.iter().map(|r| r[k]).fold(0.0, f64::max);

    let errors = [
        worst(&per_state, 0).max(worst5(&per_alpha, 1)),
        worst(&per_state, 1),
        worst(&per_state, 2),
        worst(&per_state, 3),
        worst(&per_state, 4),
        worst(&per_state, 5),
        worst(&per_state, 6),
        worst(&per_state, 7),
        worst5(&per_alpha, 0),
        worst5(&per_alpha, 2),
        worst5(&per_alpha, 3),
        worst5(&per_alpha, 4).max(t_roundtrip),
        consistency,
    ];

    let checks: Vec<CheckResult> = TOLERANCES
        .iter()
        .zip(errors)
        .map(|(&(name, default), worst_error)| {
            let tolerance = run.tol.unwrap_or(default);
            CheckResult { check: name.to_string(), worst_error, tolerance, passed: worst_error <= tolerance }
        })
        .collect();
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport { checks, passed })
}
