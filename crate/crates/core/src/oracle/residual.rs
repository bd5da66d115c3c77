use num_complex::Complex64;

use crate::oracle::QuadratureConfig;
use crate::states::{bogoliubov_uv, BogoliubovState, Wavefunction};

/// Fourth-order centered difference `(f(-2h) - 8 f(-h) + 8 f(h) - f(2h)) / 12h`.
fn centered_derivative<W: Wavefunction + ?Sized>(wf: &W, q: f64, h: f64) -> Complex64 {
    (wf.amplitude(q - 2.0 * h) - 8.0 * wf.amplitude(q - h) + 8.0 * wf.amplitude(q + h)
        - wf.amplitude(q + 2.0 * h))
        / (12.0 * h)
}

/// Stencil step as a fraction of the grid spacing.
const STEP_FRACTION: f64 = 0.125;

/// `max |dpsi/dq + coefficient * q * psi| / max |psi|` over the oracle grid,
/// with the derivative taken by finite differences.
pub fn ode_residual<W: Wavefunction + ?Sized>(
    wf: &W,
    coefficient: Complex64,
    cfg: &QuadratureConfig,
) -> f64 {
    let n = cfg.initial_points();
    let half = cfg.half_width_sigmas() * wf.spread();
    let h = 2.0 * half / (n - 1) as f64;
    let (worst, peak) = (0..n)
        .map(|i| -half + i as f64 * h)
        .fold((0.0_f64, 0.0_f64), |(worst, peak), q| {
            let psi = wf.amplitude(q);
            let r = (centered_derivative(wf, q, STEP_FRACTION * h) + coefficient * q * psi).norm();
            (worst.max(r), peak.max(psi.norm()))
        });
    worst / peak
}

/// Residual of the annihilation condition
/// `dpsi/dq + ((u - v)/(u + v)) (omega/hbar) q psi = 0` for the state's own
/// wavefunction.
pub fn annihilation_residual(state: &BogoliubovState, cfg: &QuadratureConfig) -> f64 {
    let (u, v) = bogoliubov_uv(state);
    let coefficient = (u - v) / (u + v) * (state.omega() / state.hbar());
    ode_residual(state, coefficient, cfg)
}
