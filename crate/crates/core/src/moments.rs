//! Closed-form second moments, uncertainty relations and thermal quantities.

use serde::{Deserialize, Serialize};

use crate::states::{base_variance, AlphaState, ThermalSpec};

/// Second moments of a state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentSet {
    pub var_q: f64,
    pub var_p: f64,
    /// Symmetrized covariance `Re <dp dq>`.
    pub cov_pq: f64,
    /// `|<dp dq>|`, including the commutator part `hbar/2`.
    pub correlator_mag: f64,
    pub uncertainty_product: f64,
}

/// Both sides of the Schroedinger uncertainty relation and related bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UncertaintyReport {
    pub sur_lhs: f64,
    pub sur_rhs: f64,
    pub saturation_defect: f64,
    pub heisenberg_bound: f64,
    pub effective_action: f64,
}

/// The uncertainty square in the dimensionless phase plane
/// `Q = q sqrt(omega / hbar)`, `P = p / sqrt(hbar omega)`.
///
/// `area` is `side_p * side_q / 2`, the Heisenberg-normalized product that
/// equals 1/4 in the cold vacuum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseSquare {
    pub side_p: f64,
    pub side_q: f64,
    pub area: f64,
}

pub fn variance_q(state: &AlphaState) -> f64 {
    base_variance(state) / state.alpha().cos()
}

pub fn variance_p(state: &AlphaState) -> f64 {
    0.5 * state.hbar() * state.gamma() / state.alpha().cos()
}

/// `Re <dp dq> = -(hbar/2) tan alpha`. The canonical exponent carries
/// `+i tan(alpha)`, so the local momentum `-hbar tan(alpha) q / (2 var_q_0)`
/// is anticorrelated with `q`.
pub fn covariance(state: &AlphaState) -> f64 {
    -0.5 * state.hbar() * state.alpha().tan() + 0.0
}

/// `|<p q>| = (hbar/2) / cos alpha`.
pub fn correlator_magnitude(state: &AlphaState) -> f64 {
    0.5 * state.hbar() / state.alpha().cos()
}

/// Effective thermostat action `sqrt((hbar^2/4) tan^2 alpha + J0^2)` with
/// the quantum floor `J0 = hbar/2`.
pub fn effective_action(state: &AlphaState) -> f64 {
    let floor = 0.5 * state.hbar();
    let thermal = floor * state.alpha().tan();
    thermal.hypot(floor)
}

pub fn moment_set(state: &AlphaState) -> MomentSet {
    let var_q = variance_q(state);
    let var_p = variance_p(state);
    MomentSet {
        var_q,
        var_p,
        cov_pq: covariance(state),
        correlator_mag: correlator_magnitude(state),
        uncertainty_product: var_q * var_p,
    }
}

pub fn sur_report(state: &AlphaState) -> UncertaintyReport {
    let sur_lhs = (variance_q(state) * variance_p(state)).sqrt();
    let sur_rhs = correlator_magnitude(state);
    UncertaintyReport {
        sur_lhs,
        sur_rhs,
        saturation_defect: (sur_lhs - sur_rhs) / sur_rhs,
        heisenberg_bound: 0.5 * state.hbar(),
        effective_action: effective_action(state),
    }
}

/// `(hbar omega / 2) coth x`; the vacuum energy `hbar omega / 2` at `T = 0`.
pub fn planck_energy(spec: &ThermalSpec) -> f64 {
    0.5 * spec.hbar() * spec.omega() * spec.coth()
}

/// Mean kinetic and potential energies, each half the Planck energy.
pub fn mean_kinetic_potential(spec: &ThermalSpec) -> (f64, f64) {
    let half = 0.5 * planck_energy(spec);
    (half, half)
}

/// `((hbar / 2omega) coth x, (hbar omega / 2) coth x)`.
pub fn thermal_variances(spec: &ThermalSpec) -> (f64, f64) {
    let coth = spec.coth();
    (spec.base_variance() * coth, 0.5 * spec.hbar() * spec.omega() * coth)
}

pub fn phase_plane_square(spec: &ThermalSpec) -> PhaseSquare {
    let coth = spec.coth();
    let side = (0.5 * coth).sqrt();
    PhaseSquare { side_p: side, side_q: side, area: 0.25 * coth }
}
