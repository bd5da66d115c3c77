//! The three wavefunction parametrizations of a correlated coherent state
//! and the lossless maps between them.
//!
//! Every state is a normalized complex Gaussian `N exp(-kappa q^2)`. The
//! canonical sign convention puts a positive imaginary part on `kappa`:
//! `kappa = (1 + i beta) / (4 sigma^2)` with `beta = tan(alpha) >= 0`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{CcsError, Result};

/// Largest phase angle accepted before secant factors are treated as overflow.
pub const ALPHA_LIMIT: f64 = FRAC_PI_2 - 1e-6;

/// Above this thermal argument `coth` and `tanh` are 1 and `csch` is 0 in f64.
pub const SATURATION_ARGUMENT: f64 = 20.0;

/// Relative tolerance for the `gamma == omega` binding.
const BINDING_TOLERANCE: f64 = 1e-12;

fn finite(value: f64, what: &'static str) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(CcsError::NonFinite(what))
    }
}

/// Physical constants. The mass is fixed to 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constants {
    hbar: f64,
    k_b: f64,
}

impl Constants {
    pub const MASS: f64 = 1.0;

    pub fn new(hbar: f64, k_b: f64) -> Result<Self> {
        let hbar = finite(hbar, "hbar")?;
        let k_b = finite(k_b, "k_b")?;
        if hbar <= 0.0 {
            return Err(CcsError::Domain(format!("hbar must be positive, got {hbar}")));
        }
        if k_b <= 0.0 {
            return Err(CcsError::Domain(format!("k_b must be positive, got {k_b}")));
        }
        Ok(Self { hbar, k_b })
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn k_b(&self) -> f64 {
        self.k_b
    }

    pub fn mass(&self) -> f64 {
        Self::MASS
    }
}

impl Default for Constants {
    fn default() -> Self {
        Self { hbar: 1.0, k_b: 1.0 }
    }
}

/// One evaluation of a wavefunction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSample {
    pub q: f64,
    pub amplitude: Complex64,
}

/// A normalized Gaussian `norm * exp(-kappa q^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianProfile {
    pub norm: f64,
    pub kappa: Complex64,
    pub hbar: f64,
}

impl GaussianProfile {
    /// Normalized profile with coordinate variance `variance` and phase
    /// parameter `beta` in the canonical `(1 + i beta)` convention.
    pub fn from_variance(variance: f64, beta: f64, hbar: f64) -> Self {
        Self {
            norm: (2.0 * PI * variance).powf(-0.25),
            kappa: Complex64::new(1.0, beta) / (4.0 * variance),
            hbar,
        }
    }

    /// Exponent `-kappa q^2`.
    pub fn exponent(&self, q: f64) -> Complex64 {
        -self.kappa * (q * q)
    }

    pub fn coordinate_variance(&self) -> f64 {
        0.25 / self.kappa.re
    }
}

/// Anything that can be sampled as a coordinate-space wavefunction.
pub trait Wavefunction {
    fn amplitude(&self, q: f64) -> Complex64;

    /// Analytic derivative `d psi / dq`.
    fn slope(&self, q: f64) -> Complex64;

    /// Standard deviation of `|psi|^2`, used to size integration windows.
    fn spread(&self) -> f64;

    fn hbar(&self) -> f64;

    fn sample(&self, q: f64) -> Result<WaveSample> {
        let q = finite(q, "q")?;
        Ok(WaveSample { q, amplitude: self.amplitude(q) })
    }
}

impl Wavefunction for GaussianProfile {
    fn amplitude(&self, q: f64) -> Complex64 {
        self.norm * self.exponent(q).exp()
    }

    fn slope(&self, q: f64) -> Complex64 {
        -2.0 * self.kappa * q * self.amplitude(q)
    }

    fn spread(&self) -> f64 {
        self.coordinate_variance().sqrt()
    }

    fn hbar(&self) -> f64 {
        self.hbar
    }
}

/// A CCS in the phase-angle parametrization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaState {
    alpha: f64,
    gamma: f64,
    constants: Constants,
}

impl AlphaState {
    pub fn new(alpha: f64, gamma: f64, constants: Constants) -> Result<Self> {
        let alpha = finite(alpha, "alpha")?;
        let gamma = finite(gamma, "gamma")?;
        if !(0.0..FRAC_PI_2).contains(&alpha) {
            return Err(CcsError::Domain(format!("alpha must lie in [0, pi/2), got {alpha}")));
        }
        if alpha > ALPHA_LIMIT {
            return Err(CcsError::ParameterOverflow(format!(
                "alpha = {alpha} is within 1e-6 of pi/2"
            )));
        }
        if gamma <= 0.0 {
            return Err(CcsError::Domain(format!("gamma must be positive, got {gamma}")));
        }
        Ok(Self { alpha, gamma, constants })
    }

    /// The cold vacuum, `alpha = 0`.
    pub fn cold_vacuum(gamma: f64, constants: Constants) -> Result<Self> {
        Self::new(0.0, gamma, constants)
    }

    /// The state in equilibrium with `spec`, binding `gamma = omega`.
    pub fn from_thermal(spec: &ThermalSpec) -> Result<Self> {
        Self::new(alpha_from_temperature(spec), spec.omega, spec.constants)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn constants(&self) -> Constants {
        self.constants
    }

    pub fn hbar(&self) -> f64 {
        self.constants.hbar
    }

    /// `beta = tan(alpha)`.
    pub fn beta(&self) -> f64 {
        self.alpha.tan()
    }

    /// The equivalent Bogoliubov state on the CCS line `phi = pi/4`.
    pub fn to_bogoliubov(&self, omega: f64) -> Result<BogoliubovState> {
        require_binding(self.gamma, omega)?;
        BogoliubovState::new(tau_from_alpha(self.alpha)?, FRAC_PI_4, omega, self.constants)
    }

    /// Equilibrium temperature of this state at frequency `omega = gamma`.
    pub fn temperature(&self) -> Result<f64> {
        temperature_from_alpha(self, self.gamma)
    }

    pub fn profile(&self) -> GaussianProfile {
        let base = base_variance(self);
        let (sin, cos) = self.alpha.sin_cos();
        GaussianProfile {
            norm: (2.0 * PI * base / cos).powf(-0.25),
            kappa: Complex64::new(cos, sin) / (4.0 * base),
            hbar: self.hbar(),
        }
    }
}

/// A CCS in the Bogoliubov `(tau, phi)` parametrization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BogoliubovState {
    tau: f64,
    phi: f64,
    omega: f64,
    constants: Constants,
}

impl BogoliubovState {
    pub fn new(tau: f64, phi: f64, omega: f64, constants: Constants) -> Result<Self> {
        let tau = finite(tau, "tau")?;
        let phi = finite(phi, "phi")?;
        let omega = finite(omega, "omega")?;
        if tau < 0.0 {
            return Err(CcsError::Domain(format!("tau must be non-negative, got {tau}")));
        }
        if omega <= 0.0 {
            return Err(CcsError::Domain(format!("omega must be positive, got {omega}")));
        }
        if !(2.0 * tau).cosh().is_finite() {
            return Err(CcsError::ParameterOverflow(format!("cosh(2 tau) overflows for tau = {tau}")));
        }
        let state = Self { tau, phi, omega, constants };
        let factor = state.variance_factor();
        if !(factor > 0.0 && factor.is_finite()) {
            return Err(CcsError::ParameterOverflow(format!(
                "variance factor {factor} is not a positive finite number"
            )));
        }
        Ok(state)
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn constants(&self) -> Constants {
        self.constants
    }

    pub fn hbar(&self) -> f64 {
        self.constants.hbar
    }

    /// `cosh 2tau - sinh 2tau cos 2phi`, evaluated without cancellation as
    /// `2 cosh(2tau) sin^2(phi) + exp(-2tau) cos(2phi)`.
    pub fn variance_factor(&self) -> f64 {
        let two_tau = 2.0 * self.tau;
        2.0 * two_tau.cosh() * self.phi.sin().powi(2) + (-two_tau).exp() * (2.0 * self.phi).cos()
    }

    /// `beta = sinh 2tau sin 2phi`.
    pub fn beta(&self) -> f64 {
        (2.0 * self.tau).sinh() * (2.0 * self.phi).sin()
    }

    /// `(Delta q_0)^2 = hbar / (2 omega)`.
    pub fn base_variance(&self) -> f64 {
        self.hbar() / (2.0 * self.omega)
    }

    pub fn coordinate_variance(&self) -> f64 {
        self.base_variance() * self.variance_factor()
    }

    pub fn profile(&self) -> GaussianProfile {
        GaussianProfile::from_variance(self.coordinate_variance(), self.beta(), self.hbar())
    }
}

/// An equilibrium specification at temperature `T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThermalSpec {
    temperature: f64,
    omega: f64,
    constants: Constants,
}

impl ThermalSpec {
    pub fn new(temperature: f64, omega: f64, constants: Constants) -> Result<Self> {
        let temperature = finite(temperature, "temperature")?;
        let omega = finite(omega, "omega")?;
        if temperature < 0.0 {
            return Err(CcsError::Domain(format!(
                "temperature must be non-negative, got {temperature}"
            )));
        }
        if omega <= 0.0 {
            return Err(CcsError::Domain(format!("omega must be positive, got {omega}")));
        }
        Ok(Self { temperature, omega, constants })
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn constants(&self) -> Constants {
        self.constants
    }

    pub fn hbar(&self) -> f64 {
        self.constants.hbar
    }

    pub fn is_cold(&self) -> bool {
        self.temperature == 0.0
    }

    /// `x = hbar omega / (2 k_B T)`; infinite at `T = 0`.
    pub fn thermal_argument(&self) -> f64 {
        self.hbar() * self.omega / (2.0 * self.constants.k_b * self.temperature)
    }

    /// `coth x`, saturated to 1 for `x >= 20` and at `T = 0`.
    pub fn coth(&self) -> f64 {
        let x = self.thermal_argument();
        if x >= SATURATION_ARGUMENT {
            1.0
        } else {
            1.0 / x.tanh()
        }
    }

    /// `(Delta q_0)^2 = hbar / (2 omega)`.
    pub fn base_variance(&self) -> f64 {
        self.hbar() / (2.0 * self.omega)
    }

    /// The temperature-labelled wavefunction. Fails at `T = 0`.
    pub fn profile(&self) -> Result<GaussianProfile> {
        if self.is_cold() {
            return Err(CcsError::DegenerateTemperature);
        }
        let x = self.thermal_argument();
        let (tanh, coth, csch) = if x >= SATURATION_ARGUMENT {
            (1.0, 1.0, 0.0)
        } else {
            (x.tanh(), 1.0 / x.tanh(), csch(x))
        };
        let base = self.base_variance();
        Ok(GaussianProfile {
            norm: (2.0 * PI * base * coth).powf(-0.25),
            kappa: tanh * Complex64::new(1.0, csch) / (4.0 * base),
            hbar: self.hbar(),
        })
    }
}

impl Wavefunction for AlphaState {
    fn amplitude(&self, q: f64) -> Complex64 {
        self.profile().amplitude(q)
    }

    fn slope(&self, q: f64) -> Complex64 {
        self.profile().slope(q)
    }

    fn spread(&self) -> f64 {
        self.profile().spread()
    }

    fn hbar(&self) -> f64 {
        self.constants.hbar
    }
}

impl Wavefunction for BogoliubovState {
    fn amplitude(&self, q: f64) -> Complex64 {
        self.profile().amplitude(q)
    }

    fn slope(&self, q: f64) -> Complex64 {
        self.profile().slope(q)
    }

    fn spread(&self) -> f64 {
        self.profile().spread()
    }

    fn hbar(&self) -> f64 {
        self.constants.hbar
    }
}

fn require_binding(gamma: f64, omega: f64) -> Result<()> {
    if (gamma - omega).abs() <= BINDING_TOLERANCE * gamma.abs().max(omega.abs()) {
        Ok(())
    } else {
        Err(CcsError::ParameterMismatch { gamma, omega })
    }
}

/// `(Delta q_0)^2 = hbar / (2 gamma)`.
pub fn base_variance(state: &AlphaState) -> f64 {
    state.hbar() / (2.0 * state.gamma)
}

/// `psi_alpha(q) = [2 pi (Delta q_0)^2 / cos alpha]^(-1/4) exp(-q^2 e^(i alpha) / (4 (Delta q_0)^2))`.
pub fn psi_alpha(state: &AlphaState, q: f64) -> Result<Complex64> {
    Ok(state.sample(q)?.amplitude)
}

/// Complex Bogoliubov coefficients `u = cosh(tau) e^(i phi)`, `v = sinh(tau) e^(-i phi)`.
pub fn bogoliubov_uv(state: &BogoliubovState) -> (Complex64, Complex64) {
    let u = Complex64::from_polar(state.tau.cosh(), state.phi);
    let v = Complex64::from_polar(state.tau.sinh(), -state.phi);
    (u, v)
}

/// `psi_{tau,phi}(q)` in the canonical `(1 + i beta)` sign convention.
pub fn psi_tau_phi(state: &BogoliubovState, q: f64) -> Result<Complex64> {
    Ok(state.sample(q)?.amplitude)
}

/// Temperature-labelled wavefunction; `T = 0` is rejected in favour of the
/// `alpha = 0` constructor.
pub fn psi_thermal(spec: &ThermalSpec, q: f64) -> Result<Complex64> {
    Ok(spec.profile()?.sample(q)?.amplitude)
}

/// `alpha = arccos(tanh x)`, evaluated as `atan(csch x)` so that low
/// temperatures keep full relative precision. Exactly 0 at `T = 0`.
pub fn alpha_from_temperature(spec: &ThermalSpec) -> f64 {
    if spec.is_cold() {
        return 0.0;
    }
    csch(spec.thermal_argument()).atan()
}

/// `1 / sinh x` for `x > 0`, finite up to `x ~ 745` where `exp(-x)` underflows.
fn csch(x: f64) -> f64 {
    if x > SATURATION_ARGUMENT {
        2.0 * (-x).exp()
    } else {
        1.0 / x.sinh()
    }
}

/// Inverse of [`alpha_from_temperature`] with `omega = gamma`:
/// `T = hbar omega / (2 k_B atanh(cos alpha))`, evaluated via
/// `atanh(cos alpha) = asinh(cot alpha)`.
pub fn temperature_from_alpha(state: &AlphaState, omega: f64) -> Result<f64> {
    require_binding(state.gamma, omega)?;
    if state.alpha == 0.0 {
        return Err(CcsError::ColdVacuumLimit);
    }
    let x = (1.0 / state.alpha.tan()).asinh();
    let c = state.constants;
    Ok(c.hbar * omega / (2.0 * c.k_b * x))
}

/// Squeezing on the CCS line: `sinh 2tau = tan alpha`.
pub fn tau_from_alpha(alpha: f64) -> Result<f64> {
    let alpha = finite(alpha, "alpha")?;
    if !(0.0..FRAC_PI_2).contains(&alpha) {
        return Err(CcsError::Domain(format!("alpha must lie in [0, pi/2), got {alpha}")));
    }
    Ok(0.5 * alpha.tan().asinh())
}

pub fn alpha_from_tau(tau: f64) -> f64 {
    (2.0 * tau).sinh().atan()
}
