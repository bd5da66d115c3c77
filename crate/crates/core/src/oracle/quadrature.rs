use num_complex::Complex64;

use crate::error::{CcsError, Result};
use crate::states::Wavefunction;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    half_width_sigmas: f64,
    initial_points: usize,
    rel_tolerance: f64,
    max_refinements: u32,
}

impl QuadratureConfig {
    pub fn new(
        half_width_sigmas: f64,
        initial_points: usize,
        rel_tolerance: f64,
        max_refinements: u32,
    ) -> Result<Self> {
        if !(half_width_sigmas.is_finite() && half_width_sigmas >= 6.0) {
            return Err(CcsError::Config(format!(
                "half_width_sigmas must be at least 6, got {half_width_sigmas}"
            )));
        }
        if initial_points < 3 || !(initial_points - 1).is_power_of_two() {
            return Err(CcsError::Config(format!(
                "initial_points must be 2^k + 1 with k >= 1, got {initial_points}"
            )));
        }
        if !(rel_tolerance.is_finite() && rel_tolerance > f64::EPSILON) {
            return Err(CcsError::Config(format!(
                "rel_tolerance must exceed machine epsilon, got {rel_tolerance}"
            )));
        }
        Ok(Self { half_width_sigmas, initial_points, rel_tolerance, max_refinements })
    }

    pub fn half_width_sigmas(&self) -> f64 {
        self.half_width_sigmas
    }

    pub fn initial_points(&self) -> usize {
        self.initial_points
    }

    pub fn rel_tolerance(&self) -> f64 {
        self.rel_tolerance
    }

    pub fn max_refinements(&self) -> u32 {
        self.max_refinements
    }
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { half_width_sigmas: 10.0, initial_points: 2049, rel_tolerance: 1e-10, max_refinements: 12 }
    }
}

/// Composite Simpson rule on `intervals` (even) equal panels.
pub fn composite_simpson<F>(f: F, a: f64, b: f64, intervals: usize) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    assert!(intervals >= 2 && intervals % 2 == 0, "Simpson needs an even panel count");
    let h = (b - a) / intervals as f64;
    let mut odd = Complex64::new(0.0, 0.0);
    let mut even = Complex64::new(0.0, 0.0);
    for i in 1..intervals {
        let v = f(a + i as f64 * h);
        if i % 2 == 1 {
            odd += v;
        } else {
            even += v;
        }
    }
    (f(a) + f(b) + 4.0 * odd + 2.0 * even) * (h / 3.0)
}

/// Composite Simpson with whole-grid doubling until the relative change
/// between successive estimates drops below the configured tolerance.
/// Function values from coarser grids are reused.
pub fn integrate<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let mut intervals = cfg.initial_points - 1;
    let mut h = (b - a) / intervals as f64;
    let ends = f(a) + f(b);
    let mut odd = Complex64::new(0.0, 0.0);
    let mut even = Complex64::new(0.0, 0.0);
    for i in 1..intervals {
        let v = f(a + i as f64 * h);
        if i % 2 == 1 {
            odd += v;
        } else {
            even += v;
        }
    }
    let mut estimate = (ends + 4.0 * odd + 2.0 * even) * (h / 3.0);
    let mut change = f64::INFINITY;

    for _ in 0..cfg.max_refinements {
        even += odd;
        intervals *= 2;
        h *= 0.5;
        odd = (0..intervals / 2)
            .map(|i| f(a + (2 * i + 1) as f64 * h))
            .sum();
        let refined = (ends + 4.0 * odd + 2.0 * even) * (h / 3.0);
        change = (refined - estimate).norm() / refined.norm();
        estimate = refined;
        if change < cfg.rel_tolerance || refined.norm() == 0.0 && change.is_nan() {
            return Ok(estimate);
        }
    }
    Err(CcsError::NonConvergence { refinements: cfg.max_refinements, last_change: change })
}

fn window<W: Wavefunction + ?Sized>(wf: &W, cfg: &QuadratureConfig) -> f64 {
    cfg.half_width_sigmas * wf.spread()
}

/// `int |psi|^2 dq`.
pub fn quad_norm<W: Wavefunction + ?Sized>(wf: &W, cfg: &QuadratureConfig) -> Result<f64> {
    let l = window(wf, cfg);
    Ok(integrate(|q| wf.amplitude(q).norm_sqr().into(), -l, l, cfg)?.re)
}

/// `int psi* q^2 psi dq`.
pub fn quad_variance_q<W: Wavefunction + ?Sized>(wf: &W, cfg: &QuadratureConfig) -> Result<f64> {
    let l = window(wf, cfg);
    Ok(integrate(|q| (q * q * wf.amplitude(q).norm_sqr()).into(), -l, l, cfg)?.re)
}

/// `hbar^2 int |dpsi/dq|^2 dq`; the mean momentum of these states is zero.
pub fn quad_variance_p<W: Wavefunction + ?Sized>(wf: &W, cfg: &QuadratureConfig) -> Result<f64> {
    let l = window(wf, cfg);
    let hbar = wf.hbar();
    Ok(hbar * hbar * integrate(|q| wf.slope(q).norm_sqr().into(), -l, l, cfg)?.re)
}

/// `int psi* (-i hbar d/dq)(q psi) dq`.
pub fn quad_correlator<W: Wavefunction + ?Sized>(wf: &W, cfg: &QuadratureConfig) -> Result<Complex64> {
    let l = window(wf, cfg);
    let integral = integrate(
        |q| {
            let psi = wf.amplitude(q);
            psi.conj() * (psi + q * wf.slope(q))
        },
        -l,
        l,
        cfg,
    )?;
    Ok(Complex64::new(0.0, -wf.hbar()) * integral)
}
